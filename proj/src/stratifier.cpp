#include "symrank/stratifier.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <string>

#include "parallel.hpp"
#include "symrank/error.hpp"

namespace symrank {

RankTable::RankTable(Shape shape, std::vector<std::uint8_t> ranks, bool truncated)
    : shape_(std::move(shape)), ranks_(std::move(ranks)), truncated_(truncated) {
  if (ranks_.size() != shape_.code_space()) throw std::invalid_argument("rank map size differs from p^D");
  if (ranks_.empty() || ranks_[0] != 0) throw std::invalid_argument("zero tensor must have rank 0");
  std::vector<std::uint64_t> counts(1, 0);
  for (auto r : ranks_) {
    if (r == kUnreached) {
      ++sentinel_count_;
      continue;
    }
    if (r >= counts.size()) counts.resize(r + 1, 0);
    ++counts[r];
  }
  if (counts[0] != 1) throw std::invalid_argument("only the zero tensor may have rank 0");
  for (std::size_t r = 1; r < counts.size(); ++r) {
    if (counts[r] == 0) throw std::invalid_argument("rank layer " + std::to_string(r) + " is empty");
  }
  layer_counts_ = std::move(counts);
}

std::uint64_t RankTable::checksum() const noexcept {
  std::uint64_t sum = 0;
  for (auto r : ranks_) sum += r;
  return sum;
}

CodeTranslator::CodeTranslator(const Shape& shape, Code addend) : addend_(addend) {
  const unsigned p = shape.p();
  if (p == 2) {
    binary_ = true;
    return;
  }
  // Chunks of c digits with p^c <= 4096, least significant chunk first.
  std::size_t chunk_digits = 0;
  for (Code b = 1; b * p <= 4096; b *= p) ++chunk_digits;
  const auto addend_digits = decode_digits(shape, addend);
  const std::size_t digits = shape.free_count();
  std::size_t consumed = 0;
  Code weight = 1;
  while (consumed < digits) {
    const std::size_t width = std::min(chunk_digits, digits - consumed);
    Code base = 1;
    for (std::size_t i = 0; i < width; ++i) base *= p;
    chunk_base_.push_back(base);
    for (Code v = 0; v < base; ++v) {
      Code rest = v;
      Code sum = 0;
      Code w = 1;
      for (std::size_t i = 0; i < width; ++i) {
        const auto digit_index = digits - 1 - consumed - i;
        const auto s = static_cast<unsigned>(rest % p + addend_digits[digit_index]);
        sum += (s >= p ? s - p : s) * w;
        rest /= p;
        w *= p;
      }
      table_.push_back(sum * weight);
    }
    weight *= base;
    consumed += width;
  }
}

RankTable stratify(const Shape& shape, const StratifyLimits& limits) {
  const Code space = shape.code_space();
  if (space > limits.memory_budget_bytes) {
    throw ResourceExhausted("rank map for " + shape.to_string() + " requires " + std::to_string(space) +
                                " bytes, memory budget is " + std::to_string(limits.memory_budget_bytes),
                            space);
  }
  const unsigned cutoff = std::min<unsigned>(limits.max_rank, RankTable::kUnreached - 1);
  const unsigned threads = detail::resolve_threads(limits.threads);

  std::vector<std::uint8_t> ranks(static_cast<std::size_t>(space), RankTable::kUnreached);
  ranks[0] = 0;

  std::vector<CodeTranslator> simples;
  for (Code s : simple_tensor_codes(shape)) simples.emplace_back(shape, s);

  std::vector<Code> frontier{0};
  bool truncated = false;
  for (unsigned r = 1;; ++r) {
    if (r > cutoff) {
      // Probe one more step without claiming anything.
      std::atomic<bool> found{false};
      detail::parallel_slices(frontier.size(), threads, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end && !found.load(std::memory_order_relaxed); ++i) {
          for (const auto& add : simples) {
            if (ranks[add(frontier[i])] == RankTable::kUnreached) {
              found.store(true, std::memory_order_relaxed);
              break;
            }
          }
        }
      });
      truncated = found.load();
      break;
    }

    const auto rank = static_cast<std::uint8_t>(r);
    // Claims are idempotent: every writer stores the same value.
    detail::parallel_slices(frontier.size(), threads, [&](std::size_t, std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        const Code base = frontier[i];
        for (const auto& add : simples) {
          std::atomic_ref<std::uint8_t> cell(ranks[add(base)]);
          if (cell.load(std::memory_order_relaxed) == RankTable::kUnreached) {
            cell.store(rank, std::memory_order_relaxed);
          }
        }
      }
    });

    frontier.clear();
    for (Code c = 0; c < space; ++c) {
      if (ranks[c] == rank) frontier.push_back(c);
    }
    if (frontier.empty()) break;
    if (limits.on_layer) limits.on_layer(r, frontier.size());
  }
  return RankTable(shape, std::move(ranks), truncated);
}

std::vector<Code> layer_codes(const RankTable& table, unsigned r) {
  if (r > table.max_rank()) {
    throw std::out_of_range("rank " + std::to_string(r) + " exceeds max rank " + std::to_string(table.max_rank()));
  }
  std::vector<Code> codes;
  codes.reserve(table.layer_counts()[r]);
  const auto ranks = table.ranks();
  for (Code c = 0; c < ranks.size(); ++c) {
    if (ranks[c] == r) codes.push_back(c);
  }
  return codes;
}

SymTensor layer_minimum(const RankTable& table, unsigned r) {
  if (r > table.max_rank()) {
    throw std::out_of_range("rank " + std::to_string(r) + " exceeds max rank " + std::to_string(table.max_rank()));
  }
  const auto ranks = table.ranks();
  for (Code c = 0; c < ranks.size(); ++c) {
    if (ranks[c] == r) return SymTensor(table.shape(), c);
  }
  throw std::runtime_error("rank layer " + std::to_string(r) + " is empty");
}

}  // namespace symrank
