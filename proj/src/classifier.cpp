#include "symrank/classifier.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "parallel.hpp"
#include "symrank/error.hpp"

namespace symrank {

std::vector<Code> orbit(const SymTensor& t, const CompiledGroup& group, unsigned threads) {
  if (!(t.shape() == group.shape())) throw std::invalid_argument("tensor and group shapes differ");
  const auto digits = t.digits();
  const unsigned workers = detail::resolve_threads(threads);
  std::vector<std::vector<Code>> parts(workers);
  detail::parallel_slices(group.size(), workers, [&](std::size_t w, std::size_t begin, std::size_t end) {
    auto& local = parts[w];
    local.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) local.push_back(group.apply(i, digits));
    std::sort(local.begin(), local.end());
    local.erase(std::unique(local.begin(), local.end()), local.end());
  });
  std::vector<Code> out;
  for (auto& part : parts) {
    const auto mid = out.size();
    out.insert(out.end(), part.begin(), part.end());
    std::inplace_merge(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(mid), out.end());
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Code> orbit(const SymTensor& t, std::span<const GroupElement> group) {
  std::vector<Code> out;
  out.reserve(group.size());
  for (const auto& g : group) out.push_back(act(g, t).code());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CanonicalForm canonicalize(const SymTensor& t, const CompiledGroup& group, unsigned threads) {
  if (!(t.shape() == group.shape())) throw std::invalid_argument("tensor and group shapes differ");
  const auto digits = t.digits();
  const unsigned workers = detail::resolve_threads(threads);
  struct Best {
    Code code = std::numeric_limits<Code>::max();
    std::size_t index = 0;
  };
  std::vector<Best> best(workers);
  std::vector<std::vector<Code>> parts(workers);
  detail::parallel_slices(group.size(), workers, [&](std::size_t w, std::size_t begin, std::size_t end) {
    auto& local = parts[w];
    for (std::size_t i = begin; i < end; ++i) {
      const Code image = group.apply(i, digits);
      local.push_back(image);
      if (image < best[w].code) best[w] = {image, i};
    }
    std::sort(local.begin(), local.end());
    local.erase(std::unique(local.begin(), local.end()), local.end());
  });
  // Slices are in index order, so the first strict minimum wins.
  Best overall;
  for (const auto& b : best) {
    if (b.code < overall.code) overall = b;
  }
  std::vector<Code> all;
  for (auto& part : parts) all.insert(all.end(), part.begin(), part.end());
  std::sort(all.begin(), all.end());
  const auto size = static_cast<std::uint64_t>(std::unique(all.begin(), all.end()) - all.begin());
  return CanonicalForm{SymTensor(t.shape(), overall.code), size, group.representative(overall.index)};
}

SymTensor canonical_form(const SymTensor& t, const CompiledGroup& group, unsigned threads) {
  const auto images = orbit(t, group, threads);
  return SymTensor(t.shape(), images.front());
}

std::vector<OrbitRecord> decompose_layer(const RankTable& table, unsigned r, const CompiledGroup& group,
                                         unsigned threads) {
  if (table.truncated()) throw TruncatedTable("cannot classify truncated stratification");
  if (!(table.shape() == group.shape())) throw std::invalid_argument("rank table and group shapes differ");
  const auto codes = layer_codes(table, r);
  std::vector<bool> covered(codes.size(), false);
  std::vector<OrbitRecord> records;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (covered[i]) continue;
    const SymTensor seed(table.shape(), codes[i]);
    const auto members = orbit(seed, group, threads);
    for (Code c : members) {
      const auto it = std::lower_bound(codes.begin(), codes.end(), c);
      if (it == codes.end() || *it != c) {
        throw std::logic_error("orbit of code " + std::to_string(codes[i]) + " leaves rank layer " +
                               std::to_string(r));
      }
      const auto idx = static_cast<std::size_t>(it - codes.begin());
      if (covered[idx]) throw std::logic_error("orbits overlap in rank layer " + std::to_string(r));
      covered[idx] = true;
    }
    if (members.front() != codes[i]) throw std::logic_error("orbit seed is not its minimum");
    records.push_back(OrbitRecord{r, members.size(), seed, 1});
  }
  return records;
}

void cross_check_compiled(const CompiledGroup& group, std::size_t samples, std::uint64_t seed) {
  const Shape& shape = group.shape();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_element(0, group.size() - 1);
  std::uniform_int_distribution<Code> pick_code(0, shape.code_space() - 1);
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t index = pick_element(rng);
    const SymTensor t(shape, pick_code(rng));
    const GroupElement g(group.representative(index), shape.field());
    const Code compiled = group.apply(index, t.digits());
    const Code direct = act(g, t).code();
    if (compiled != direct) {
      throw std::logic_error("compiled action disagrees with mode products on code " + std::to_string(t.code()));
    }
  }
}

ClassificationReport classify(const RankTable& table, const CompiledGroup& group, unsigned threads) {
  if (table.truncated()) throw TruncatedTable("cannot classify truncated stratification");
  cross_check_compiled(group, 100);
  ClassificationReport report{table.shape(), {}, table.layer_counts(), table.sentinel_count(), group.order()};
  for (unsigned r = 0; r <= table.max_rank(); ++r) {
    auto layer = decompose_layer(table, r, group, threads);
    report.records.insert(report.records.end(), layer.begin(), layer.end());
  }
  return report;
}

std::size_t matrix_rank(const SymTensor& m) {
  const Shape& shape = m.shape();
  if (shape.k() != 2) throw std::invalid_argument("matrix rank requires an order-2 tensor");
  const auto ft = flatten(m);
  return row_rank(SquareMatrix(shape.n(), ft.entries), shape.field());
}

RankContrast rank_contrast_report(const RankTable& table) {
  const Shape& shape = table.shape();
  if (shape.k() != 2) throw std::invalid_argument("rank contrast is defined for order-2 tensors only");
  if (table.truncated()) throw TruncatedTable("rank contrast needs a complete stratification");
  RankContrast out;
  out.occupancy.assign(table.max_rank() + 1, std::vector<std::uint64_t>(shape.n() + 1, 0));
  const auto ranks = table.ranks();
  for (Code c = 0; c < ranks.size(); ++c) {
    if (ranks[c] == RankTable::kUnreached) continue;
    const auto mr = matrix_rank(SymTensor(shape, c));
    ++out.occupancy[ranks[c]][mr];
    out.max_symmetric_rank = std::max<unsigned>(out.max_symmetric_rank, ranks[c]);
    out.max_matrix_rank = std::max<unsigned>(out.max_matrix_rank, static_cast<unsigned>(mr));
  }
  return out;
}

}  // namespace symrank
