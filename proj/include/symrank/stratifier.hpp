#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "symrank/symtensor.hpp"

namespace symrank {

inline constexpr std::uint64_t kDefaultMemoryBudget = std::uint64_t{512} << 20;
inline constexpr unsigned kDefaultMaxRank = 32;

struct StratifyLimits {
  std::uint64_t memory_budget_bytes = kDefaultMemoryBudget;
  unsigned max_rank = kDefaultMaxRank;
  /// 0 selects the hardware concurrency.
  unsigned threads = 1;
  /// Called once per completed layer with (rank, number of codes).
  std::function<void(unsigned, std::uint64_t)> on_layer;
};

/// Dense code -> symmetric rank map over the whole code space.
class RankTable {
 public:
  /// Marks codes with no symmetric decomposition, or, in a truncated table,
  /// codes that were not reached before the cutoff.
  static constexpr std::uint8_t kUnreached = 255;

  /// Validates the layer structure and derives the per-rank counts.
  RankTable(Shape shape, std::vector<std::uint8_t> ranks, bool truncated);

  const Shape& shape() const noexcept { return shape_; }
  std::span<const std::uint8_t> ranks() const noexcept { return ranks_; }
  std::uint8_t rank_of(Code code) const { return ranks_.at(code); }
  bool has_rank(Code code) const { return rank_of(code) != kUnreached; }

  const std::vector<std::uint64_t>& layer_counts() const noexcept { return layer_counts_; }
  unsigned max_rank() const noexcept { return static_cast<unsigned>(layer_counts_.size() - 1); }
  std::uint64_t sentinel_count() const noexcept { return sentinel_count_; }
  bool truncated() const noexcept { return truncated_; }
  /// Sum of all rank bytes modulo 2^64.
  std::uint64_t checksum() const noexcept;

 private:
  Shape shape_;
  std::vector<std::uint8_t> ranks_;
  std::vector<std::uint64_t> layer_counts_;
  std::uint64_t sentinel_count_ = 0;
  bool truncated_ = false;
};

/// Adds one fixed tensor to arbitrary codes via per-chunk lookup tables.
class CodeTranslator {
 public:
  CodeTranslator(const Shape& shape, Code addend);

  Code operator()(Code code) const noexcept {
    if (binary_) return code ^ addend_;
    Code out = 0;
    const Code* table = table_.data();
    for (const auto base : chunk_base_) {
      out += table[code % base];
      code /= base;
      table += base;
    }
    return out;
  }

 private:
  bool binary_ = false;
  Code addend_ = 0;
  std::vector<Code> chunk_base_;
  std::vector<Code> table_;
};

/// Breadth-first closure of sums of simple symmetric tensors. Layer r holds
/// the codes first reached after r additions, which is their symmetric rank.
/// Throws ResourceExhausted when the rank map does not fit the budget.
RankTable stratify(const Shape& shape, const StratifyLimits& limits = {});

/// Codes of rank r in ascending order.
std::vector<Code> layer_codes(const RankTable& table, unsigned r);

/// Lexically smallest tensor of rank r.
SymTensor layer_minimum(const RankTable& table, unsigned r);

/// Binary persistence ("SRNK" format, version 1, little endian).
void write_rank_table(const RankTable& table, std::ostream& out);
RankTable read_rank_table(std::istream& in);
void save_rank_table(const RankTable& table, const std::string& path);
RankTable load_rank_table(const std::string& path);

}  // namespace symrank
