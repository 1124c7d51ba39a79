#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "symrank/group_action.hpp"
#include "symrank/stratifier.hpp"
#include "symrank/symtensor.hpp"

namespace symrank {

/// One GL_n(F_p)-orbit inside a rank layer.
struct OrbitRecord {
  unsigned rank = 0;
  std::uint64_t size = 0;
  /// Lexically smallest member of the orbit.
  SymTensor canonical;
  unsigned witness_count = 1;
};

struct ClassificationReport {
  Shape shape;
  std::vector<OrbitRecord> records;  // grouped by rank, ascending canonical code within a rank
  std::vector<std::uint64_t> layer_counts;
  std::uint64_t sentinel_count = 0;
  std::uint64_t group_order = 0;
};

/// Orbit of t as a sorted, duplicate-free list of codes.
std::vector<Code> orbit(const SymTensor& t, const CompiledGroup& group, unsigned threads = 1);
/// Same set computed through the definitional mode products.
std::vector<Code> orbit(const SymTensor& t, std::span<const GroupElement> group);

struct CanonicalForm {
  SymTensor canonical;
  std::uint64_t orbit_size = 0;
  /// First element (in enumeration order) mapping the input to `canonical`.
  SquareMatrix witness;
};

SymTensor canonical_form(const SymTensor& t, const CompiledGroup& group, unsigned threads = 1);
CanonicalForm canonicalize(const SymTensor& t, const CompiledGroup& group, unsigned threads = 1);

/// Splits rank layer r into orbits, seeding each orbit with the smallest code
/// not yet covered. Throws TruncatedTable for truncated tables.
std::vector<OrbitRecord> decompose_layer(const RankTable& table, unsigned r, const CompiledGroup& group,
                                         unsigned threads = 1);

/// Compares `samples` compiled applications against act(); throws
/// std::logic_error on the first disagreement.
void cross_check_compiled(const CompiledGroup& group, std::size_t samples, std::uint64_t seed = 0x5eed);

/// decompose_layer over every rank, after a 100-sample cross-check.
ClassificationReport classify(const RankTable& table, const CompiledGroup& group, unsigned threads = 1);

/// Ordinary matrix rank of an order-2 tensor.
std::size_t matrix_rank(const SymTensor& m);

struct RankContrast {
  /// occupancy[symmetric rank][matrix rank]
  std::vector<std::vector<std::uint64_t>> occupancy;
  unsigned max_symmetric_rank = 0;
  unsigned max_matrix_rank = 0;
};

/// Cross-tabulates symmetric rank against matrix rank (k = 2 only).
RankContrast rank_contrast_report(const RankTable& table);

}  // namespace symrank
