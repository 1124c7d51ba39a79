#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "symrank/symtensor.hpp"

namespace symrank {

/// One published orbit: rank, orbit size and canonical form written as the
/// flattened entry string with '.' for zero.
struct ExpectedOrbit {
  unsigned rank;
  std::uint64_t size;
  std::string_view canonical;
  /// Size as originally published when it differs from `size`, else 0.
  std::uint64_t printed_size = 0;
};

/// Reference values for one (p, n, k).
struct ExpectedShape {
  unsigned p;
  unsigned n;
  unsigned k;
  std::string_view source;
  std::span<const std::uint64_t> layer_counts;
  std::uint64_t sentinel_count;
  /// Per-rank percentage of all symmetric tensors (no '%').
  std::span<const std::string_view> percentages;
  /// Empty when no orbit table exists for this shape.
  std::span<const ExpectedOrbit> orbits;
  /// Lexically smallest tensor of each rank; empty when not listed.
  std::span<const std::string_view> layer_minima;
  /// Notes on cells corrected with respect to the published values.
  std::span<const std::string_view> errata;

  Shape shape() const { return Shape(n, k, p); }
};

/// Embedded reference tables for 3x3 (p = 2, 3, 5), 3x3x3 (p = 2, 3) and
/// 3x3x3x3 (p = 2).
std::span<const ExpectedShape> expected_data();

/// Parses a flattened entry string ('.' or digits, length n^k).
SymTensor tensor_from_flat_string(const Shape& shape, std::string_view text);

/// Renders flattened entries with '.' for zero.
std::string flat_string(const SymTensor& t);

}  // namespace symrank
