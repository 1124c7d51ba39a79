#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "symrank/field.hpp"

namespace symrank {

/// Packed base-p code of a symmetric tensor's free entries.
using Code = std::uint64_t;

/// Non-decreasing 0-based index tuple (i_1 <= ... <= i_k).
using MultiIndex = std::vector<std::uint8_t>;

namespace detail {
struct ShapeLayout;
}

/// Format n x ... x n (k modes) over F_p, together with the digit layout of
/// the packed code.
///
/// Digit d of a code corresponds to the d-th sorted multi-index in lexical
/// order; digit 0 is (1,...,1) and is the most significant. With that choice
/// integer order on codes coincides with lexical order on flattened tensors,
/// because the sorted form of an index multiset is its lexically smallest
/// arrangement and so every free entry first appears at its sorted tuple.
class Shape {
 public:
  Shape(unsigned n, unsigned k, FieldSpec field);
  Shape(unsigned n, unsigned k, unsigned p) : Shape(n, k, FieldSpec(p)) {}

  unsigned n() const noexcept;
  unsigned k() const noexcept;
  unsigned p() const noexcept;
  const FieldSpec& field() const noexcept;

  /// Number of free entries D = C(n+k-1, k).
  std::size_t free_count() const noexcept;
  /// n^k.
  std::size_t full_length() const noexcept;
  /// p^D, the number of distinct codes.
  Code code_space() const noexcept;

  const std::vector<MultiIndex>& sorted_indices() const noexcept;
  /// For every flattened position (lexical tuple order), the digit it reads.
  std::span<const std::uint16_t> digit_of_position() const noexcept;
  /// Digit of an arbitrary (unsorted) 0-based tuple.
  std::size_t digit_of_tuple(std::span<const std::uint8_t> tuple) const;
  /// The 0-based tuple stored at a flattened position.
  MultiIndex tuple_at(std::size_t position) const;
  /// p^(D-1-digit).
  Code digit_weight(std::size_t digit) const noexcept;

  std::string to_string() const;

  bool operator==(const Shape& other) const noexcept;

 private:
  std::shared_ptr<const detail::ShapeLayout> layout_;
};

/// Splits a code into its D digits (most significant first) and back.
std::vector<Residue> decode_digits(const Shape& shape, Code code);
void decode_digits(const Shape& shape, Code code, std::span<Residue> out);
Code encode_digits(const Shape& shape, std::span<const Residue> digits);

class SymTensor {
 public:
  SymTensor(Shape shape, Code code);

  static SymTensor zero(const Shape& shape) { return SymTensor(shape, 0); }
  static SymTensor from_digits(const Shape& shape, std::span<const Residue> digits);

  const Shape& shape() const noexcept { return shape_; }
  Code code() const noexcept { return code_; }
  std::vector<Residue> digits() const { return decode_digits(shape_, code_); }

  bool operator==(const SymTensor& other) const noexcept {
    return code_ == other.code_ && shape_ == other.shape_;
  }

 private:
  Shape shape_;
  Code code_;
};

/// Full n^k entry vector in lexical tuple order.
struct FlatTensor {
  Shape shape;
  std::vector<Residue> entries;

  Residue at(std::span<const std::uint8_t> tuple) const;
  bool operator==(const FlatTensor& other) const = default;
};

FlatTensor flatten(const SymTensor& t);
/// Inverse of flatten; throws std::invalid_argument on asymmetric input.
SymTensor pack(const FlatTensor& ft);
/// True when every entry equals the entry at its sorted tuple.
bool is_symmetric(const FlatTensor& ft);

/// v (x) ... (x) v with k factors; throws std::invalid_argument for v = 0.
SymTensor outer_power(std::span<const Residue> v, const Shape& shape);

SymTensor tensor_add(const SymTensor& a, const SymTensor& b);
/// Digit-wise sum of two codes of the same shape.
Code add_codes(const Shape& shape, Code a, Code b);

/// Lexical comparison of the flattened forms, i.e. of the codes.
std::strong_ordering lex_compare(const SymTensor& a, const SymTensor& b);

/// Parses a comma-separated literal: either D free entries in digit order or
/// the full n^k flattened list (validated for symmetry).
SymTensor parse_tensor_literal(const Shape& shape, std::string_view text);

/// Distinct outer powers of non-zero vectors, ascending by code.
std::vector<Code> simple_tensor_codes(const Shape& shape);

}  // namespace symrank
