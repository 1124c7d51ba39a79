#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "symrank/field.hpp"
#include "symrank/symtensor.hpp"

namespace symrank {

/// An invertible n x n matrix over F_p.
class GroupElement {
 public:
  /// Throws std::invalid_argument when det(m) = 0.
  GroupElement(SquareMatrix m, const FieldSpec& f);

  const SquareMatrix& matrix() const noexcept { return m_; }
  std::size_t n() const noexcept { return m_.size(); }

  bool operator==(const GroupElement&) const = default;

 private:
  SquareMatrix m_;
};

/// |GL_n(F_p)| = prod_{i<n} (p^n - p^i). Throws std::overflow_error.
std::uint64_t group_order(unsigned n, unsigned p);

/// Visits every invertible matrix in lexical order of the row-major entries.
void for_each_group_element(unsigned n, const FieldSpec& f,
                            const std::function<void(const GroupElement&)>& visit);

/// Materialised GL_n(F_p); throws ResourceExhausted above max_elements.
std::vector<GroupElement> enumerate_group(unsigned n, const FieldSpec& f,
                                          std::uint64_t max_elements = std::uint64_t{1} << 20);

/// Replaces each mode-`mode` fiber v (1-based mode) by g v.
FlatTensor mode_multiply(const FlatTensor& ft, const GroupElement& g, unsigned mode);

/// (g, ..., g) . t computed by k successive mode products.
SymTensor act(const GroupElement& g, const SymTensor& t);

/// The linear map that act(g, .) induces on the D free entries.
///
/// Output digit u reads  sum_s  c[u][s] * x_s  where c[u][s] accumulates
/// g_{u_1 i_1} ... g_{u_k i_k} over every full tuple i whose sorted form is s.
class CompiledAction {
 public:
  struct Term {
    std::uint16_t source;
    Residue coefficient;
  };

  CompiledAction(GroupElement element, Shape shape, std::vector<std::uint8_t> coefficients);

  const GroupElement& element() const noexcept { return element_; }
  const Shape& shape() const noexcept { return shape_; }
  /// Dense D x D coefficient matrix, row = output digit.
  std::span<const std::uint8_t> coefficients() const noexcept { return coefficients_; }
  /// Non-zero terms of each output digit.
  const std::vector<std::vector<Term>>& terms() const noexcept { return terms_; }

  Code apply(Code code) const;
  SymTensor apply(const SymTensor& t) const { return SymTensor(shape_, apply(t.code())); }

 private:
  GroupElement element_;
  Shape shape_;
  std::vector<std::uint8_t> coefficients_;
  std::vector<std::vector<Term>> terms_;
};

CompiledAction compile_action(const GroupElement& g, const Shape& shape);

/// Writes the dense coefficient matrix of g acting on `shape` into out
/// (size D*D).
void compile_coefficients(const SquareMatrix& g, const Shape& shape, std::span<std::uint8_t> out);

/// Applies a dense coefficient matrix to decoded digits.
inline Code apply_coefficients(std::span<const std::uint8_t> coefficients, std::span<const Residue> digits,
                               unsigned p) {
  const std::size_t d = digits.size();
  Code out = 0;
  const std::uint8_t* row = coefficients.data();
  for (std::size_t u = 0; u < d; ++u, row += d) {
    std::uint32_t s = 0;
    for (std::size_t j = 0; j < d; ++j) s += row[j] * digits[j];
    out = out * p + s % p;
  }
  return out;
}

/// Every distinct compiled action of GL_n(F_p) on one shape.
///
/// Elements whose tables coincide (for instance scalar matrices c*I with
/// c^k = 1) are stored once; the stored representative is the first such
/// element in enumeration order.
class CompiledGroup {
 public:
  /// Throws ResourceExhausted when the tables would exceed the budget.
  static CompiledGroup build(const Shape& shape, std::uint64_t memory_budget_bytes, unsigned threads = 1);

  const Shape& shape() const noexcept { return shape_; }
  /// |GL_n(F_p)|.
  std::uint64_t order() const noexcept { return order_; }
  /// Number of distinct tables.
  std::size_t size() const noexcept { return count_; }

  std::span<const std::uint8_t> coefficients(std::size_t index) const noexcept {
    const std::size_t d2 = shape_.free_count() * shape_.free_count();
    return {coefficients_.data() + index * d2, d2};
  }
  Code apply(std::size_t index, std::span<const Residue> digits) const {
    return apply_coefficients(coefficients(index), digits, shape_.p());
  }
  SquareMatrix representative(std::size_t index) const;

 private:
  CompiledGroup(Shape shape) : shape_(std::move(shape)) {}

  Shape shape_;
  std::uint64_t order_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint8_t> coefficients_;
  std::vector<std::uint8_t> matrices_;
};

}  // namespace symrank
