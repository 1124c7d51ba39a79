#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace symrank {

/// A residue of F_p, always kept in [0, p).
using Residue = std::uint32_t;

bool is_prime(unsigned value);

/// Prime field F_p. The modulus is validated once here; every other routine
/// trusts it. Moduli are limited to p < 256 so residues pack into bytes.
class FieldSpec {
 public:
  static constexpr unsigned kMaxModulus = 255;

  explicit FieldSpec(unsigned p);

  unsigned modulus() const noexcept { return p_; }

  Residue add(Residue a, Residue b) const noexcept {
    const Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const noexcept { return add(a, neg(b)); }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept { return (a * b) % p_; }
  /// Multiplicative inverse; throws std::domain_error for zero.
  Residue inv(Residue a) const;
  /// Reduces an arbitrary signed integer into [0, p).
  Residue reduce(std::int64_t value) const noexcept;

  bool operator==(const FieldSpec&) const = default;

 private:
  unsigned p_;
};

Residue fadd(Residue a, Residue b, const FieldSpec& f);
Residue fmul(Residue a, Residue b, const FieldSpec& f);
Residue finv(Residue a, const FieldSpec& f);

/// Dense n x n matrix of residues, row-major.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), a_(n * n, 0) {}
  SquareMatrix(std::size_t n, std::vector<Residue> entries);
  SquareMatrix(std::initializer_list<std::initializer_list<Residue>> rows);

  static SquareMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  Residue& operator()(std::size_t row, std::size_t col) { return a_[row * n_ + col]; }
  Residue operator()(std::size_t row, std::size_t col) const { return a_[row * n_ + col]; }
  std::span<const Residue> entries() const noexcept { return a_; }

  bool operator==(const SquareMatrix&) const = default;
  auto operator<=>(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<Residue> a_;
};

/// Determinant mod p. Cofactor expansion for n <= 3, elimination above.
Residue det3(const SquareMatrix& m, const FieldSpec& f);

SquareMatrix multiply(const SquareMatrix& a, const SquareMatrix& b, const FieldSpec& f);
SquareMatrix transpose(const SquareMatrix& m);

/// Row rank by Gaussian elimination over F_p.
std::size_t row_rank(const SquareMatrix& m, const FieldSpec& f);

}  // namespace symrank
