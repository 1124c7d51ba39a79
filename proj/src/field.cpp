#include "symrank/field.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace symrank {

bool is_prime(unsigned value) {
  if (value < 2) return false;
  for (unsigned d = 2; d * d <= value; ++d) {
    if (value % d == 0) return false;
  }
  return true;
}

FieldSpec::FieldSpec(unsigned p) : p_(p) {
  if (!is_prime(p)) {
    throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  }
  if (p > kMaxModulus) {
    throw std::invalid_argument("modulus " + std::to_string(p) + " exceeds supported maximum " +
                                std::to_string(kMaxModulus));
  }
}

Residue FieldSpec::inv(Residue a) const {
  if (a % p_ == 0) throw std::domain_error("non-invertible element");
  for (Residue b = 1; b < p_; ++b) {
    if (mul(a, b) == 1) return b;
  }
  throw std::domain_error("non-invertible element");
}

Residue FieldSpec::reduce(std::int64_t value) const noexcept {
  const auto p = static_cast<std::int64_t>(p_);
  auto r = value % p;
  if (r < 0) r += p;
  return static_cast<Residue>(r);
}

Residue fadd(Residue a, Residue b, const FieldSpec& f) { return f.add(a, b); }
Residue fmul(Residue a, Residue b, const FieldSpec& f) { return f.mul(a, b); }
Residue finv(Residue a, const FieldSpec& f) { return f.inv(a); }

SquareMatrix::SquareMatrix(std::size_t n, std::vector<Residue> entries) : n_(n), a_(std::move(entries)) {
  if (a_.size() != n_ * n_) throw std::invalid_argument("matrix entry count does not match n*n");
}

SquareMatrix::SquareMatrix(std::initializer_list<std::initializer_list<Residue>> rows) : n_(rows.size()) {
  a_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw std::invalid_argument("matrix rows must all have length n");
    a_.insert(a_.end(), row.begin(), row.end());
  }
}

SquareMatrix SquareMatrix::identity(std::size_t n) {
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

namespace {

Residue det_by_elimination(SquareMatrix m, const FieldSpec& f) {
  const std::size_t n = m.size();
  Residue det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      det = f.neg(det);
    }
    det = f.mul(det, m(col, col));
    const Residue inv = f.inv(m(col, col));
    for (std::size_t row = col + 1; row < n; ++row) {
      const Residue factor = f.mul(m(row, col), inv);
      if (factor == 0) continue;
      for (std::size_t j = col; j < n; ++j) m(row, j) = f.sub(m(row, j), f.mul(factor, m(col, j)));
    }
  }
  return det;
}

}  // namespace

Residue det3(const SquareMatrix& m, const FieldSpec& f) {
  switch (m.size()) {
    case 0:
      return 1;
    case 1:
      return m(0, 0) % f.modulus();
    case 2:
      return f.sub(f.mul(m(0, 0), m(1, 1)), f.mul(m(0, 1), m(1, 0)));
    case 3: {
      const Residue minor0 = f.sub(f.mul(m(1, 1), m(2, 2)), f.mul(m(1, 2), m(2, 1)));
      const Residue minor1 = f.sub(f.mul(m(1, 0), m(2, 2)), f.mul(m(1, 2), m(2, 0)));
      const Residue minor2 = f.sub(f.mul(m(1, 0), m(2, 1)), f.mul(m(1, 1), m(2, 0)));
      return f.add(f.sub(f.mul(m(0, 0), minor0), f.mul(m(0, 1), minor1)), f.mul(m(0, 2), minor2));
    }
    default:
      return det_by_elimination(m, f);
  }
}

SquareMatrix multiply(const SquareMatrix& a, const SquareMatrix& b, const FieldSpec& f) {
  if (a.size() != b.size()) throw std::invalid_argument("matrix size mismatch");
  const std::size_t n = a.size();
  SquareMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Residue s = 0;
      for (std::size_t t = 0; t < n; ++t) s = f.add(s, f.mul(a(i, t), b(t, j)));
      c(i, j) = s;
    }
  }
  return c;
}

SquareMatrix transpose(const SquareMatrix& m) {
  SquareMatrix t(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) t(j, i) = m(i, j);
  }
  return t;
}

std::size_t row_rank(const SquareMatrix& input, const FieldSpec& f) {
  SquareMatrix m = input;
  const std::size_t n = m.size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < n; ++col) {
    std::size_t pivot = rank;
    while (pivot < n && m(pivot, col) == 0) ++pivot;
    if (pivot == n) continue;
    for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(rank, j));
    const Residue inv = f.inv(m(rank, col));
    for (std::size_t row = 0; row < n; ++row) {
      if (row == rank || m(row, col) == 0) continue;
      const Residue factor = f.mul(m(row, col), inv);
      for (std::size_t j = 0; j < n; ++j) m(row, j) = f.sub(m(row, j), f.mul(factor, m(rank, j)));
    }
    ++rank;
  }
  return rank;
}

}  // namespace symrank
