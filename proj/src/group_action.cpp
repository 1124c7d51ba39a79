#include "symrank/group_action.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <stdexcept>
#include <string>

#include "parallel.hpp"
#include "symrank/error.hpp"

namespace symrank {

GroupElement::GroupElement(SquareMatrix m, const FieldSpec& f) : m_(std::move(m)) {
  if (det3(m_, f) == 0) throw std::invalid_argument("matrix is singular over F_" + std::to_string(f.modulus()));
}

std::uint64_t group_order(unsigned n, unsigned p) {
  constexpr std::uint64_t kMax = ~std::uint64_t{0};
  std::uint64_t pn = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (pn > kMax / p) throw std::overflow_error("group order overflows 64 bits");
    pn *= p;
  }
  std::uint64_t order = 1;
  std::uint64_t pi = 1;
  for (unsigned i = 0; i < n; ++i) {
    const std::uint64_t factor = pn - pi;
    if (order > kMax / factor) throw std::overflow_error("group order overflows 64 bits");
    order *= factor;
    pi *= p;
  }
  return order;
}

namespace {

std::uint64_t candidate_count(unsigned n, unsigned p) {
  std::uint64_t count = 1;
  for (unsigned i = 0; i < n * n; ++i) {
    if (count > (std::uint64_t{1} << 40) / p) throw ResourceExhausted("too many candidate matrices", count);
    count *= p;
  }
  return count;
}

void decode_matrix(std::uint64_t index, unsigned p, SquareMatrix& m) {
  const std::size_t n = m.size();
  for (std::size_t e = n * n; e-- > 0;) {
    m(e / n, e % n) = static_cast<Residue>(index % p);
    index /= p;
  }
}

}  // namespace

void for_each_group_element(unsigned n, const FieldSpec& f,
                            const std::function<void(const GroupElement&)>& visit) {
  const std::uint64_t count = candidate_count(n, f.modulus());
  SquareMatrix m(n);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    decode_matrix(idx, f.modulus(), m);
    if (det3(m, f) != 0) visit(GroupElement(m, f));
  }
}

std::vector<GroupElement> enumerate_group(unsigned n, const FieldSpec& f, std::uint64_t max_elements) {
  const std::uint64_t order = group_order(n, f.modulus());
  if (order > max_elements) {
    throw ResourceExhausted("GL_" + std::to_string(n) + "(F_" + std::to_string(f.modulus()) + ") has " +
                                std::to_string(order) + " elements, limit is " + std::to_string(max_elements),
                            order);
  }
  std::vector<GroupElement> out;
  out.reserve(order);
  for_each_group_element(n, f, [&](const GroupElement& g) { out.push_back(g); });
  return out;
}

FlatTensor mode_multiply(const FlatTensor& ft, const GroupElement& g, unsigned mode) {
  const Shape& shape = ft.shape;
  const std::size_t n = shape.n();
  if (mode < 1 || mode > shape.k()) {
    throw std::out_of_range("mode " + std::to_string(mode) + " outside 1.." + std::to_string(shape.k()));
  }
  if (g.n() != n) throw std::invalid_argument("group element size does not match mode dimension");
  const FieldSpec& f = shape.field();
  std::size_t stride = 1;
  for (unsigned j = mode; j < shape.k(); ++j) stride *= n;

  FlatTensor out = ft;
  std::vector<Residue> fiber(n);
  for (std::size_t pos = 0; pos < ft.entries.size(); ++pos) {
    if ((pos / stride) % n != 0) continue;  // visit each fiber once, from its index-0 entry
    for (std::size_t t = 0; t < n; ++t) fiber[t] = ft.entries[pos + t * stride];
    for (std::size_t u = 0; u < n; ++u) {
      Residue s = 0;
      for (std::size_t t = 0; t < n; ++t) s = f.add(s, f.mul(g.matrix()(u, t), fiber[t]));
      out.entries[pos + u * stride] = s;
    }
  }
  return out;
}

SymTensor act(const GroupElement& g, const SymTensor& t) {
  FlatTensor ft = flatten(t);
  for (unsigned mode = 1; mode <= t.shape().k(); ++mode) ft = mode_multiply(ft, g, mode);
  return pack(ft);
}

void compile_coefficients(const SquareMatrix& g, const Shape& shape, std::span<std::uint8_t> out) {
  const std::size_t d = shape.free_count();
  const unsigned p = shape.p();
  const unsigned k = shape.k();
  const auto digit_of = shape.digit_of_position();
  const auto& sorted = shape.sorted_indices();
  std::vector<std::uint32_t> acc(d);
  MultiIndex tuple(k);
  for (std::size_t u = 0; u < d; ++u) {
    std::fill(acc.begin(), acc.end(), 0);
    std::fill(tuple.begin(), tuple.end(), 0);
    for (std::size_t pos = 0; pos < digit_of.size(); ++pos) {
      std::uint32_t prod = 1;
      for (unsigned j = 0; j < k && prod != 0; ++j) prod = prod * g(sorted[u][j], tuple[j]) % p;
      acc[digit_of[pos]] += prod;
      for (std::size_t j = k; j-- > 0;) {
        if (++tuple[j] < shape.n()) break;
        tuple[j] = 0;
      }
    }
    for (std::size_t s = 0; s < d; ++s) out[u * d + s] = static_cast<std::uint8_t>(acc[s] % p);
  }
}

CompiledAction::CompiledAction(GroupElement element, Shape shape, std::vector<std::uint8_t> coefficients)
    : element_(std::move(element)), shape_(std::move(shape)), coefficients_(std::move(coefficients)) {
  const std::size_t d = shape_.free_count();
  if (coefficients_.size() != d * d) throw std::invalid_argument("coefficient matrix must be D x D");
  terms_.resize(d);
  for (std::size_t u = 0; u < d; ++u) {
    for (std::size_t s = 0; s < d; ++s) {
      if (const auto c = coefficients_[u * d + s]; c != 0) {
        terms_[u].push_back({static_cast<std::uint16_t>(s), c});
      }
    }
  }
}

Code CompiledAction::apply(Code code) const {
  const auto digits = decode_digits(shape_, code);
  return apply_coefficients(coefficients_, digits, shape_.p());
}

CompiledAction compile_action(const GroupElement& g, const Shape& shape) {
  if (g.n() != shape.n()) throw std::invalid_argument("group element size does not match mode dimension");
  const std::size_t d = shape.free_count();
  std::vector<std::uint8_t> coefficients(d * d);
  compile_coefficients(g.matrix(), shape, coefficients);
  return CompiledAction(g, shape, std::move(coefficients));
}

CompiledGroup CompiledGroup::build(const Shape& shape, std::uint64_t memory_budget_bytes, unsigned threads) {
  const unsigned n = shape.n();
  const unsigned p = shape.p();
  const std::size_t d2 = shape.free_count() * shape.free_count();
  const std::size_t n2 = std::size_t{n} * n;
  const std::uint64_t order = group_order(n, p);
  const std::uint64_t per_element = d2 + n2;
  if (order > memory_budget_bytes / per_element) {
    const long double need = static_cast<long double>(order) * per_element;
    const auto required = need > 1.8e19L ? ~std::uint64_t{0} : static_cast<std::uint64_t>(need);
    throw ResourceExhausted("compiled action tables for GL_" + std::to_string(n) + "(F_" + std::to_string(p) +
                                ") require " + std::to_string(required) + " bytes, memory budget is " +
                                std::to_string(memory_budget_bytes),
                            required);
  }
  if (shape.digit_of_position().empty()) throw std::invalid_argument("format too large to compile actions");
  const std::uint64_t candidates = candidate_count(n, p);
  const FieldSpec& f = shape.field();

  // Each worker scans a contiguous candidate range; concatenating the
  // per-worker output in worker order keeps lexical enumeration order.
  const unsigned workers = std::max(1u, std::min<unsigned>(detail::resolve_threads(threads), 64));
  std::vector<std::vector<std::uint8_t>> coeff_parts(workers);
  std::vector<std::vector<std::uint8_t>> matrix_parts(workers);
  detail::parallel_slices(candidates, workers, [&](std::size_t w, std::size_t begin, std::size_t end) {
    SquareMatrix m(n);
    auto& coeffs = coeff_parts[w];
    auto& mats = matrix_parts[w];
    for (std::size_t idx = begin; idx < end; ++idx) {
      decode_matrix(idx, p, m);
      if (det3(m, f) == 0) continue;
      coeffs.resize(coeffs.size() + d2);
      compile_coefficients(m, shape, std::span(coeffs).last(d2));
      for (auto e : m.entries()) mats.push_back(static_cast<std::uint8_t>(e));
    }
  });

  CompiledGroup group(shape);
  group.order_ = order;
  std::vector<std::uint8_t> all_coeffs;
  std::vector<std::uint8_t> all_mats;
  all_coeffs.reserve(order * d2);
  all_mats.reserve(order * n2);
  for (unsigned w = 0; w < workers; ++w) {
    all_coeffs.insert(all_coeffs.end(), coeff_parts[w].begin(), coeff_parts[w].end());
    all_mats.insert(all_mats.end(), matrix_parts[w].begin(), matrix_parts[w].end());
    std::vector<std::uint8_t>().swap(coeff_parts[w]);
    std::vector<std::uint8_t>().swap(matrix_parts[w]);
  }
  if (all_mats.size() != order * n2) throw std::logic_error("enumerated group size differs from formula");

  // Drop repeated tables: sort by (hash, index), keep the first of each run of
  // byte-identical tables.
  const std::size_t total = static_cast<std::size_t>(order);
  std::vector<std::pair<std::uint64_t, std::uint32_t>> keyed(total);
  for (std::size_t i = 0; i < total; ++i) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t b = 0; b < d2; ++b) h = (h ^ all_coeffs[i * d2 + b]) * 1099511628211ull;
    keyed[i] = {h, static_cast<std::uint32_t>(i)};
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<bool> keep(total, false);
  for (std::size_t run = 0; run < total;) {
    std::size_t end = run;
    while (end < total && keyed[end].first == keyed[run].first) ++end;
    std::vector<std::uint32_t> firsts;
    for (std::size_t i = run; i < end; ++i) {
      const auto idx = keyed[i].second;
      const bool duplicate = std::any_of(firsts.begin(), firsts.end(), [&](std::uint32_t other) {
        return std::memcmp(&all_coeffs[idx * d2], &all_coeffs[std::size_t{other} * d2], d2) == 0;
      });
      if (!duplicate) {
        firsts.push_back(idx);
        keep[idx] = true;
      }
    }
    run = end;
  }
  std::vector<std::pair<std::uint64_t, std::uint32_t>>().swap(keyed);

  for (std::size_t i = 0; i < total; ++i) {
    if (!keep[i]) continue;
    group.coefficients_.insert(group.coefficients_.end(), all_coeffs.begin() + i * d2,
                               all_coeffs.begin() + (i + 1) * d2);
    group.matrices_.insert(group.matrices_.end(), all_mats.begin() + i * n2, all_mats.begin() + (i + 1) * n2);
    ++group.count_;
  }
  return group;
}

SquareMatrix CompiledGroup::representative(std::size_t index) const {
  const std::size_t n = shape_.n();
  std::vector<Residue> entries(matrices_.begin() + index * n * n, matrices_.begin() + (index + 1) * n * n);
  return SquareMatrix(n, std::move(entries));
}

}  // namespace symrank
