#include "symrank/symtensor.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace symrank {

namespace detail {

struct ShapeLayout {
  unsigned n = 0;
  unsigned k = 0;
  FieldSpec field{2};
  std::vector<MultiIndex> sorted;
  std::map<MultiIndex, std::size_t> digit_by_index;
  std::vector<std::uint16_t> digit_of_position;
  std::vector<Code> weights;
  std::size_t full_length = 0;
  Code code_space = 0;
};

}  // namespace detail

namespace {

void enumerate_sorted(unsigned n, unsigned k, MultiIndex& prefix, std::vector<MultiIndex>& out) {
  if (prefix.size() == k) {
    out.push_back(prefix);
    return;
  }
  const unsigned start = prefix.empty() ? 0 : prefix.back();
  for (unsigned i = start; i < n; ++i) {
    prefix.push_back(static_cast<std::uint8_t>(i));
    enumerate_sorted(n, k, prefix, out);
    prefix.pop_back();
  }
}

bool mul_overflows(std::uint64_t a, std::uint64_t b, std::uint64_t limit) {
  return a != 0 && b > limit / a;
}

}  // namespace

Shape::Shape(unsigned n, unsigned k, FieldSpec field) {
  if (n == 0 || k == 0) throw std::invalid_argument("shape requires n >= 1 and k >= 1");
  if (n > 255) throw std::invalid_argument("mode dimension above 255 is not supported");
  auto layout = std::make_shared<detail::ShapeLayout>();
  layout->n = n;
  layout->k = k;
  layout->field = field;

  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  std::uint64_t full = 1;
  for (unsigned j = 0; j < k; ++j) {
    if (mul_overflows(full, n, kLimit)) throw std::invalid_argument("n^k is too large");
    full *= n;
  }
  layout->full_length = static_cast<std::size_t>(full);

  MultiIndex prefix;
  enumerate_sorted(n, k, prefix, layout->sorted);
  const std::size_t digits = layout->sorted.size();
  if (digits > std::numeric_limits<std::uint16_t>::max()) {
    throw std::invalid_argument("too many free entries");
  }
  for (std::size_t d = 0; d < digits; ++d) layout->digit_by_index.emplace(layout->sorted[d], d);

  Code space = 1;
  for (std::size_t d = 0; d < digits; ++d) {
    if (mul_overflows(space, field.modulus(), kLimit)) {
      throw std::invalid_argument("code space p^D does not fit in 62 bits");
    }
    space *= field.modulus();
  }
  layout->code_space = space;
  layout->weights.resize(digits);
  Code w = 1;
  for (std::size_t d = digits; d-- > 0;) {
    layout->weights[d] = w;
    w *= field.modulus();
  }

  // Only materialise the position table for formats that can ever be
  // flattened in memory.
  if (full <= (std::uint64_t{1} << 24)) {
    layout->digit_of_position.resize(layout->full_length);
    MultiIndex tuple(k, 0);
    for (std::size_t pos = 0; pos < layout->full_length; ++pos) {
      MultiIndex sorted = tuple;
      std::sort(sorted.begin(), sorted.end());
      layout->digit_of_position[pos] = static_cast<std::uint16_t>(layout->digit_by_index.at(sorted));
      for (std::size_t j = k; j-- > 0;) {
        if (++tuple[j] < n) break;
        tuple[j] = 0;
      }
    }
  }
  layout_ = std::move(layout);
}

unsigned Shape::n() const noexcept { return layout_->n; }
unsigned Shape::k() const noexcept { return layout_->k; }
unsigned Shape::p() const noexcept { return layout_->field.modulus(); }
const FieldSpec& Shape::field() const noexcept { return layout_->field; }
std::size_t Shape::free_count() const noexcept { return layout_->sorted.size(); }
std::size_t Shape::full_length() const noexcept { return layout_->full_length; }
Code Shape::code_space() const noexcept { return layout_->code_space; }
const std::vector<MultiIndex>& Shape::sorted_indices() const noexcept { return layout_->sorted; }
std::span<const std::uint16_t> Shape::digit_of_position() const noexcept {
  return layout_->digit_of_position;
}
Code Shape::digit_weight(std::size_t digit) const noexcept { return layout_->weights[digit]; }

std::size_t Shape::digit_of_tuple(std::span<const std::uint8_t> tuple) const {
  if (tuple.size() != k()) throw std::invalid_argument("tuple length does not match tensor order");
  MultiIndex sorted(tuple.begin(), tuple.end());
  std::sort(sorted.begin(), sorted.end());
  auto it = layout_->digit_by_index.find(sorted);
  if (it == layout_->digit_by_index.end()) throw std::out_of_range("tuple index out of range");
  return it->second;
}

MultiIndex Shape::tuple_at(std::size_t position) const {
  MultiIndex tuple(k(), 0);
  for (std::size_t j = k(); j-- > 0;) {
    tuple[j] = static_cast<std::uint8_t>(position % n());
    position /= n();
  }
  return tuple;
}

std::string Shape::to_string() const {
  std::ostringstream os;
  for (unsigned j = 0; j < k(); ++j) os << (j ? "x" : "") << n();
  os << " over F_" << p();
  return os.str();
}

bool Shape::operator==(const Shape& other) const noexcept {
  return layout_ == other.layout_ ||
         (n() == other.n() && k() == other.k() && p() == other.p());
}

void decode_digits(const Shape& shape, Code code, std::span<Residue> out) {
  const unsigned p = shape.p();
  for (std::size_t d = out.size(); d-- > 0;) {
    out[d] = static_cast<Residue>(code % p);
    code /= p;
  }
}

std::vector<Residue> decode_digits(const Shape& shape, Code code) {
  std::vector<Residue> digits(shape.free_count());
  decode_digits(shape, code, digits);
  return digits;
}

Code encode_digits(const Shape& shape, std::span<const Residue> digits) {
  if (digits.size() != shape.free_count()) throw std::invalid_argument("digit count does not match shape");
  Code code = 0;
  for (Residue d : digits) {
    if (d >= shape.p()) throw std::invalid_argument("digit out of range for modulus");
    code = code * shape.p() + d;
  }
  return code;
}

SymTensor::SymTensor(Shape shape, Code code) : shape_(std::move(shape)), code_(code) {
  if (code_ >= shape_.code_space()) throw std::out_of_range("code exceeds p^D for this shape");
}

SymTensor SymTensor::from_digits(const Shape& shape, std::span<const Residue> digits) {
  return SymTensor(shape, encode_digits(shape, digits));
}

Residue FlatTensor::at(std::span<const std::uint8_t> tuple) const {
  std::size_t pos = 0;
  for (auto i : tuple) pos = pos * shape.n() + i;
  return entries.at(pos);
}

FlatTensor flatten(const SymTensor& t) {
  const Shape& shape = t.shape();
  if (shape.digit_of_position().empty()) throw std::invalid_argument("format too large to flatten");
  const auto digits = t.digits();
  FlatTensor ft{shape, std::vector<Residue>(shape.full_length())};
  const auto map = shape.digit_of_position();
  for (std::size_t pos = 0; pos < ft.entries.size(); ++pos) ft.entries[pos] = digits[map[pos]];
  return ft;
}

bool is_symmetric(const FlatTensor& ft) {
  const auto map = ft.shape.digit_of_position();
  std::vector<Residue> seen(ft.shape.free_count(), 0);
  std::vector<bool> set(ft.shape.free_count(), false);
  for (std::size_t pos = 0; pos < ft.entries.size(); ++pos) {
    const auto d = map[pos];
    if (!set[d]) {
      seen[d] = ft.entries[pos];
      set[d] = true;
    } else if (seen[d] != ft.entries[pos]) {
      return false;
    }
  }
  return true;
}

SymTensor pack(const FlatTensor& ft) {
  const Shape& shape = ft.shape;
  if (ft.entries.size() != shape.full_length()) throw std::invalid_argument("flattened length does not match n^k");
  const auto map = shape.digit_of_position();
  std::vector<Residue> digits(shape.free_count(), 0);
  std::vector<bool> set(shape.free_count(), false);
  for (std::size_t pos = 0; pos < ft.entries.size(); ++pos) {
    const Residue value = ft.entries[pos];
    if (value >= shape.p()) throw std::invalid_argument("entry out of range for modulus");
    const auto d = map[pos];
    if (!set[d]) {
      digits[d] = value;
      set[d] = true;
    } else if (digits[d] != value) {
      const auto tuple = shape.tuple_at(pos);
      std::string msg = "symmetry violation at tuple (";
      for (std::size_t j = 0; j < tuple.size(); ++j) {
        msg += (j ? "," : "") + std::to_string(tuple[j] + 1);
      }
      throw std::invalid_argument(msg + ")");
    }
  }
  return SymTensor::from_digits(shape, digits);
}

SymTensor outer_power(std::span<const Residue> v, const Shape& shape) {
  if (v.size() != shape.n()) throw std::invalid_argument("vector length does not match n");
  if (std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; })) {
    throw std::invalid_argument("simple tensors require non-zero u");
  }
  const FieldSpec& f = shape.field();
  std::vector<Residue> digits;
  digits.reserve(shape.free_count());
  for (const auto& index : shape.sorted_indices()) {
    Residue x = 1;
    for (auto i : index) x = f.mul(x, v[i] % f.modulus());
    digits.push_back(x);
  }
  return SymTensor::from_digits(shape, digits);
}

Code add_codes(const Shape& shape, Code a, Code b) {
  const unsigned p = shape.p();
  if (p == 2) return a ^ b;
  Code out = 0;
  Code weight = 1;
  while (a != 0 || b != 0) {
    const auto s = static_cast<unsigned>(a % p + b % p);
    out += (s >= p ? s - p : s) * weight;
    weight *= p;
    a /= p;
    b /= p;
  }
  return out;
}

SymTensor tensor_add(const SymTensor& a, const SymTensor& b) {
  if (!(a.shape() == b.shape())) throw std::invalid_argument("shape mismatch in tensor_add");
  return SymTensor(a.shape(), add_codes(a.shape(), a.code(), b.code()));
}

std::strong_ordering lex_compare(const SymTensor& a, const SymTensor& b) {
  if (!(a.shape() == b.shape())) throw std::invalid_argument("shape mismatch in lex_compare");
  return a.code() <=> b.code();
}

SymTensor parse_tensor_literal(const Shape& shape, std::string_view text) {
  std::vector<Residue> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto token = text.substr(start, end - start);
    while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) token.remove_prefix(1);
    while (!token.empty() && (token.back() == ' ' || token.back() == '\t')) token.remove_suffix(1);
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
      throw std::invalid_argument("cannot parse tensor entry '" + std::string(token) + "'");
    }
    if (value >= shape.p()) {
      throw std::invalid_argument("tensor entry " + std::to_string(value) + " is not a residue mod " +
                                  std::to_string(shape.p()));
    }
    values.push_back(value);
    start = end + 1;
  }
  if (values.size() == shape.free_count()) return SymTensor::from_digits(shape, values);
  if (values.size() == shape.full_length()) return pack(FlatTensor{shape, std::move(values)});
  throw std::invalid_argument("tensor literal has " + std::to_string(values.size()) + " entries; expected " +
                              std::to_string(shape.free_count()) + " free entries or " +
                              std::to_string(shape.full_length()) + " flattened entries");
}

std::vector<Code> simple_tensor_codes(const Shape& shape) {
  std::vector<Code> codes;
  std::vector<Residue> v(shape.n(), 0);
  while (true) {
    std::size_t j = 0;
    while (j < v.size() && ++v[j] == shape.p()) v[j++] = 0;
    if (j == v.size()) break;
    codes.push_back(outer_power(v, shape).code());
  }
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  return codes;
}

}  // namespace symrank
