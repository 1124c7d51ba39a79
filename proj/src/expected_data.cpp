#include "symrank/expected_data.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace symrank {

namespace {

// 3x3 over F_2.
constexpr std::array<std::uint64_t, 4> kCounts232{1, 7, 21, 35};
constexpr std::array<std::string_view, 4> kPercent232{"1.5625", "10.9375", "32.8125", "54.6875"};
constexpr std::array<ExpectedOrbit, 5> kOrbits232{{
    {0, 1, "........."},
    {1, 7, "........1"},
    {2, 21, ".....1.11"},
    {3, 7, ".....1.1."},
    {3, 28, "..1.1.1.."},
}};

// 3x3 over F_3.
constexpr std::array<std::uint64_t, 5> kCounts332{1, 13, 91, 390, 234};
constexpr std::array<std::string_view, 5> kPercent332{"0.1372", "1.7833", "12.4829", "53.4979", "32.0988"};
constexpr std::array<ExpectedOrbit, 7> kOrbits332{{
    {0, 1, "........."},
    {1, 13, "........1"},
    {2, 13, "........2"},
    {2, 78, "....1...1"},
    {3, 156, ".....1.1."},
    {3, 234, "..1.2.1.."},
    {4, 234, "..1.1.1.."},
}};

// 3x3 over F_5: counts and layer minima only.
constexpr std::array<std::uint64_t, 5> kCounts532{1, 62, 1922, 7440, 6200};
constexpr std::array<std::string_view, 5> kPercent532{"0.0064", "0.3968", "12.3008", "47.6160", "39.6800"};
constexpr std::array<std::string_view, 5> kMinima532{
    ".........", "........1", "........2", "....1...2", "..1.2.1..",
};

// 3x3x3 over F_2.
constexpr std::array<std::uint64_t, 8> kCounts233{1, 7, 21, 35, 35, 21, 7, 1};
constexpr std::array<std::string_view, 8> kPercent233{"0.10", "0.68", "2.05", "3.42", "3.42", "2.05", "0.68", "0.10"};
constexpr std::array<ExpectedOrbit, 10> kOrbits233{{
    {0, 1, "..........................."},
    {1, 7, "..........................1"},
    {2, 21, "..............1.11....11.11"},
    {3, 7, "..............1.11....11.1."},
    {3, 28, "..1...1.1....1....1.1...1.1", 18},
    {4, 7, ".....1.1...1..1111.1.111.1."},
    {4, 28, "..1...1.1....1....1.1...1..", 18},
    {5, 21, ".....1.1...1..1111.1.111.11"},
    {6, 7, ".....1.1...1...1...1.1....1"},
    {7, 1, ".....1.1...1...1...1.1....."},
}};
constexpr std::array<std::string_view, 1> kErrata233{
    "rank 3 and rank 4 orbits published with size 18; 18 does not divide |GL_3(F_2)| = 168 and "
    "7 + 18 != 35, the class equation forces 35 - 7 = 28",
};

// 3x3x3 over F_3.
constexpr std::array<std::uint64_t, 8> kCounts333{1, 26, 312, 2288, 11440, 30342, 14352, 288};
constexpr std::array<std::string_view, 8> kPercent333{"0.00",  "0.04",  "0.53",  "3.87",
                                                      "19.37", "51.38", "24.31", "0.49"};
constexpr std::array<ExpectedOrbit, 26> kOrbits333{{
    {0, 1, "..........................."},
    {1, 26, "..........................1"},
    {2, 312, "..............1.1.....1...1"},
    {3, 104, ".................1.....1.1."},
    {3, 312, "..............1.1.....1...2"},
    {3, 1872, "..1...1......1....1.......1"},
    {4, 208, ".................1.....1.11"},
    {4, 1872, "........1....1......1...1.."},
    {4, 468, ".....1.1...1...1...1.1....."},
    {4, 1404, "..1...1.......1.1.1...1...1"},
    {4, 5616, "..1...1......1....1.......2"},
    {4, 1872, "..1...1......1...11....1.11"},
    {5, 624, "........1.....1.1...1.1.1.1"},
    {5, 3744, "........1....1......1...1.1"},
    {5, 2808, ".....1.1...1...1...1.1....1"},
    {5, 5616, ".....1.1...1.1.1...1.1....1"},
    {5, 702, "....1...1.1.1.......1...1.."},
    {5, 5616, "..1...1......1...11....1.1."},
    {5, 5616, "..1...1......1...11....1.12"},
    {5, 5616, "..1...1......1...21....2.2."},
    {6, 624, "........1.....1.1...1.1.1.."},
    {6, 624, "........1.....1.1...1.1.1.2"},
    {6, 5616, "....1...1.1.1.......1...1.1"},
    {6, 3744, "..1.1.1...1.1.2.211...21.11"},
    {6, 3744, "..1.1.1...1.1.2.211...21.12"},
    {7, 288, "..1.1.1...1.1.2.211...21.1."},
}};
constexpr std::array<std::string_view, 1> kErrata333{
    "rank 1 percentage published as 0.05%; 26/59049 = 0.044%",
};

// 3x3x3x3 over F_2: counts and the displayed minimal representatives.
constexpr std::array<std::uint64_t, 8> kCounts234{1, 7, 21, 35, 35, 21, 7, 1};
constexpr std::array<std::string_view, 8> kPercent234{"0.0031", "0.0214", "0.0641", "0.1068",
                                                      "0.1068", "0.0641", "0.0214", "0.0031"};
constexpr std::array<std::string_view, 8> kMinima234{
    ".................................................................................",
    "................................................................................1",
    ".........................................1.11....11.11.............11.11....11.11",
    ".........................................1.11....11.11.............11.11....11.1.",
    ".....1.1...1..1111.1.111.1...1..1111..1..1111111111111.1.111.1.111111111.1.111.1.",
    ".....1.1...1..1111.1.111.1...1..1111..1..1111111111111.1.111.1.111111111.1.111.11",
    ".....1.1...1..1111.1.111.1...1..1111..1...1..1111..1...1.111.1.1111..1...1.1....1",
    ".....1.1...1..1111.1.111.1...1..1111..1...1..1111..1...1.111.1.1111..1...1.1.....",
};

constexpr std::uint64_t kGl3F2 = 168;
constexpr std::uint64_t kGl3F3 = 11232;

template <std::size_t C, std::size_t O>
constexpr bool class_equation_holds(const std::array<std::uint64_t, C>& counts,
                                    const std::array<ExpectedOrbit, O>& orbits, std::uint64_t group) {
  std::array<std::uint64_t, C> sums{};
  for (const auto& o : orbits) {
    if (o.rank >= C || group % o.size != 0) return false;
    sums[o.rank] += o.size;
  }
  return sums == counts;
}

template <std::size_t C>
constexpr std::uint64_t total(const std::array<std::uint64_t, C>& counts) {
  std::uint64_t s = 0;
  for (auto c : counts) s += c;
  return s;
}

static_assert(class_equation_holds(kCounts232, kOrbits232, kGl3F2));
static_assert(class_equation_holds(kCounts332, kOrbits332, kGl3F3));
static_assert(class_equation_holds(kCounts233, kOrbits233, kGl3F2));
static_assert(class_equation_holds(kCounts333, kOrbits333, kGl3F3));
static_assert(total(kCounts232) == 64 && total(kCounts332) == 729 && total(kCounts532) == 15625);
static_assert(total(kCounts233) + 896 == 1024 && total(kCounts333) == 59049);
static_assert(total(kCounts234) + 32640 == 32768);

constexpr std::array<ExpectedShape, 6> kShapes{{
    {2, 3, 2, "3x3 over F_2", kCounts232, 0, kPercent232, kOrbits232, {}, {}},
    {3, 3, 2, "3x3 over F_3", kCounts332, 0, kPercent332, kOrbits332, {}, {}},
    {5, 3, 2, "3x3 over F_5 (minima)", kCounts532, 0, kPercent532, {}, kMinima532, {}},
    {2, 3, 3, "3x3x3 over F_2", kCounts233, 896, kPercent233, kOrbits233, {}, kErrata233},
    {3, 3, 3, "3x3x3 over F_3", kCounts333, 0, kPercent333, kOrbits333, {}, kErrata333},
    {2, 3, 4, "3x3x3x3 over F_2 (minima)", kCounts234, 32640, kPercent234, {}, kMinima234, {}},
}};

}  // namespace

std::span<const ExpectedShape> expected_data() { return kShapes; }

SymTensor tensor_from_flat_string(const Shape& shape, std::string_view text) {
  if (text.size() != shape.full_length()) {
    throw std::invalid_argument("flattened string has length " + std::to_string(text.size()) + ", expected " +
                                std::to_string(shape.full_length()));
  }
  FlatTensor ft{shape, std::vector<Residue>(text.size())};
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.') continue;
    if (c < '0' || c > '9') throw std::invalid_argument(std::string("bad entry character '") + c + "'");
    ft.entries[i] = static_cast<Residue>(c - '0');
  }
  return pack(ft);
}

std::string flat_string(const SymTensor& t) {
  std::string out;
  for (auto e : flatten(t).entries) {
    if (e > 9) throw std::invalid_argument("flat strings support residues up to 9");
    out += e == 0 ? '.' : static_cast<char>('0' + e);
  }
  return out;
}

}  // namespace symrank
