#include <algorithm>
#include <map>
#include <random>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "symrank/classifier.hpp"
#include "symrank/error.hpp"
#include "symrank/expected_data.hpp"

using namespace symrank;
using ::testing::ElementsAre;
using ::testing::HasSubstr;
using ::testing::UnorderedElementsAre;

namespace {

struct Fixture {
  RankTable table;
  CompiledGroup group;
};

const Fixture& fixture(unsigned p, unsigned k) {
  static std::map<std::pair<unsigned, unsigned>, Fixture> cache;
  auto it = cache.find({p, k});
  if (it == cache.end()) {
    const Shape s(3, k, p);
    it = cache.emplace(std::pair{p, k}, Fixture{stratify(s), CompiledGroup::build(s, std::uint64_t{1} << 30, 4)})
             .first;
  }
  return it->second;
}

std::vector<std::uint64_t> sizes(const std::vector<OrbitRecord>& records) {
  std::vector<std::uint64_t> out;
  for (const auto& r : records) out.push_back(r.size);
  return out;
}

std::vector<Code> layer_members(const RankTable& t, unsigned r) {
  std::vector<Code> out;
  for (Code c = 0; c < t.shape().code_space(); ++c)
    if (t.rank_of(c) == r) out.push_back(c);
  return out;
}

}  // namespace

TEST(Orbit, Examples) {
  const auto& f = fixture(2, 2);
  const Shape& s = f.table.shape();
  EXPECT_THAT(orbit(SymTensor::zero(s), f.group), ElementsAre(0));
  EXPECT_EQ(orbit(SymTensor(s, 1), f.group).size(), 7u);
  EXPECT_EQ(orbit(SymTensor(s, 3), f.group).size(), 21u);

  const auto& f3 = fixture(2, 3);
  EXPECT_EQ(orbit(SymTensor(f3.table.shape(), 1), f3.group).size(), 7u);
}

TEST(Orbit, CompiledAgreesWithDefinitional) {
  for (auto [p, k] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}, {3u, 3u}}) {
    const auto& f = fixture(p, k);
    const auto elements = enumerate_group(3, FieldSpec(p));
    std::mt19937_64 rng(p + k);
    for (int trial = 0; trial < 4; ++trial) {
      const SymTensor t(f.table.shape(), rng() % f.table.shape().code_space());
      EXPECT_EQ(orbit(t, f.group, 3), orbit(t, elements));
    }
  }
}

TEST(Orbit, PublishedSizeEighteenIsImpossible) {
  const auto& f = fixture(2, 3);
  const auto t = tensor_from_flat_string(f.table.shape(), "..1...1.1....1....1.1...1.1");
  EXPECT_EQ(orbit(t, f.group).size(), 28u);
  EXPECT_NE(168u % 18u, 0u);
  EXPECT_EQ(168u % 28u, 0u);
}

TEST(Decompose, Examples) {
  const auto& f2 = fixture(2, 2);
  const auto r3 = decompose_layer(f2.table, 3, f2.group);
  ASSERT_EQ(r3.size(), 2u);
  EXPECT_EQ(flat_string(r3[0].canonical), ".....1.1.");
  EXPECT_EQ(r3[0].size, 7u);
  EXPECT_EQ(flat_string(r3[1].canonical), "..1.1.1..");
  EXPECT_EQ(r3[1].size, 28u);

  const auto& f3 = fixture(3, 2);
  EXPECT_THAT(sizes(decompose_layer(f3.table, 2, f3.group)), ElementsAre(13, 78));

  const auto& f33 = fixture(3, 3);
  EXPECT_THAT(sizes(decompose_layer(f33.table, 7, f33.group)), ElementsAre(288));
  EXPECT_THAT(sizes(decompose_layer(f33.table, 5, f33.group)),
              UnorderedElementsAre(624, 3744, 2808, 5616, 702, 5616, 5616, 5616));
}

TEST(Decompose, PartitionsTheLayer) {
  for (auto [p, k] : {std::pair{2u, 2u}, {3u, 2u}, {2u, 3u}, {3u, 3u}}) {
    const auto& f = fixture(p, k);
    for (unsigned r = 0; r <= f.table.max_rank(); ++r) {
      const auto records = decompose_layer(f.table, r, f.group);
      std::vector<Code> members;
      Code previous = 0;
      for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        EXPECT_EQ(rec.rank, r);
        if (i > 0) EXPECT_GT(rec.canonical.code(), previous);
        previous = rec.canonical.code();
        const auto o = orbit(rec.canonical, f.group);
        EXPECT_EQ(o.size(), rec.size);
        EXPECT_EQ(o.front(), rec.canonical.code());  // canonical = orbit minimum
        EXPECT_EQ(f.group.order() % rec.size, 0u);   // orbit-stabilizer
        members.insert(members.end(), o.begin(), o.end());
      }
      std::sort(members.begin(), members.end());
      EXPECT_TRUE(std::adjacent_find(members.begin(), members.end()) == members.end());
      EXPECT_EQ(members, layer_members(f.table, r));  // class equation
    }
  }
}

TEST(Decompose, RefusesTruncatedTables) {
  const auto t = stratify(Shape(3, 3, 3), {.max_rank = 3});
  try {
    decompose_layer(t, 2, fixture(3, 3).group);
    FAIL() << "expected TruncatedTable";
  } catch (const TruncatedTable& e) {
    EXPECT_THAT(e.what(), HasSubstr("cannot classify truncated stratification"));
  }
  EXPECT_THROW(classify(t, fixture(3, 3).group), TruncatedTable);
}

TEST(Decompose, IndependentOfThreadCount) {
  const auto& f = fixture(3, 3);
  const auto one = classify(f.table, f.group, 1);
  const auto many = classify(f.table, f.group, 6);
  ASSERT_EQ(one.records.size(), many.records.size());
  for (std::size_t i = 0; i < one.records.size(); ++i) {
    EXPECT_EQ(one.records[i].canonical, many.records[i].canonical);
    EXPECT_EQ(one.records[i].size, many.records[i].size);
  }
}

TEST(Classify, ReportTotals) {
  const auto& f = fixture(3, 3);
  const auto report = classify(f.table, f.group);
  EXPECT_EQ(report.records.size(), 26u);
  EXPECT_EQ(report.group_order, 11232u);
  EXPECT_EQ(report.layer_counts, f.table.layer_counts());
  std::vector<std::uint64_t> per_rank(report.layer_counts.size(), 0);
  for (const auto& r : report.records) per_rank[r.rank] += r.size;
  EXPECT_EQ(per_rank, report.layer_counts);
}

TEST(Canonical, Examples) {
  const auto& f = fixture(2, 2);
  const Shape& s = f.table.shape();
  EXPECT_EQ(canonical_form(SymTensor::zero(s), f.group).code(), 0u);
  for (Code c : layer_members(f.table, 2)) EXPECT_EQ(canonical_form(SymTensor(s, c), f.group).code(), 3u);

  const auto& f3 = fixture(2, 3);
  const auto top = tensor_from_flat_string(f3.table.shape(), ".....1.1...1...1...1.1.....");
  EXPECT_EQ(canonical_form(top, f3.group), top);
  std::vector<std::size_t> ones;
  const auto entries = flatten(top).entries;
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (entries[i]) ones.push_back(i + 1);
  EXPECT_THAT(ones, ElementsAre(6, 8, 12, 16, 20, 22));
}

TEST(Canonical, WitnessReachesCanonicalForm) {
  std::mt19937_64 rng(23);
  for (auto [p, k] : {std::pair{2u, 3u}, {3u, 3u}, {3u, 2u}}) {
    const auto& f = fixture(p, k);
    for (int trial = 0; trial < 30; ++trial) {
      const SymTensor t(f.table.shape(), rng() % f.table.shape().code_space());
      const auto cf = canonicalize(t, f.group);
      EXPECT_EQ(act(GroupElement(cf.witness, FieldSpec(p)), t), cf.canonical);
      EXPECT_EQ(cf.orbit_size, orbit(t, f.group).size());
      EXPECT_LE(cf.canonical.code(), t.code());
    }
  }
}

TEST(Canonical, StableAlongOrbitsAndIdempotent) {
  for (auto [p, k] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 3u}}) {
    const auto& f = fixture(p, k);
    const auto elements = enumerate_group(3, FieldSpec(p));
    std::mt19937_64 rng(p * 7 + k);
    const Code space = f.table.shape().code_space();
    for (int trial = 0; trial < 40; ++trial) {
      const SymTensor t(f.table.shape(), space <= 1024 ? trial * (space / 40) : rng() % space);
      const auto c = canonical_form(t, f.group);
      EXPECT_EQ(canonical_form(c, f.group), c);
      const auto moved = act(elements[rng() % elements.size()], t);
      EXPECT_EQ(canonical_form(moved, f.group), c);
    }
  }
}

TEST(Classify, CrossCheckPasses) {
  EXPECT_NO_THROW(cross_check_compiled(fixture(3, 3).group, 100));
  EXPECT_NO_THROW(cross_check_compiled(fixture(2, 2).group, 100, 42));
}

TEST(MatrixRank, Examples) {
  const Shape s(3, 2, 2);
  EXPECT_EQ(matrix_rank(SymTensor::zero(s)), 0u);
  EXPECT_EQ(matrix_rank(SymTensor(s, 1)), 1u);
  EXPECT_EQ(matrix_rank(tensor_from_flat_string(s, "..1.1.1..")), 3u);
  // the all-ones matrix J has matrix rank 1 and symmetric rank 1
  EXPECT_EQ(matrix_rank(SymTensor(s, 63)), 1u);
  EXPECT_THROW(matrix_rank(SymTensor(Shape(3, 3, 2), 1)), std::invalid_argument);
}

TEST(MatrixRank, InvariantUnderCongruence) {
  const auto& f = fixture(2, 2);
  for (std::size_t i = 0; i < f.group.size(); ++i) {
    std::vector<Residue> digits(6);
    for (Code c = 0; c < 64; ++c) {
      decode_digits(f.table.shape(), c, digits);
      ASSERT_EQ(matrix_rank(SymTensor(f.table.shape(), f.group.apply(i, digits))), matrix_rank(SymTensor(f.table.shape(), c)));
    }
  }
}

TEST(RankContrast, Maxima) {
  const auto r2 = rank_contrast_report(fixture(2, 2).table);
  EXPECT_EQ(r2.max_symmetric_rank, 3u);
  EXPECT_EQ(r2.max_matrix_rank, 3u);
  // alternating forms such as x12 = x21 = 1 have matrix rank 2 but symmetric rank 3
  EXPECT_GT(r2.occupancy[3][2], 0u);

  const auto r3 = rank_contrast_report(fixture(3, 2).table);
  EXPECT_EQ(r3.max_symmetric_rank, 4u);
  EXPECT_EQ(r3.max_matrix_rank, 3u);
  const auto r5 = rank_contrast_report(stratify(Shape(3, 2, 5)));
  EXPECT_EQ(r5.max_symmetric_rank, 4u);
  EXPECT_EQ(r5.max_matrix_rank, 3u);

  std::uint64_t total = 0;
  for (const auto& row : r3.occupancy)
    for (auto c : row) total += c;
  EXPECT_EQ(total, 729u);
  // symmetric rank is never below matrix rank
  for (std::size_t s = 0; s < r3.occupancy.size(); ++s)
    for (std::size_t m = s + 1; m < r3.occupancy[s].size(); ++m) EXPECT_EQ(r3.occupancy[s][m], 0u);

  EXPECT_THROW(rank_contrast_report(fixture(2, 3).table), std::invalid_argument);
}
