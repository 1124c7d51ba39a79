// Acceptance run: one PASS/FAIL line per criterion on stdout, mismatch
// details on stderr. Exit status is non-zero when a gating criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "symrank/classifier.hpp"
#include "symrank/expected_data.hpp"
#include "symrank/report.hpp"

using namespace symrank;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> details;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      details.push_back(what);
    }
  }
};

template <typename T>
std::string join(const T& values) {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (const auto& v : values) {
    os << (first ? "" : ",") << v;
    first = false;
  }
  os << "]";
  return os.str();
}

const ExpectedShape& reference(unsigned p, unsigned k) {
  for (const auto& e : expected_data())
    if (e.p == p && e.n == 3 && e.k == k) return e;
  throw std::logic_error("no reference data");
}

struct Computed {
  RankTable table;
  std::optional<CompiledGroup> group;
  std::optional<ClassificationReport> classes;
};

std::map<std::pair<unsigned, unsigned>, Computed>& cache() {
  static std::map<std::pair<unsigned, unsigned>, Computed> c;
  return c;
}

Computed& stratified(unsigned p, unsigned k) {
  auto& c = cache();
  auto it = c.find({p, k});
  if (it == c.end()) it = c.emplace(std::pair{p, k}, Computed{stratify(Shape(3, k, p), {.threads = 0}), {}, {}}).first;
  return it->second;
}

Computed& classified(unsigned p, unsigned k) {
  auto& c = stratified(p, k);
  if (!c.classes) {
    c.group = CompiledGroup::build(c.table.shape(), std::uint64_t{1} << 30, 0);
    c.classes = classify(c.table, *c.group, 0);
  }
  return c;
}

const std::pair<unsigned, unsigned> kDistributionShapes[] = {{2, 2}, {3, 2}, {5, 2}, {2, 3}, {3, 3}, {2, 4}};
const std::pair<unsigned, unsigned> kOrbitShapes[] = {{2, 2}, {3, 2}, {2, 3}, {3, 3}};

Outcome rank_distributions() {
  Outcome o;
  const auto start = Clock::now();
  for (auto [p, k] : kDistributionShapes) {
    const auto& table = stratified(p, k).table;
    const auto& e = reference(p, k);
    const std::vector<std::uint64_t> want(e.layer_counts.begin(), e.layer_counts.end());
    o.expect(table.layer_counts() == want && table.sentinel_count() == e.sentinel_count && !table.truncated(),
             table.shape().to_string() + ": got " + join(table.layer_counts()) + " + " +
                 std::to_string(table.sentinel_count()) + " sentinels, want " + join(want) + " + " +
                 std::to_string(e.sentinel_count));
  }
  const double secs = seconds_since(start);
  o.expect(secs < 30.0, "six stratifications took " + std::to_string(secs) + " s");
  char buf[96];
  std::snprintf(buf, sizeof buf, "six shapes, %.2f s", secs);
  o.summary = buf;
  return o;
}

Outcome orbit_tables() {
  Outcome o;
  const auto start = Clock::now();
  for (auto [p, k] : kOrbitShapes) {
    const auto& classes = *classified(p, k).classes;
    const auto& e = reference(p, k);
    std::vector<std::pair<unsigned, std::uint64_t>> got, published;
    for (const auto& r : classes.records) got.emplace_back(r.rank, r.size);
    for (const auto& row : e.orbits) published.emplace_back(row.rank, row.printed_size ? row.printed_size : row.size);
    std::sort(got.begin(), got.end());
    std::sort(published.begin(), published.end());
    if (got != published) {
      std::ostringstream os;
      os << classes.shape.to_string() << ": " << got.size() << " computed orbits vs " << published.size()
         << " published rows;";
      std::vector<std::pair<unsigned, std::uint64_t>> only_got, only_pub;
      std::set_difference(got.begin(), got.end(), published.begin(), published.end(), std::back_inserter(only_got));
      std::set_difference(published.begin(), published.end(), got.begin(), got.end(), std::back_inserter(only_pub));
      for (auto [r, s] : only_pub) os << " published (" << r << "," << s << ") not computed;";
      for (auto [r, s] : only_got) os << " computed (" << r << "," << s << ") not published;";
      o.expect(false, os.str());
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "four orbit tables against published sizes, %.2f s", seconds_since(start));
  o.summary = buf;
  return o;
}

Outcome canonical_forms() {
  Outcome o;
  std::size_t cells = 0;
  for (auto [p, k] : kOrbitShapes) {
    const auto& classes = *classified(p, k).classes;
    const auto& e = reference(p, k);
    std::vector<std::pair<unsigned, std::string>> got, published;
    for (const auto& r : classes.records) got.emplace_back(r.rank, render_tensor(r.canonical));
    for (const auto& row : e.orbits)
      published.emplace_back(row.rank, render_tensor(tensor_from_flat_string(classes.shape, row.canonical)));
    std::sort(got.begin(), got.end());
    std::sort(published.begin(), published.end());
    cells += published.size();
    o.expect(got == published, classes.shape.to_string() + ": rendered canonical forms differ");
    for (const auto& r : classes.records) {
      const auto orb = orbit(r.canonical, *classified(p, k).group);
      o.expect(orb.front() == r.canonical.code(), "canonical form is not the orbit minimum");
    }
  }
  const auto& top = classified(3, 3).classes->records.back();
  const std::string want = "[· · 1 · 1 · 1 · · · 1 · 1 · 2 · 2 1 1 · · · 2 1 · 1 ·]";
  o.expect(top.rank == 7 && render_tensor(top.canonical) == want,
           "rank-7 form over F_3 renders as " + render_tensor(top.canonical));
  o.summary = std::to_string(cells) + " canonical-form cells";
  return o;
}

Outcome layer_minima() {
  Outcome o;
  std::size_t count = 0;
  for (auto [p, k] : {std::pair{5u, 2u}, {2u, 4u}}) {
    const auto& table = stratified(p, k).table;
    const auto& e = reference(p, k);
    for (std::size_t r = 0; r < e.layer_minima.size(); ++r) {
      ++count;
      const auto got = layer_minimum(table, static_cast<unsigned>(r));
      const auto want = tensor_from_flat_string(table.shape(), e.layer_minima[r]);
      o.expect(render_tensor(got) == render_tensor(want),
               table.shape().to_string() + " rank " + std::to_string(r) + ": got " + flat_string(got) + ", want " +
                   std::string(e.layer_minima[r]));
    }
  }
  o.summary = std::to_string(count) + " layer minima (ranks 0 through max)";
  return o;
}

Outcome rank_contrast() {
  Outcome o;
  const std::tuple<unsigned, unsigned, unsigned> want[] = {{2, 3, 3}, {3, 4, 3}, {5, 4, 3}};
  std::ostringstream summary;
  for (auto [p, sym, mat] : want) {
    const auto c = rank_contrast_report(stratified(p, 2).table);
    summary << "p=" << p << " sym " << c.max_symmetric_rank << " mat " << c.max_matrix_rank << "; ";
    o.expect(c.max_symmetric_rank == sym && c.max_matrix_rank == mat,
             "p=" + std::to_string(p) + ": max symmetric " + std::to_string(c.max_symmetric_rank) + ", max matrix " +
                 std::to_string(c.max_matrix_rank));
  }
  o.summary = summary.str();
  o.summary.resize(o.summary.size() - 2);
  return o;
}

Outcome group_orders() {
  Outcome o;
  o.expect(group_order(3, 2) == 168, "formula p=2");
  o.expect(group_order(3, 3) == 11232, "formula p=3");
  o.expect(group_order(3, 5) == 1488000, "formula p=5");
  const auto n2 = enumerate_group(3, FieldSpec(2)).size();
  const auto n3 = enumerate_group(3, FieldSpec(3)).size();
  o.expect(n2 == 168, "enumerated " + std::to_string(n2) + " over F_2");
  o.expect(n3 == 11232, "enumerated " + std::to_string(n3) + " over F_3");
  o.summary = "168, 11232, 1488000 by formula; counted " + std::to_string(n2) + ", " + std::to_string(n3);
  return o;
}

Outcome properties() {
  Outcome o;
  std::mt19937_64 rng(2024);

  for (auto [p, k] : kOrbitShapes) {
    const auto& c = classified(p, k);
    std::vector<std::uint64_t> sums(c.table.layer_counts().size(), 0);
    for (const auto& r : c.classes->records) {
      sums[r.rank] += r.size;
      o.expect(c.group->order() % r.size == 0, c.table.shape().to_string() + ": orbit size " +
                                                   std::to_string(r.size) + " does not divide the group order");
    }
    o.expect(sums == c.table.layer_counts(), c.table.shape().to_string() + ": class equation fails");
  }

  // homomorphism, compiled/definitional agreement and rank invariance, exhaustive at 3x3 over F_2
  {
    const Shape s(3, 2, 2);
    const FieldSpec f(2);
    const auto g = enumerate_group(3, f);
    const auto& table = stratified(2, 2).table;
    std::vector<CompiledAction> compiled;
    for (const auto& e : g) compiled.push_back(compile_action(e, s));
    bool agree = true, invariant = true, homomorphic = true;
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (Code c = 0; c < 64; ++c) {
        const Code image = compiled[i].apply(c);
        agree &= image == act(g[i], SymTensor(s, c)).code();
        invariant &= table.rank_of(image) == table.rank_of(c);
      }
      for (std::size_t j = 0; j < g.size(); ++j) {
        const auto ab = compile_action(GroupElement(multiply(g[i].matrix(), g[j].matrix(), f), f), s);
        for (Code c = 0; c < 64; ++c) homomorphic &= ab.apply(c) == compiled[i].apply(compiled[j].apply(c));
      }
    }
    o.expect(agree, "compiled action differs from mode products");
    o.expect(invariant, "rank not invariant under GL_3(F_2)");
    o.expect(homomorphic, "action is not a homomorphism");
  }

  // sampled elsewhere
  for (auto [p, k] : {std::pair{3u, 2u}, {2u, 3u}, {3u, 3u}, {2u, 4u}}) {
    const Shape s(3, k, p);
    const FieldSpec f(p);
    const auto g = enumerate_group(3, f);
    const auto& table = stratified(p, k).table;
    bool ok = true;
    for (int trial = 0; trial < 300; ++trial) {
      const auto& a = g[rng() % g.size()];
      const auto& b = g[rng() % g.size()];
      const SymTensor t(s, rng() % s.code_space());
      const auto at = act(a, t);
      ok &= act(GroupElement(multiply(a.matrix(), b.matrix(), f), f), t) == act(a, act(b, t));
      ok &= table.rank_of(at.code()) == table.rank_of(t.code());
    }
    o.expect(ok, s.to_string() + ": sampled homomorphism or rank invariance fails");
  }

  // pack/flatten round trip and code order = flattened lexical order
  for (auto [p, k] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}}) {
    const Shape s(3, k, p);
    std::vector<std::vector<unsigned>> flat;
    bool round_trip = true;
    for (Code c = 0; c < s.code_space(); ++c) {
      const auto ft = flatten(SymTensor(s, c));
      round_trip &= pack(ft).code() == c;
      flat.push_back(oracle::flatten(c, p, 3, k));
      round_trip &= std::equal(ft.entries.begin(), ft.entries.end(), flat.back().begin(), flat.back().end());
    }
    o.expect(round_trip, s.to_string() + ": pack/flatten round trip fails");
    bool ordered = true;
    for (Code a = 0; a < s.code_space(); ++a)
      for (Code b = 0; b < s.code_space(); ++b)
        ordered &= std::lexicographical_compare(flat[a].begin(), flat[a].end(), flat[b].begin(), flat[b].end()) ==
                   (a < b);
    o.expect(ordered, s.to_string() + ": code order differs from flattened lexical order");
  }
  for (auto [p, k] : {std::pair{3u, 3u}, {2u, 4u}, {3u, 4u}}) {
    const Shape s(3, k, p);
    bool ok = true;
    for (int trial = 0; trial < 500; ++trial) {
      const Code c = rng() % s.code_space();
      ok &= pack(flatten(SymTensor(s, c))).code() == c;
    }
    o.expect(ok, s.to_string() + ": sampled round trip fails");
  }

  const auto brute = oracle::brute_force_ranks_f2_3x3();
  bool oracle_ok = true;
  for (Code c = 0; c < 64; ++c) oracle_ok &= brute[c] == stratified(2, 2).table.rank_of(c);
  o.expect(oracle_ok, "brute-force rank oracle disagrees on 3x3 over F_2");

  o.summary = "class equation, divisibility, homomorphism, rank invariance, round trip, order, rank oracle";
  return o;
}

Outcome stretch() {
  Outcome o;
  const auto start = Clock::now();
  const auto table = stratify(Shape(3, 4, 3), {.memory_budget_bytes = std::uint64_t{1} << 30, .threads = 0});
  const double secs = seconds_since(start);
  const auto dim = oracle::span_dimension(oracle::simple_tensors(3, 3, 4), 3);
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << "3x3x3x3 over F_3 completed in " << secs << " s: max rank " << table.max_rank()
     << ", layers " << join(table.layer_counts()) << ", " << table.sentinel_count()
     << " without decomposition; simple tensors span " << dim << " of 15 dimensions";
  o.summary = os.str();
  o.expect(!table.truncated(), "table truncated");
  o.expect(table.max_rank() >= 13, "max rank " + std::to_string(table.max_rank()) + " < 13");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    bool gating;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "rank distributions", true, rank_distributions},
      {2, "orbit tables (rank, size) as published", true, orbit_tables},
      {3, "canonical forms", true, canonical_forms},
      {4, "layer minima", true, layer_minima},
      {5, "rank contrast", true, rank_contrast},
      {6, "group orders", true, group_orders},
      {7, "property suites", true, properties},
      {8, "stretch: 3x3x3x3 over F_3 max rank >= 13 (not gating)", false, stretch},
  };
  int gating_failures = 0;
  for (const auto& c : criteria) {
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.summary = std::string("exception: ") + e.what();
    }
    std::cout << (out.pass ? "PASS" : "FAIL") << "  " << c.id << "  " << c.name << ": " << out.summary << std::endl;
    for (const auto& d : out.details) std::cerr << "        " << d << "\n";
    if (!out.pass && c.gating) ++gating_failures;
  }
  return gating_failures == 0 ? 0 : 1;
}
