#include "symrank/commands.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

#include "symrank/classifier.hpp"
#include "symrank/error.hpp"
#include "symrank/group_action.hpp"
#include "symrank/report.hpp"

namespace symrank {

std::uint64_t parse_byte_size(std::string_view text) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr == text.data()) throw std::invalid_argument("invalid byte size '" + std::string(text) + "'");
  std::string_view suffix(ptr, static_cast<std::size_t>(text.data() + text.size() - ptr));
  if (!suffix.empty() && (suffix.back() == 'B' || suffix.back() == 'b')) suffix.remove_suffix(1);
  if (suffix.empty()) return value;
  if (suffix.size() == 1) {
    switch (suffix.front()) {
      case 'K': case 'k': return value << 10;
      case 'M': case 'm': return value << 20;
      case 'G': case 'g': return value << 30;
      default: break;
    }
  }
  throw std::invalid_argument("invalid byte size '" + std::string(text) + "'");
}

std::uint64_t resolve_memory_budget(const std::optional<std::string>& flag, const char* env_value) {
  if (flag) return parse_byte_size(*flag);
  if (env_value != nullptr && *env_value != '\0') return parse_byte_size(env_value);
  return kDefaultMemoryBudget;
}

std::array<unsigned, 3> parse_shape_triple(std::string_view text) {
  std::array<unsigned, 3> out{};
  std::size_t start = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto end = i < 2 ? text.find(',', start) : text.size();
    if (end == std::string_view::npos) throw std::invalid_argument("expected p,n,k");
    const auto token = text.substr(start, end - start);
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out[i]);
    if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
      throw std::invalid_argument("expected p,n,k");
    }
    start = end + 1;
  }
  return out;
}

namespace {

/// Maps exceptions to exit codes and prints the message.
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ResourceExhausted& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kResource;
  } catch (const TruncatedTable& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kResource;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return exit_code::kResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kUsage;
  }
}

Shape shape_of(const RunConfig& cfg) { return Shape(cfg.n, cfg.k, cfg.p); }

StratifyLimits limits_of(const RunConfig& cfg, std::ostream& err) {
  StratifyLimits limits;
  limits.memory_budget_bytes = cfg.memory_budget_bytes;
  limits.max_rank = cfg.max_rank;
  limits.threads = cfg.threads;
  if (cfg.progress) {
    limits.on_layer = [&err](unsigned r, std::uint64_t count) {
      err << "[stratify] rank " << r << ": " << count << " tensors\n";
    };
  }
  return limits;
}

/// Loads the rank table from cfg.layers_path when present, otherwise
/// stratifies in memory.
RankTable obtain_table(const RunConfig& cfg, std::ostream& err) {
  const Shape shape = shape_of(cfg);
  if (cfg.layers_path) {
    RankTable table = load_rank_table(*cfg.layers_path);
    if (!(table.shape() == shape)) {
      throw std::invalid_argument("rank table '" + *cfg.layers_path + "' holds " + table.shape().to_string() +
                                  ", requested " + shape.to_string());
    }
    return table;
  }
  return stratify(shape, limits_of(cfg, err));
}

void emit(const Report& report, OutputFormat format, std::ostream& out) {
  switch (format) {
    case OutputFormat::plain: out << render_plain(report); break;
    case OutputFormat::json: out << render_json(report); break;
    case OutputFormat::csv: out << render_csv(report); break;
  }
}

std::string matrix_string(const SquareMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    s += i ? " [" : "[";
    for (std::size_t j = 0; j < m.size(); ++j) s += (j ? " " : "") + std::to_string(m(i, j));
    s += "]";
  }
  return s + "]";
}

using OrbitKey = std::tuple<unsigned, std::uint64_t, Code>;

/// Compares one embedded shape against a fresh computation. Returns the first
/// mismatch, or an empty string.
std::string verify_shape(const ExpectedShape& expected, const RunConfig& cfg, std::ostream& err) {
  const Shape shape = expected.shape();
  RunConfig local = cfg;
  local.p = expected.p;
  local.n = expected.n;
  local.k = expected.k;
  local.layers_path.reset();
  const RankTable table = stratify(shape, limits_of(local, err));
  if (table.truncated()) return "stratification truncated at rank " + std::to_string(table.max_rank());

  const auto& counts = table.layer_counts();
  for (std::size_t r = 0; r < std::max(counts.size(), expected.layer_counts.size()); ++r) {
    const std::uint64_t want = r < expected.layer_counts.size() ? expected.layer_counts[r] : 0;
    const std::uint64_t got = r < counts.size() ? counts[r] : 0;
    if (want != got) {
      return "layer count rank " + std::to_string(r) + ": expected " + std::to_string(want) + ", computed " +
             std::to_string(got);
    }
  }
  if (table.sentinel_count() != expected.sentinel_count) {
    return "sentinel count: expected " + std::to_string(expected.sentinel_count) + ", computed " +
           std::to_string(table.sentinel_count());
  }
  const std::uint64_t total = shape.code_space();
  for (std::size_t r = 0; r < expected.percentages.size() && r < counts.size(); ++r) {
    const auto got = format_percent(counts[r], total, percent_precision(shape.k()));
    if (got != expected.percentages[r]) {
      return "percentage rank " + std::to_string(r) + ": expected " + std::string(expected.percentages[r]) +
             ", computed " + got;
    }
  }
  for (std::size_t r = 0; r < expected.layer_minima.size(); ++r) {
    const SymTensor want = tensor_from_flat_string(shape, expected.layer_minima[r]);
    const SymTensor got = layer_minimum(table, static_cast<unsigned>(r));
    if (!(want == got)) {
      return "layer minimum rank " + std::to_string(r) + ": expected " + std::string(expected.layer_minima[r]) +
             ", computed " + flat_string(got);
    }
  }
  if (!expected.orbits.empty()) {
    const auto group = CompiledGroup::build(shape, cfg.memory_budget_bytes, cfg.threads);
    const auto report = classify(table, group, cfg.threads);
    std::vector<OrbitKey> want;
    for (const auto& o : expected.orbits) {
      want.emplace_back(o.rank, o.size, tensor_from_flat_string(shape, o.canonical).code());
    }
    std::vector<OrbitKey> got;
    for (const auto& rec : report.records) got.emplace_back(rec.rank, rec.size, rec.canonical.code());
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    for (std::size_t i = 0; i < std::max(want.size(), got.size()); ++i) {
      if (i >= want.size() || i >= got.size() || want[i] != got[i]) {
        auto describe = [&](const std::vector<OrbitKey>& v) -> std::string {
          if (i >= v.size()) return "<none>";
          const auto& [r, size, code] = v[i];
          return "(rank " + std::to_string(r) + ", size " + std::to_string(size) + ", " +
                 flat_string(SymTensor(shape, code)) + ")";
        };
        return "orbit row " + std::to_string(i) + ": expected " + describe(want) + ", computed " + describe(got);
      }
    }
  }
  return {};
}

}  // namespace

int cmd_stratify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RankTable table = stratify(shape_of(cfg), limits_of(cfg, err));
    if (cfg.layers_path) save_rank_table(table, *cfg.layers_path);
    emit(make_report(table), cfg.format, out);
    return exit_code::kOk;
  });
}

int cmd_orbits(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RankTable table = obtain_table(cfg, err);
    if (table.truncated()) throw TruncatedTable("cannot classify truncated stratification");
    const auto group = CompiledGroup::build(table.shape(), cfg.memory_budget_bytes, cfg.threads);
    emit(make_report(classify(table, group, cfg.threads)), cfg.format, out);
    return exit_code::kOk;
  });
}

int cmd_canonical(const RunConfig& cfg, std::string_view literal, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Shape shape = shape_of(cfg);
    const SymTensor t = parse_tensor_literal(shape, literal);
    const RankTable table = obtain_table(cfg, err);
    const auto group = CompiledGroup::build(shape, cfg.memory_budget_bytes, cfg.threads);
    const auto result = canonicalize(t, group, cfg.threads);
    const auto rank = table.rank_of(t.code());
    const bool reached = rank != RankTable::kUnreached;

    if (cfg.format == OutputFormat::json) {
      nlohmann::ordered_json j;
      j["p"] = shape.p();
      j["n"] = shape.n();
      j["k"] = shape.k();
      j["rank"] = reached ? nlohmann::ordered_json(rank) : nlohmann::ordered_json(nullptr);
      j["truncated"] = table.truncated();
      j["orbit_size"] = result.orbit_size;
      j["canonical_digits"] = result.canonical.digits();
      if (cfg.witness) {
        const auto& w = result.witness;
        std::vector<std::vector<Residue>> rows(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
          for (std::size_t c = 0; c < w.size(); ++c) rows[i].push_back(w(i, c));
        }
        j["witness"] = rows;
      }
      out << j.dump(2) << "\n";
      return exit_code::kOk;
    }
    std::string rank_text;
    if (reached) {
      rank_text = std::to_string(rank);
    } else if (table.truncated()) {
      rank_text = "greater than " + std::to_string(table.max_rank()) + " (not reached before cutoff)";
    } else {
      rank_text = "no symmetric decomposition";
    }
    if (cfg.format == OutputFormat::csv) {
      out << "rank,orbit_size,canonical_flattened\n"
          << (reached ? std::to_string(rank) : std::string()) << "," << result.orbit_size << ",";
      const auto entries = flatten(result.canonical).entries;
      for (std::size_t i = 0; i < entries.size(); ++i) out << (i ? " " : "") << entries[i];
      out << "\n";
      return exit_code::kOk;
    }
    out << "tensor:          " << render_tensor(t) << "\n"
        << "symmetric rank:  " << rank_text << "\n"
        << "orbit size:      " << result.orbit_size << "\n"
        << "canonical form:  " << render_tensor(result.canonical) << "\n";
    if (cfg.witness) out << "witness:         " << matrix_string(result.witness) << "\n";
    return exit_code::kOk;
  });
}

int cmd_verify(const RunConfig& cfg, std::span<const ExpectedShape> expected, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    bool all_pass = true;
    bool any_run = false;
    for (const auto& e : expected) {
      if (cfg.only && *cfg.only != std::array{e.p, e.n, e.k}) continue;
      any_run = true;
      const std::string label = std::to_string(e.p) + "," + std::to_string(e.n) + "," + std::to_string(e.k);
      std::string mismatch;
      try {
        mismatch = verify_shape(e, cfg, err);
      } catch (const ResourceExhausted& ex) {
        out << "SKIP " << label << " (" << e.source << "): " << ex.what() << "\n";
        continue;
      }
      if (mismatch.empty()) {
        out << "PASS " << label << " (" << e.source << ")\n";
      } else {
        all_pass = false;
        out << "FAIL " << label << " (" << e.source << "): " << mismatch << "\n";
      }
      for (const auto& note : e.errata) out << "     erratum: " << note << "\n";
    }
    if (!any_run) throw std::invalid_argument("no embedded data for the requested shape");
    return all_pass ? exit_code::kOk : exit_code::kMismatch;
  });
}

int cmd_group_order(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    FieldSpec field(cfg.p);
    out << group_order(cfg.n, field.modulus()) << "\n";
    return exit_code::kOk;
  });
}

}  // namespace symrank
