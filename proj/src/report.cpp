#include "symrank/report.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "symrank/group_action.hpp"

namespace symrank {

namespace {

std::uint64_t total_tensors(const Report& r) {
  return Shape(r.n, r.k, r.p).code_space();
}

std::string header(const Report& r) {
  std::ostringstream os;
  os << Shape(r.n, r.k, r.p).to_string() << ": " << total_tensors(r) << " symmetric tensors, |GL_" << r.n
     << "(F_" << r.p << ")| = " << r.group_order << "\n";
  return os.str();
}

}  // namespace

Report make_report(const RankTable& table) {
  const Shape& s = table.shape();
  Report r;
  r.p = s.p();
  r.n = s.n();
  r.k = s.k();
  r.group_order = group_order(s.n(), s.p());
  r.layer_counts = table.layer_counts();
  r.sentinel_count = table.sentinel_count();
  r.truncated = table.truncated();
  return r;
}

Report make_report(const ClassificationReport& classification) {
  const Shape& s = classification.shape;
  Report r;
  r.p = s.p();
  r.n = s.n();
  r.k = s.k();
  r.group_order = classification.group_order;
  r.layer_counts = classification.layer_counts;
  r.sentinel_count = classification.sentinel_count;
  for (const auto& rec : classification.records) {
    r.orbits.push_back({rec.rank, rec.size, rec.canonical.digits()});
  }
  return r;
}

int percent_precision(unsigned k) { return k == 3 ? 2 : 4; }

std::string format_percent(std::uint64_t count, std::uint64_t total, int precision) {
  const long double pct = 100.0L * static_cast<long double>(count) / static_cast<long double>(total);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lf", precision, pct);
  return buf;
}

std::string render_tensor(const SymTensor& t) {
  const auto entries = flatten(t).entries;
  std::string out;
  if (t.shape().k() == 2) {
    const std::size_t n = t.shape().n();
    for (std::size_t i = 0; i < n; ++i) {
      out += i ? " [" : "[";
      for (std::size_t j = 0; j < n; ++j) out += (j ? " " : "") + std::to_string(entries[i * n + j]);
      out += "]";
    }
    return out;
  }
  out = "[";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out += ' ';
    out += entries[i] == 0 ? std::string("·") : std::to_string(entries[i]);
  }
  return out + "]";
}

std::string render_plain(const Report& r) {
  std::ostringstream os;
  os << header(r);
  const std::uint64_t total = total_tensors(r);
  if (r.orbits.empty()) {
    const int precision = percent_precision(r.k);
    for (std::size_t rank = 0; rank < r.layer_counts.size(); ++rank) {
      os << "rank " << rank << ": " << r.layer_counts[rank] << " ("
         << format_percent(r.layer_counts[rank], total, precision) << "%)\n";
    }
    if (r.truncated) {
      os << "truncated at rank " << r.layer_counts.size() - 1 << ": " << r.sentinel_count
         << " tensors not reached\n";
    } else {
      os << "no symmetric decomposition: " << r.sentinel_count << " ("
         << format_percent(r.sentinel_count, total, precision) << "%)\n";
    }
    return os.str();
  }
  const Shape shape(r.n, r.k, r.p);
  std::size_t size_width = std::string("orbit size").size();
  for (const auto& o : r.orbits) size_width = std::max(size_width, std::to_string(o.size).size());
  os << "rank  " << std::left << std::setw(static_cast<int>(size_width)) << "orbit size"
     << "  canonical form\n";
  for (const auto& o : r.orbits) {
    os << std::left << std::setw(4) << o.rank << "  " << std::setw(static_cast<int>(size_width)) << o.size << "  "
       << render_tensor(SymTensor::from_digits(shape, o.canonical_digits)) << "\n";
  }
  return os.str();
}

std::string render_csv(const Report& r) {
  std::ostringstream os;
  const std::uint64_t total = total_tensors(r);
  if (r.orbits.empty()) {
    const int precision = percent_precision(r.k);
    os << "rank,count,percent\n";
    for (std::size_t rank = 0; rank < r.layer_counts.size(); ++rank) {
      os << rank << "," << r.layer_counts[rank] << "," << format_percent(r.layer_counts[rank], total, precision)
         << "\n";
    }
    os << (r.truncated ? "unreached," : "none,") << r.sentinel_count << ","
       << format_percent(r.sentinel_count, total, precision) << "\n";
    return os.str();
  }
  const Shape shape(r.n, r.k, r.p);
  os << "rank,orbit_size,canonical_flattened\n";
  for (const auto& o : r.orbits) {
    const auto entries = flatten(SymTensor::from_digits(shape, o.canonical_digits)).entries;
    os << o.rank << "," << o.size << ",";
    for (std::size_t i = 0; i < entries.size(); ++i) os << (i ? " " : "") << entries[i];
    os << "\n";
  }
  return os.str();
}

std::string render_json(const Report& r) {
  nlohmann::ordered_json j;
  j["p"] = r.p;
  j["n"] = r.n;
  j["k"] = r.k;
  j["group_order"] = r.group_order;
  j["layer_counts"] = r.layer_counts;
  j["sentinel_count"] = r.sentinel_count;
  j["truncated"] = r.truncated;
  j["orbits"] = nlohmann::ordered_json::array();
  for (const auto& o : r.orbits) {
    j["orbits"].push_back({{"rank", o.rank}, {"size", o.size}, {"canonical_digits", o.canonical_digits}});
  }
  return j.dump(2) + "\n";
}

Report parse_json_report(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    Report r;
    r.p = j.at("p").get<unsigned>();
    r.n = j.at("n").get<unsigned>();
    r.k = j.at("k").get<unsigned>();
    r.group_order = j.at("group_order").get<std::uint64_t>();
    r.layer_counts = j.at("layer_counts").get<std::vector<std::uint64_t>>();
    r.sentinel_count = j.at("sentinel_count").get<std::uint64_t>();
    r.truncated = j.value("truncated", false);
    for (const auto& o : j.at("orbits")) {
      r.orbits.push_back({o.at("rank").get<unsigned>(), o.at("size").get<std::uint64_t>(),
                          o.at("canonical_digits").get<std::vector<Residue>>()});
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed report JSON: ") + e.what());
  }
}

}  // namespace symrank
