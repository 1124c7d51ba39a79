#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "symrank/classifier.hpp"
#include "symrank/stratifier.hpp"

namespace symrank {

struct ReportOrbit {
  unsigned rank = 0;
  std::uint64_t size = 0;
  std::vector<Residue> canonical_digits;

  bool operator==(const ReportOrbit&) const = default;
};

/// Everything the plain, CSV and JSON renderings are produced from. An empty
/// orbit list means a rank-distribution report.
struct Report {
  unsigned p = 2;
  unsigned n = 3;
  unsigned k = 2;
  std::uint64_t group_order = 0;
  std::vector<std::uint64_t> layer_counts;
  std::uint64_t sentinel_count = 0;
  bool truncated = false;
  std::vector<ReportOrbit> orbits;

  bool operator==(const Report&) const = default;
};

Report make_report(const RankTable& table);
Report make_report(const ClassificationReport& classification);

/// Decimal places used for this order's percentages (2 for k = 3, else 4).
int percent_precision(unsigned k);
std::string format_percent(std::uint64_t count, std::uint64_t total, int precision);

/// k = 2: bracketed rows "[0 0 0] [0 0 1] [0 1 1]"; k >= 3: flattened entries
/// with a middle dot for zero, "[· · 1 ...]".
std::string render_tensor(const SymTensor& t);

std::string render_plain(const Report& report);
std::string render_csv(const Report& report);
std::string render_json(const Report& report);
/// Inverse of render_json; throws std::invalid_argument on schema errors.
Report parse_json_report(std::string_view text);

}  // namespace symrank
