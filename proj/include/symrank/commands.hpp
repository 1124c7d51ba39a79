#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "symrank/expected_data.hpp"
#include "symrank/stratifier.hpp"

namespace symrank {

enum class OutputFormat { plain, json, csv };

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kMismatch = 1;
inline constexpr int kUsage = 2;
inline constexpr int kResource = 3;
}  // namespace exit_code

struct RunConfig {
  unsigned p = 2;
  unsigned n = 3;
  unsigned k = 2;
  unsigned threads = 0;
  std::uint64_t memory_budget_bytes = kDefaultMemoryBudget;
  unsigned max_rank = kDefaultMaxRank;
  OutputFormat format = OutputFormat::plain;
  /// Rank table file: written by stratify, read by orbits/canonical.
  std::optional<std::string> layers_path;
  /// verify: restrict to a single (p, n, k).
  std::optional<std::array<unsigned, 3>> only;
  bool witness = false;
  /// Per-layer progress lines on the error stream.
  bool progress = true;
};

/// Parses "1048576", "64K", "16M", "2G" (binary multiples).
std::uint64_t parse_byte_size(std::string_view text);

/// --memory-limit wins, then the SYMRANK_MEM_LIMIT value, then the default.
std::uint64_t resolve_memory_budget(const std::optional<std::string>& flag, const char* env_value);

/// Parses "p,n,k".
std::array<unsigned, 3> parse_shape_triple(std::string_view text);

int cmd_stratify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_orbits(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_canonical(const RunConfig& cfg, std::string_view literal, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::span<const ExpectedShape> expected, std::ostream& out,
               std::ostream& err);
int cmd_group_order(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace symrank
