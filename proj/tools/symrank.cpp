// symrank: stratify symmetric tensors over F_p by symmetric rank and list
// GL_n(F_p) orbits with their canonical forms.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "symrank/commands.hpp"

namespace {

struct Options {
  symrank::RunConfig cfg;
  std::optional<std::string> memory_limit;
  std::optional<std::string> out_path;
  std::optional<std::string> only;
  std::string literal;
  bool quiet = false;
};

void add_shape_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--p", o.cfg.p, "prime modulus")->capture_default_str();
  cmd->add_option("--n", o.cfg.n, "mode dimension")->capture_default_str();
  cmd->add_option("--k", o.cfg.k, "tensor order")->capture_default_str();
}

void add_run_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--threads", o.cfg.threads, "worker threads, 0 = all cores")->capture_default_str();
  cmd->add_option("--memory-limit", o.memory_limit,
                  "memory budget, e.g. 512M (fallback: SYMRANK_MEM_LIMIT)");
  cmd->add_option("--max-rank", o.cfg.max_rank, "stop after this rank layer")->capture_default_str();
  const std::map<std::string, symrank::OutputFormat> formats{
      {"plain", symrank::OutputFormat::plain},
      {"json", symrank::OutputFormat::json},
      {"csv", symrank::OutputFormat::csv}};
  cmd->add_option("--format", o.cfg.format, "plain, json or csv")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  cmd->add_option("--out", o.out_path, "write the report to this file");
  cmd->add_flag("--quiet", o.quiet, "suppress per-layer progress");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetric rank strata and canonical forms of symmetric tensors over prime fields"};
  app.require_subcommand(1);
  Options o;

  auto* stratify = app.add_subcommand("stratify", "rank distribution of all symmetric tensors");
  add_shape_flags(stratify, o);
  add_run_flags(stratify, o);
  stratify->add_option("--layers", o.cfg.layers_path, "write the rank table to this file");

  auto* orbits = app.add_subcommand("orbits", "orbit table with canonical forms per rank");
  add_shape_flags(orbits, o);
  add_run_flags(orbits, o);
  orbits->add_option("--layers", o.cfg.layers_path, "read the rank table from this file");

  auto* canonical = app.add_subcommand("canonical", "rank, orbit size and canonical form of one tensor");
  add_shape_flags(canonical, o);
  add_run_flags(canonical, o);
  canonical->add_option("tensor", o.literal, "comma-separated free entries or full flattened entries")
      ->required();
  canonical->add_option("--layers", o.cfg.layers_path, "read the rank table from this file");
  canonical->add_flag("--witness", o.cfg.witness, "print a group element reaching the canonical form");

  auto* verify = app.add_subcommand("verify", "recompute the embedded reference tables and compare");
  add_run_flags(verify, o);
  verify->add_option("--only", o.only, "restrict to one shape, given as p,n,k");

  auto* order = app.add_subcommand("group-order", "order of GL_n(F_p)");
  add_shape_flags(order, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : symrank::exit_code::kUsage;
  }

  try {
    o.cfg.memory_budget_bytes = symrank::resolve_memory_budget(o.memory_limit, std::getenv("SYMRANK_MEM_LIMIT"));
    if (o.only) o.cfg.only = symrank::parse_shape_triple(*o.only);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return symrank::exit_code::kUsage;
  }
  o.cfg.progress = !o.quiet;

  std::ofstream file;
  if (o.out_path) {
    file.open(*o.out_path, std::ios::trunc);
    if (!file) {
      std::cerr << "error: cannot open '" << *o.out_path << "' for writing\n";
      return symrank::exit_code::kUsage;
    }
  }
  std::ostream& out = o.out_path ? static_cast<std::ostream&>(file) : std::cout;

  if (*stratify) return symrank::cmd_stratify(o.cfg, out, std::cerr);
  if (*orbits) return symrank::cmd_orbits(o.cfg, out, std::cerr);
  if (*canonical) return symrank::cmd_canonical(o.cfg, o.literal, out, std::cerr);
  if (*verify) return symrank::cmd_verify(o.cfg, symrank::expected_data(), out, std::cerr);
  return symrank::cmd_group_order(o.cfg, out, std::cerr);
}
