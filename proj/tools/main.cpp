#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace subzeta::cli;
  CLI::App app{"subzeta: congruence counts, local zeta functions and exponential sums along p-adic submanifolds"};
  app.require_subcommand(1);

  RunOptions opts;
  unsigned max_level = 0;
  subzeta::u64 budget = 0;
  std::vector<std::pair<std::string, CLI::App*>> subs;
  const std::map<std::string, std::string> help = {
      {"count", "N_m table for m = 0..max_level"},
      {"poincare", "Poincare series, rational reconstruction and the identity with Z(t)"},
      {"zeta", "twisted zeta coefficient tables, Z(t) and candidate-pole check"},
      {"expsum", "direct exponential sums E(u p^-m)"},
      {"sps-verify", "stationary-phase formula against direct sums"},
      {"smooth", "smoothing certificates and bad-reduction decompositions"},
      {"delta-check", "delta_r regularization limit"},
      {"decay", "decay of |E| and N_m against the pole data"},
      {"probe", "critical-locus suspects at max_level"}};
  for (const std::string& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--spec", opts.spec_path, "JSON problem specification")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
    sub->add_option("--max-level", max_level, "Override max_level from the spec")->check(CLI::Range(1u, 40u));
    sub->add_option("--workers", opts.workers, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
    sub->add_option("--budget", budget, "Override budgets.points from the spec")->check(CLI::PositiveNumber);
    sub->add_option("--seed", opts.seed, "Seed for randomized spot checks")->capture_default_str();
    subs.emplace_back(name, sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kSchema;
  }

  for (const auto& [name, sub] : subs) {
    if (!sub->parsed()) continue;
    if (sub->count("--max-level")) opts.max_level = max_level;
    if (sub->count("--budget")) opts.budget = budget;
    return run(name, opts, std::cout, std::cerr);
  }
  return kSchema;
}
