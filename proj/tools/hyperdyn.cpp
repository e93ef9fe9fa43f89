// Command-line front end: `hyperdyn run` and `hyperdyn validate`.
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hyperdyn/cli/runner.hpp"

int main(int argc, char** argv) {
  using namespace hyperdyn::cli;
  CLI::App app{"Numerical lab for weighted shifts on l2(C0(R)) and Segal algebras"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string config, out_dir = "hyperdyn-out", backward;
  std::uint64_t seed = 0;
  int refine = 0;

  auto* run = app.add_subcommand("run", "run an experiment and write CSV + report");
  run->add_option("config", config, "experiment config file")->required();
  run->add_option("--out", out_dir, "output directory (HYPERDYN_OUT takes precedence)");
  auto* seed_opt = run->add_option("--seed", seed, "seed for sampled inputs");
  auto* refine_opt =
      run->add_option("--refine", refine, "sampling cells per segment")->check(CLI::PositiveNumber);
  auto* back_opt = run->add_option("--backward-exponent", backward, "alpha exponent in the backward product")
                       ->check(CLI::IsMember({"i-1", "-i"}));

  auto* validate = app.add_subcommand("validate", "parse and validate a config");
  validate->add_option("config", config, "experiment config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Overrides ov;
  if (*seed_opt) ov.seed = seed;
  if (*refine_opt) ov.refine = refine;
  if (*back_opt) ov.backward = hyperdyn::parse_backward_exponent(backward);

  if (validate->parsed()) return validate_command(config, ov, std::cout, std::cerr);
  if (const char* env = std::getenv("HYPERDYN_OUT"); env && *env) out_dir = env;
  return run_command(config, out_dir, ov, std::cout, std::cerr);
}
