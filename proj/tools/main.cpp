#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rrfcov/commands.hpp"
#include "rrfcov/errors.hpp"

namespace {

void add_common_flags(CLI::App* cmd, rrfcov::CommandOptions& options,
                      bool needs_config = true) {
  auto* config =
      cmd->add_option("--config", options.config_path, "JSON experiment config");
  if (needs_config) config->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", options.out_dir, "output directory")
      ->default_val(".");
  cmd->add_option("--seed", options.seed, "override the experiment seed");
  cmd->add_option("--trials", options.trials, "override the trial count");
  cmd->add_option("--threads", options.threads,
                  "worker threads (env RC_THREADS)")
      ->envname("RC_THREADS");
  cmd->add_flag("--stamp", options.stamp,
                "record wall-clock timestamps in the manifest");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Voronoi coverage planning for shift-tolerant directional sensors"};
  app.require_subcommand(1);

  rrfcov::CommandOptions options;
  int (*run)(const rrfcov::CommandOptions&) = nullptr;

  auto* solve = app.add_subcommand("solve", "orient one deployment");
  add_common_flags(solve, options);
  solve->callback([&] { run = rrfcov::cmd_solve; });

  auto* compare =
      app.add_subcommand("compare", "random / greedy / robustified comparison");
  add_common_flags(compare, options);
  compare->callback([&] { run = rrfcov::cmd_compare; });

  auto* sweep = app.add_subcommand("sweep", "parameter sweep");
  add_common_flags(sweep, options);
  sweep->add_option("--param", options.parameter,
                    "m | theta_h | rho_max | rho_min | r_outer | r_inner")
      ->required();
  sweep->add_option("--values", options.values, "comma-separated values")
      ->required()
      ->delimiter(',');
  sweep->callback([&] { run = rrfcov::cmd_sweep; });

  auto* validate =
      app.add_subcommand("validate", "run the oracle agreement checks");
  add_common_flags(validate, options, /*needs_config=*/false);
  validate->add_option("--fixtures", options.fixtures,
                       "randomized area fixtures")
      ->check(CLI::PositiveNumber);
  validate->add_option("--samples", options.samples,
                       "Monte Carlo samples per fixture")
      ->check(CLI::PositiveNumber);
  validate->add_option("--tolerance", options.tolerance_scale,
                       "scale on the area agreement bound (0 = exact match)")
      ->check(CLI::NonNegativeNumber);
  validate->add_option("--case1-form", options.case1_form,
                       "closed form checked on interior footprints")
      ->check(CLI::IsMember({"difference", "span"}));
  validate->callback([&] { run = rrfcov::cmd_validate; });

  auto* render = app.add_subcommand("render", "solution file to SVG");
  render->add_option("--solution", options.solution_path, "solution.json path")
      ->required()
      ->check(CLI::ExistingFile);
  render->add_option("--svg", options.out_svg, "output SVG path");
  render->add_option("--out", options.out_dir, "output directory")
      ->default_val(".");
  render->callback([&] { run = rrfcov::cmd_render; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    return run(options);
  } catch (const rrfcov::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const rrfcov::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
