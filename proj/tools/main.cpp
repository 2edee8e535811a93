// aniso: run / check-condition / validate-model / sweep on periodic
// degenerate parabolic-hyperbolic problems.

#include "aniso/config.hpp"
#include "aniso/experiment.hpp"
#include "aniso/presets.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

struct Common {
  std::string config_path;
  std::string model;
  std::string out_dir;
  bool lattice = false;
  bool quiet = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "Experiment config file")->check(CLI::ExistingFile);
  cmd->add_option("--model", c.model, "Model preset (overrides the config)");
  cmd->add_option("--out", c.out_dir, "Output directory");
  cmd->add_flag("--lattice", c.lattice, "Restrict kappa to the torus lattice");
  cmd->add_flag("--quiet", c.quiet, "Suppress summaries on stdout");
}

aniso::ExperimentConfig load(const Common& c) {
  aniso::ExperimentConfig cfg;
  if (!c.config_path.empty()) {
    std::ifstream in(c.config_path);
    std::stringstream text;
    text << in.rdbuf();
    cfg = aniso::parse_config(text.str());
    if (!c.model.empty()) {
      const aniso::ExperimentConfig preset = aniso::default_config(c.model);
      cfg.model = preset.model;
      if (cfg.grid.cells.size() != preset.grid.cells.size()) cfg.grid = preset.grid;
    }
  } else {
    cfg = aniso::default_config(c.model.empty() ? "burgers" : c.model);
  }
  if (!c.out_dir.empty()) cfg.output_dir = c.out_dir;
  if (c.lattice) cfg.condition.lattice = true;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic degenerate parabolic-hyperbolic simulation laboratory"};
  app.require_subcommand(1);

  Common run_opts, check_opts, validate_opts, sweep_opts;
  auto* run = app.add_subcommand("run", "Integrate, audit and summarise decay");
  add_common(run, run_opts);
  auto* check = app.add_subcommand("check-condition", "Estimate omega_delta(lambda) and give a verdict");
  add_common(check, check_opts);
  auto* validate = app.add_subcommand("validate-model", "Check symmetry, PSD, factorization, primitives");
  add_common(validate, validate_opts);
  auto* sweep = app.add_subcommand("sweep", "Repeat run or check-condition over one parameter");
  add_common(sweep, sweep_opts);
  std::string axis;
  std::vector<double> values;
  sweep->add_option("--axis", axis, "cells, cfl, amplitude or lambda_floor")->required();
  sweep->add_option("--values", values, "Comma-separated values")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help exits 0; usage errors share the runtime error code
    return app.exit(e) == 0 ? aniso::kExitOk : aniso::kExitRuntimeError;
  }

  try {
    if (*run) {
      const auto cfg = load(run_opts);
      return aniso::cmd_run(cfg, {run_opts.quiet});
    }
    if (*check) {
      const auto cfg = load(check_opts);
      return aniso::cmd_check_condition(cfg, {check_opts.quiet});
    }
    if (*validate) {
      const auto cfg = load(validate_opts);
      return aniso::cmd_validate_model(cfg, {validate_opts.quiet});
    }
    if (*sweep) {
      const auto cfg = load(sweep_opts);
      return aniso::cmd_sweep(cfg, axis, values, {sweep_opts.quiet});
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return aniso::kExitRuntimeError;
  }
  return aniso::kExitRuntimeError;
}
