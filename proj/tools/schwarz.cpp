// schwarz: run, sweep and validate overlapping Schwarz experiments, and
// evaluate the closed-form two-subdomain convergence factor.

#include <iostream>

#include <CLI11.hpp>

#include "schwarz/cli.hpp"

int main(int argc, char** argv) {
  using namespace schwarz::cli;

  CLI::App app{"Overlapping Schwarz experiments for 1D semilinear elliptic and parabolic problems"};
  app.require_subcommand(1);

  RunOptions run_opts;
  auto* run = app.add_subcommand("run", "Run one Schwarz iteration and write history.csv and summary.txt");
  run->add_option("--config", run_opts.config_path, "JSON config file")->required();
  run->add_option("--out", run_opts.out_dir, "Output directory");
  run->add_flag("--quiet", run_opts.quiet, "Do not print the summary");

  TauOptions tau_opts;
  double rho = 0.0;
  auto* tau = app.add_subcommand("tau", "Closed-form factors tau1, tau2 and tau for u'' - 3u' - 4u = f");
  tau->add_option("--L", tau_opts.L, "Domain length")->capture_default_str();
  tau->add_option("--L1", tau_opts.L1, "Left end of the second subdomain")->capture_default_str();
  tau->add_option("--L2", tau_opts.L2, "Right end of the first subdomain")->capture_default_str();
  tau->add_option("--p", tau_opts.p, "Robin parameter at L2")->capture_default_str();
  tau->add_option("--q", tau_opts.q, "Robin parameter at L1")->capture_default_str();
  auto* rho_opt = tau->add_option("--rho", rho, "Scale applied to both p and q");

  SweepOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "Run every point of the config's sweep grid into sweep.csv");
  sweep->add_option("--config", sweep_opts.config_path, "JSON config file")->required();
  sweep->add_option("--out", sweep_opts.out_dir, "Output directory");
  sweep->add_flag("--quiet", sweep_opts.quiet, "Do not print per-point progress");

  ValidateOptions validate_opts;
  auto* validate = app.add_subcommand("validate", "Check model assumptions and partition rules");
  validate->add_option("--config", validate_opts.config_path, "JSON config file")->required();
  validate->add_option("--seed", validate_opts.seed, "Seed of the randomized Lipschitz check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  if (*run) return cmd_run(run_opts, std::cout, std::cerr);
  if (*tau) {
    if (*rho_opt) tau_opts.rho = rho;
    return cmd_tau(tau_opts, std::cout, std::cerr);
  }
  if (*sweep) return cmd_sweep(sweep_opts, std::cout, std::cerr);
  if (*validate) return cmd_validate(validate_opts, std::cout, std::cerr);
  return kError;
}
