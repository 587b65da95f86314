#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "schwarz/config.hpp"

namespace schwarz::cli {

/// Process exit codes. Mathematical divergence is kept apart from
/// operational failure.
enum ExitCode : int { kConverged = 0, kError = 1, kDiverged = 2, kStalled = 3 };

int exit_code(Verdict v);

struct RunOptions {
  std::string config_path;
  std::string out_dir = ".";
  bool quiet = false;
};

/// Writes <out>/history.csv and <out>/summary.txt.
int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err);

/// Summary block for a finished run.
std::string summary_text(const RunConfig& cfg, const IterationHistory& h);

struct TauOptions {
  double L = 2.0;
  double L1 = 1.7;
  double L2 = 1.9;
  double p = 1.0;
  double q = 50.0;
  std::optional<double> rho;
};

/// Prints tau1, tau2, tau and the verdict; exit 0 when tau < 1, 2 otherwise.
int cmd_tau(const TauOptions& opts, std::ostream& out, std::ostream& err);

struct SweepOptions {
  std::string config_path;
  std::string out_dir = ".";
  bool quiet = false;
};

/// Cartesian product of the sweep axes, one row per grid point in
/// <out>/sweep.csv. Columns: one per axis, then
/// verdict,iterations,rate,rate_double,oracle_rate,error.
int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err);

struct ValidateOptions {
  std::string config_path;
  std::uint64_t seed = ValidationOptions{}.seed;
};

/// Exit 0 when the config satisfies every assumption and partition rule,
/// 2 with one violation per line otherwise, 1 when it does not parse.
int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace schwarz::cli
