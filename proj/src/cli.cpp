#include "schwarz/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace schwarz::cli {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string json_cell(const nlohmann::json& v) {
  if (v.is_number()) return fmt(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  return f;
}

}  // namespace

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::converged:
      return kConverged;
    case Verdict::diverged:
      return kDiverged;
    case Verdict::stalled:
      return kStalled;
  }
  return kError;
}

std::string summary_text(const RunConfig& cfg, const IterationHistory& h) {
  std::ostringstream os;
  os << "problem:      " << cfg.problem_id << " (" << to_string(cfg.schwarz.problem.mode) << ")\n"
     << "subdomains:   " << cfg.schwarz.partition.size() << "\n"
     << "transmission: " << cfg.schwarz.transmission.describe() << "\n"
     << "norm:         " << to_string(h.norm) << "\n"
     << "verdict:      " << to_string(h.verdict) << (h.guard_triggered ? " (guard)" : "") << "\n"
     << "fitted rate:  " << fmt(h.fitted.per_iteration) << " per iteration, "
     << fmt(h.fitted.per_double) << " per double sweep\n";
  if (const auto tau = oracle_rate(cfg)) os << "oracle rate:  " << fmt(*tau) << " per double sweep\n";
  os << "iterations:   " << h.iterations << "\n"
     << "final E:      " << fmt(h.records.empty() ? 0.0 : h.records.back().E) << "\n"
     << "wall time:    " << fmt(h.wall_seconds) << " s\n";
  for (const auto& w : h.warnings) os << "warning:      " << w << "\n";
  return os.str();
}

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig cfg = load_config(opts.config_path);
    const IterationHistory h = run(cfg.schwarz);
    ensure_dir(opts.out_dir);
    {
      auto csv = open_out(fs::path(opts.out_dir) / "history.csv");
      write_history_csv(csv, h);
    }
    const std::string summary = summary_text(cfg, h);
    open_out(fs::path(opts.out_dir) / "summary.txt") << summary;
    if (!opts.quiet) out << summary;
    return exit_code(h.verdict);
  } catch (const std::exception& e) {
    err << "schwarz run: " << e.what() << "\n";
    return kError;
  }
}

int cmd_tau(const TauOptions& opts, std::ostream& out, std::ostream& err) {
  oracle::AnalyticCase c{opts.L, opts.L1, opts.L2, opts.p, opts.q, opts.rho};
  try {
    const oracle::TauFactors t = oracle::tau_factors(c);
    out << "tau1    " << fmt(t.tau1) << "\n"
        << "tau2    " << fmt(t.tau2) << "\n"
        << "tau     " << fmt(t.tau) << "\n"
        << "verdict " << (t.tau < 1.0 ? "converge" : "diverge") << "\n";
    return t.tau < 1.0 ? kConverged : kDiverged;
  } catch (const std::exception& e) {
    err << "schwarz tau: " << e.what() << "\n";
    return kError;
  }
}

int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
  RunConfig base;
  try {
    base = load_config(opts.config_path);
  } catch (const std::exception& e) {
    err << "schwarz sweep: " << e.what() << "\n";
    return kError;
  }
  if (base.sweep.empty()) {
    err << "schwarz sweep: config has no sweep axes\n";
    return kError;
  }

  std::ofstream csv;
  try {
    ensure_dir(opts.out_dir);
    csv = open_out(fs::path(opts.out_dir) / "sweep.csv");
  } catch (const std::exception& e) {
    err << "schwarz sweep: " << e.what() << "\n";
    return kError;
  }
  for (const auto& axis : base.sweep) csv << csv_field(axis.name) << ",";
  csv << "verdict,iterations,rate,rate_double,oracle_rate,error\n";

  // Odometer over the axes, last axis fastest.
  std::vector<std::size_t> idx(base.sweep.size(), 0);
  nlohmann::json doc = base.document;
  doc.erase("sweep");
  for (;;) {
    nlohmann::json point = doc;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      const auto& axis = base.sweep[a];
      csv << csv_field(json_cell(axis.values[idx[a]])) << ",";
    }
    try {
      for (std::size_t a = 0; a < idx.size(); ++a)
        point = with_value(point, base.sweep[a].name, base.sweep[a].values[idx[a]]);
      const RunConfig cfg = parse_config(point);
      const auto tau = oracle_rate(cfg);
      const IterationHistory h = run(cfg.schwarz);
      csv << to_string(h.verdict) << "," << h.iterations << "," << fmt(h.fitted.per_iteration) << ","
          << fmt(h.fitted.per_double) << "," << (tau ? fmt(*tau) : "") << ",\n";
      if (!opts.quiet) {
        out << "point";
        for (std::size_t a = 0; a < idx.size(); ++a)
          out << " " << base.sweep[a].name << "=" << json_cell(base.sweep[a].values[idx[a]]);
        out << ": " << to_string(h.verdict) << " after " << h.iterations << " iterations\n";
      }
    } catch (const std::exception& e) {
      csv << "error,,,,," << csv_field(e.what()) << "\n";
      if (!opts.quiet) out << "point failed: " << e.what() << "\n";
    }

    std::size_t a = idx.size();
    while (a > 0) {
      --a;
      if (++idx[a] < base.sweep[a].values.size()) break;
      idx[a] = 0;
      if (a == 0) return kConverged;
    }
  }
}

int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err) {
  std::vector<std::string> violations;
  try {
    const RunConfig cfg = load_config(opts.config_path);
    ValidationOptions checks;
    checks.seed = opts.seed;
    violations = cfg.schwarz.validate(checks);
  } catch (const PartitionRuleError& e) {
    violations.push_back(e.what());
  } catch (const std::exception& e) {
    err << "schwarz validate: " << e.what() << "\n";
    return kError;
  }
  if (violations.empty()) {
    out << "ok\n";
    return 0;
  }
  for (const auto& v : violations) out << v << "\n";
  return 2;
}

}  // namespace schwarz::cli
