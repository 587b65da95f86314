#include "schwarz/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

namespace schwarz {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::converged:
      return "converged";
    case Verdict::diverged:
      return "diverged";
    case Verdict::stalled:
      return "stalled";
  }
  return "?";
}

std::string to_string(NormKind n) {
  switch (n) {
    case NormKind::sup:
      return "sup";
    case NormKind::weighted_sup:
      return "weighted_sup";
    case NormKind::laplace_seminorm:
      return "laplace_seminorm";
  }
  return "?";
}

std::vector<std::string> SchwarzConfig::validate(const ValidationOptions& problem_checks) const {
  std::vector<std::string> out = schwarz::validate(problem, problem_checks);
  for (auto& v : validate_partition(partition)) out.push_back(std::move(v));
  for (auto& v : transmission.validate()) out.push_back(std::move(v));
  if (std::abs(partition.length() - problem.length) > 1e-12 * std::max(1.0, problem.length))
    out.push_back("config: partition length differs from the problem domain length");
  if (max_iters < 1) out.push_back("config: max_iters must be >= 1");
  if (!(stop_tol > 0.0)) out.push_back("config: stop_tol must be positive");
  if (!(alpha > 0.0)) out.push_back("config: alpha must be positive");
  if (!(h > 0.0)) out.push_back("config: h must be positive");
  if (problem.mode == Mode::parabolic && !(dt > 0.0)) out.push_back("config: dt must be positive");
  return out;
}

std::vector<double> IterationHistory::E() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.E);
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Runs body(0..n-1) on up to `threads` workers. The exception of the lowest
/// failing index is rethrown after all workers join.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> errors(n);
  auto guarded = [&](std::size_t i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const std::size_t workers = std::min(threads, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) guarded(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) guarded(i);
      });
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void check_config(const SchwarzConfig& cfg, Mode mode) {
  if (cfg.problem.mode != mode)
    throw std::invalid_argument("schwarz: problem mode is " + to_string(cfg.problem.mode));
  const auto violations = cfg.validate();
  if (!violations.empty()) {
    std::ostringstream os;
    os << "schwarz: invalid configuration:";
    for (const auto& v : violations) os << "\n  " << v;
    throw std::invalid_argument(os.str());
  }
}

/// Interface feeding one side of subdomain l, or nullopt on the outer boundary.
std::optional<Interface> side_interface(const Partition& p, std::size_t l, int normal) {
  const Interval& s = p.subdomain(l);
  if (p.on_outer_boundary(normal < 0 ? s.left : s.right)) return std::nullopt;
  const auto found = p.interfaces_of(l, normal);
  if (found.size() != 1)
    throw GeometryError("schwarz: interior endpoint of a subdomain needs exactly one donor");
  return found.front();
}

SchwarzError wrap(const std::exception& e, std::size_t k, std::size_t l) {
  std::ostringstream os;
  os << "iteration " << k << ", subdomain " << l + 1 << ": " << e.what();
  return SchwarzError(os.str(), k, l);
}

/// Rate bookkeeping and stopping rules shared by both modes.
class Tracker {
public:
  Tracker(const SchwarzConfig& cfg, IterationHistory& history)
      : m_cfg(cfg), m_history(history), m_start(Clock::now()), m_last(m_start) {}

  void push(std::size_t k, std::vector<double> norms, bool sum_aggregate) {
    IterationRecord r;
    r.k = k;
    r.argmax = static_cast<std::size_t>(
        std::distance(norms.begin(), std::max_element(norms.begin(), norms.end())));
    if (sum_aggregate) {
      r.E = 0.0;
      for (double v : norms) r.E += v;
    } else {
      r.E = norms[r.argmax];
    }
    r.subdomain_norms = std::move(norms);
    const auto now = Clock::now();
    r.wall_seconds = std::chrono::duration<double>(now - m_last).count();
    m_last = now;
    m_E.push_back(r.E);
    r.rate = running_rate();
    r.rate_double = r.rate * r.rate;
    m_history.records.push_back(std::move(r));
  }

  /// Applies the stopping rules to the latest record.
  bool done() {
    const std::size_t k = m_E.size() - 1;
    const double E = m_E.back();
    if (k == 0) return false;
    if (!std::isfinite(E)) return finish(Verdict::diverged, true);
    if (E <= m_cfg.stop_tol) return finish(Verdict::converged, false);
    if (k > 1 && m_E[1] > 0.0 && E > m_cfg.divergence_factor * m_E[1])
      return finish(Verdict::diverged, true);
    if (static_cast<int>(k) >= m_cfg.max_iters) {
      const RateFit fit = trailing_fit();
      return finish(fit.points > 0 && !fit.zero_hit && fit.per_iteration > 1.0 ? Verdict::diverged
                                                                               : Verdict::stalled,
                    false);
    }
    return false;
  }

private:
  RateFit trailing_fit() const {
    std::vector<double> finite;
    for (double v : m_E)
      if (std::isfinite(v)) finite.push_back(v);
    if (finite.size() < 3) return {};
    return fit_contraction_rate(finite, m_cfg.fit_window);
  }

  double running_rate() const {
    const std::size_t k = m_E.size() - 1;
    if (k == 0) return 0.0;
    if (k >= 2) {
      const RateFit fit = fit_contraction_rate(m_E, m_cfg.fit_window);
      if (fit.zero_hit) return 0.0;
      if (std::isfinite(fit.per_iteration)) return fit.per_iteration;
    }
    return m_E[k - 1] > 0.0 ? m_E[k] / m_E[k - 1] : 0.0;
  }

  bool finish(Verdict v, bool guard) {
    m_history.verdict = v;
    m_history.guard_triggered = guard;
    m_history.iterations = m_E.size() - 1;
    m_history.fitted = trailing_fit();
    m_history.wall_seconds = seconds_since(m_start);
    return true;
  }

  const SchwarzConfig& m_cfg;
  IterationHistory& m_history;
  std::vector<double> m_E;
  Clock::time_point m_start;
  Clock::time_point m_last;
};

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return std::isfinite(m) ? m : std::numeric_limits<double>::infinity();
}

}  // namespace

IterationHistory run_elliptic(const SchwarzConfig& cfg) {
  check_config(cfg, Mode::elliptic);
  const ProblemSpec& problem = cfg.problem;
  const Grid grid = build_grid(cfg.partition, cfg.h);
  const Field ref = reference_solve(problem, grid, cfg.picard);
  const std::size_t count = cfg.partition.size();

  IterationHistory history;
  history.norm = NormKind::sup;

  std::vector<std::optional<Interface>> sides[2];
  for (std::size_t l = 0; l < count; ++l) {
    sides[0].push_back(side_interface(cfg.partition, l, -1));
    sides[1].push_back(side_interface(cfg.partition, l, +1));
  }

  const auto restrict = [&](const Field& global, SubGrid s) {
    return Field(global.begin() + static_cast<std::ptrdiff_t>(s.first),
                 global.begin() + static_cast<std::ptrdiff_t>(s.last + 1));
  };

  std::vector<Field> current(count);
  for (std::size_t l = 0; l < count; ++l) {
    const SubGrid s = grid.subgrids[l];
    if (cfg.initial_guess.kind == InitialGuess::Kind::reference) {
      current[l] = restrict(ref, s);
    } else {
      current[l].resize(s.size());
      for (std::size_t j = 0; j < s.size(); ++j)
        current[l][j] = cfg.initial_guess(grid.x(s.first + j), problem.length);
    }
  }

  Tracker tracker(cfg, history);
  const auto measure = [&](std::size_t k) {
    std::vector<double> norms(count);
    std::vector<Field> errors;
    for (std::size_t l = 0; l < count; ++l) {
      const SubGrid s = grid.subgrids[l];
      Field e(s.size());
      for (std::size_t j = 0; j < s.size(); ++j) e[j] = current[l][j] - ref[s.first + j];
      norms[l] = max_abs(e);
      if (cfg.record_fields) errors.push_back(std::move(e));
    }
    if (cfg.record_fields) history.elliptic_errors.push_back(std::move(errors));
    tracker.push(k, std::move(norms), false);
  };
  measure(0);

  const bool analytic_guess = cfg.initial_guess.kind != InitialGuess::Kind::reference;
  for (std::size_t k = 1;; ++k) {
    std::vector<Field> next(count);
    parallel_for(count, cfg.threads, [&](std::size_t l) {
      try {
        const SubGrid s = grid.subgrids[l];
        BoundaryCondition bc[2];
        for (int side = 0; side < 2; ++side) {
          const auto& gamma = sides[side][l];
          if (!gamma) {
            const double x = side == 0 ? 0.0 : problem.length;
            bc[side] = BoundaryCondition::dirichlet(problem.boundary(x, 0.0));
            continue;
          }
          const double datum =
              k == 1 && analytic_guess
                  ? initial_guess_data(cfg.initial_guess, *gamma, cfg.transmission, problem)
                  : extract(cfg.transmission, problem, grid, grid.subgrids[gamma->donor],
                            current[gamma->donor], *gamma);
          bc[side] = receiver_condition(cfg.transmission, *gamma, datum);
        }
        next[l] =
            solve_semilinear_elliptic(problem, grid, s, bc[0], bc[1], cfg.picard, current[l]).u;
      } catch (const std::exception& e) {
        throw wrap(e, k, l);
      }
    });
    current = std::move(next);
    measure(k);
    if (tracker.done()) break;
  }
  return history;
}

IterationHistory run_parabolic(const SchwarzConfig& cfg) {
  check_config(cfg, Mode::parabolic);
  const ProblemSpec& problem = cfg.problem;
  const Grid grid = build_grid(cfg.partition, cfg.h, TimeRequest{problem.horizon, cfg.dt});
  const TimeAxis& axis = *grid.time;
  const SpaceTimeField ref = reference_solve_transient(problem, grid, cfg.picard);
  const std::size_t count = cfg.partition.size();
  const std::size_t levels = axis.levels();

  IterationHistory history;
  const bool dirichlet = cfg.transmission.kind() == TransmissionSpec::Kind::dirichlet;
  history.norm = dirichlet ? NormKind::weighted_sup : NormKind::laplace_seminorm;
  if (std::exp(-cfg.alpha * axis.horizon) > 1e-8)
    history.warnings.push_back("horizon: exp(-alpha T) > 1e-8, truncation of (0, inf) is coarse");

  std::optional<LaplaceSeminorm> seminorm;
  if (!dirichlet) seminorm.emplace(axis, cfg.alpha, cfg.seminorm);

  std::vector<std::optional<Interface>> sides[2];
  for (std::size_t l = 0; l < count; ++l) {
    sides[0].push_back(side_interface(cfg.partition, l, -1));
    sides[1].push_back(side_interface(cfg.partition, l, +1));
  }

  std::vector<SpaceTimeField> current(count);
  std::vector<Field> initial(count);
  for (std::size_t l = 0; l < count; ++l) {
    const SubGrid s = grid.subgrids[l];
    current[l] = SpaceTimeField(s.size(), levels);
    initial[l].resize(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
      const double x = grid.x(s.first + j);
      initial[l][j] = problem.initial(x);
      for (std::size_t m = 0; m < levels; ++m)
        current[l].at(j, m) = cfg.initial_guess.kind == InitialGuess::Kind::reference
                                  ? ref.at(s.first + j, m)
                                  : cfg.initial_guess(x, problem.length);
    }
  }

  Tracker tracker(cfg, history);
  const auto measure = [&](std::size_t k) {
    std::vector<double> norms(count);
    std::vector<SpaceTimeField> errors(cfg.record_fields ? count : 0);
    parallel_for(count, cfg.threads, [&](std::size_t l) {
      const SubGrid s = grid.subgrids[l];
      SpaceTimeField e(s.size(), levels);
      for (std::size_t m = 0; m < levels; ++m)
        for (std::size_t j = 0; j < s.size(); ++j)
          e.at(j, m) = current[l].at(j, m) - ref.at(s.first + j, m);
      double v = dirichlet ? weighted_sup_norm(e, axis, cfg.alpha)
                           : integrated_seminorm(e, grid.h, *seminorm);
      norms[l] = std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
      if (cfg.record_fields) errors[l] = std::move(e);
    });
    if (cfg.record_fields) history.parabolic_errors.push_back(std::move(errors));
    tracker.push(k, std::move(norms), !dirichlet);
  };
  measure(0);

  const bool analytic_guess = cfg.initial_guess.kind != InitialGuess::Kind::reference;
  for (std::size_t k = 1;; ++k) {
    std::vector<SpaceTimeField> next(count);
    parallel_for(count, cfg.threads, [&](std::size_t l) {
      try {
        const SubGrid s = grid.subgrids[l];
        BoundaryTrace trace[2];
        for (int side = 0; side < 2; ++side) {
          const auto& gamma = sides[side][l];
          BoundaryTrace& tr = trace[side];
          if (!gamma) {
            const double x = side == 0 ? 0.0 : problem.length;
            tr.kind = BoundaryCondition::Kind::dirichlet;
            tr.values.resize(levels);
            for (std::size_t m = 0; m < levels; ++m) tr.values[m] = problem.boundary(x, axis.t(m));
            continue;
          }
          tr.kind = cfg.transmission.condition_kind();
          tr.p = cfg.transmission.effective_p(gamma->receiver, gamma->donor);
          if (k == 1 && analytic_guess) {
            tr.values.assign(
                levels, initial_guess_data(cfg.initial_guess, *gamma, cfg.transmission, problem));
          } else {
            tr.values = extract_trace(cfg.transmission, problem, grid, grid.subgrids[gamma->donor],
                                      current[gamma->donor], *gamma);
          }
        }
        next[l] = solve_semilinear_parabolic(problem, grid, s, trace[0], trace[1], initial[l],
                                             cfg.picard);
      } catch (const std::exception& e) {
        throw wrap(e, k, l);
      }
    });
    current = std::move(next);
    measure(k);
    if (tracker.done()) break;
  }
  return history;
}

IterationHistory run(const SchwarzConfig& cfg) {
  return cfg.problem.mode == Mode::elliptic ? run_elliptic(cfg) : run_parabolic(cfg);
}

void write_history_csv(std::ostream& os, const IterationHistory& history) {
  os << "k,l,norm,E_k,rate,rate_double,verdict,wall_s\n";
  const std::string norm = to_string(history.norm);
  char buf[64];
  const auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (std::size_t i = 1; i < history.records.size(); ++i) {
    const auto& r = history.records[i];
    const bool last = i + 1 == history.records.size();
    os << r.k << ',' << r.argmax + 1 << ',' << norm << ',' << num(r.E) << ',' << num(r.rate) << ','
       << num(r.rate_double) << ',' << (last ? to_string(history.verdict) : "running") << ','
       << num(r.wall_seconds) << '\n';
  }
}

}  // namespace schwarz
