#include "schwarz/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace schwarz {

std::vector<double> SpaceTimeField::series(std::size_t i) const {
  std::vector<double> s(m_levels);
  for (std::size_t m = 0; m < m_levels; ++m) s[m] = at(i, m);
  return s;
}

double robin_combination(std::span<const double> u, std::size_t j, int normal, double h,
                         double a, double p) {
  const auto back = [&](std::size_t k) {
    return normal > 0 ? u[j - k] : u[j + k];
  };
  const double du_dn = (kOutward0 * u[j] + kOutward1 * back(1) + kOutward2 * back(2)) / h;
  return a * du_dn + p * u[j];
}

BandedSystem assemble_elliptic(const ProblemSpec& spec, const Grid& grid, SubGrid sub,
                               const BoundaryCondition& left, const BoundaryCondition& right,
                               std::span<const double> frozen_u, const StepTerms& step) {
  const std::size_t n = sub.size();
  if (n < 3) throw GeometryError("assembly: a subgrid needs at least 3 nodes");
  if (frozen_u.size() != n) throw std::invalid_argument("assembly: frozen field has wrong size");
  if (!step.extra_rhs.empty() && step.extra_rhs.size() != n)
    throw std::invalid_argument("assembly: extra rhs has wrong size");

  const double h = grid.h;
  const double h2 = h * h;
  BandedSystem sys;
  sys.sub.assign(n, 0.0);
  sys.main.assign(n, 0.0);
  sys.super.assign(n, 0.0);
  sys.rhs.assign(n, 0.0);

  double max_b = 0.0;
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double x = grid.x(sub.first + j);
    const double a_minus = spec.diffusion(x - 0.5 * h);
    const double a_plus = spec.diffusion(x + 0.5 * h);
    const double b = spec.advection(x);
    const double c = spec.reaction(x) + step.reaction_shift;
    max_b = std::max(max_b, std::abs(b));
    sys.sub[j] = -a_minus / h2 - b / (2.0 * h);
    sys.main[j] = (a_minus + a_plus) / h2 + c;
    sys.super[j] = -a_plus / h2 + b / (2.0 * h);
    double r = spec.rhs(x, step.t, frozen_u[j]);
    if (!step.extra_rhs.empty()) r += step.extra_rhs[j];
    sys.rhs[j] = r;
  }

  sys.dominance_threshold =
      max_b > 0.0 ? 2.0 * spec.ellipticity / max_b : std::numeric_limits<double>::infinity();
  sys.dominance_warning = h > sys.dominance_threshold;

  // Robin row a du/dn + p u = value, then eliminate the far stencil entry with
  // the neighbouring interior row.
  const auto robin_row = [&](std::size_t j, std::size_t j1, const BoundaryCondition& bc,
                             int normal) {
    const double a = spec.diffusion(grid.x(sub.first + j));
    const double alpha = kOutward0 * a / h + bc.p;
    const double beta = kOutward1 * a / h;
    const double gamma = kOutward2 * a / h;
    const double pivot = normal < 0 ? sys.super[j1] : sys.sub[j1];
    if (pivot == 0.0) throw SingularSystemError("assembly: cannot eliminate Robin stencil entry");
    if (normal < 0) {
      const double factor = gamma / pivot;
      sys.main[j] = alpha - factor * sys.sub[j1];
      sys.super[j] = beta - factor * sys.main[j1];
      sys.rhs[j] = bc.value - factor * sys.rhs[j1];
    } else {
      const double factor = gamma / pivot;
      sys.main[j] = alpha - factor * sys.super[j1];
      sys.sub[j] = beta - factor * sys.main[j1];
      sys.rhs[j] = bc.value - factor * sys.rhs[j1];
    }
  };

  if (left.kind == BoundaryCondition::Kind::dirichlet) {
    sys.main[0] = 1.0;
    sys.rhs[0] = left.value;
  } else {
    robin_row(0, 1, left, -1);
  }
  if (right.kind == BoundaryCondition::Kind::dirichlet) {
    sys.main[n - 1] = 1.0;
    sys.rhs[n - 1] = right.value;
  } else {
    robin_row(n - 1, n - 2, right, +1);
  }
  return sys;
}

Field solve_banded(const BandedSystem& sys) {
  const std::size_t n = sys.size();
  if (n == 0) return {};
  std::vector<double> c_star(n, 0.0);
  std::vector<double> d_star(n, 0.0);
  Field x(n, 0.0);

  double m = sys.main[0];
  if (m == 0.0 || !std::isfinite(m)) throw SingularSystemError("banded solve: zero pivot in row 0");
  c_star[0] = sys.super[0] / m;
  d_star[0] = sys.rhs[0] / m;
  for (std::size_t i = 1; i < n; ++i) {
    m = sys.main[i] - sys.sub[i] * c_star[i - 1];
    if (m == 0.0 || !std::isfinite(m)) {
      std::ostringstream os;
      os << "banded solve: zero pivot in row " << i;
      throw SingularSystemError(os.str());
    }
    c_star[i] = sys.super[i] / m;
    d_star[i] = (sys.rhs[i] - sys.sub[i] * d_star[i - 1]) / m;
  }
  x[n - 1] = d_star[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = d_star[i] - c_star[i] * x[i + 1];
  return x;
}

EllipticSolve solve_semilinear_elliptic(const ProblemSpec& spec, const Grid& grid, SubGrid sub,
                                        const BoundaryCondition& left,
                                        const BoundaryCondition& right,
                                        const PicardOptions& options, std::span<const double> guess,
                                        const StepTerms& step) {
  const std::size_t n = sub.size();
  EllipticSolve out;
  Field current = guess.empty() ? Field(n, 0.0) : Field(guess.begin(), guess.end());
  if (current.size() != n) throw std::invalid_argument("picard: guess has wrong size");

  const bool linear = spec.nonlinearity.is_zero();
  for (int it = 1; it <= options.max_iters; ++it) {
    const BandedSystem sys = assemble_elliptic(spec, grid, sub, left, right, current, step);
    out.dominance_warning = out.dominance_warning || sys.dominance_warning;
    Field next = solve_banded(sys);
    double diff = 0.0;
    for (std::size_t j = 0; j < n; ++j) diff = std::max(diff, std::abs(next[j] - current[j]));
    if (!std::isfinite(diff)) diff = std::numeric_limits<double>::infinity();
    out.increments.push_back(diff);
    current = std::move(next);
    out.picard_iters = it;
    if (linear || diff <= options.tol) {
      out.u = std::move(current);
      return out;
    }
  }
  std::ostringstream os;
  os << "picard: no convergence in " << options.max_iters << " steps (last increment "
     << out.increments.back() << ")";
  throw PicardError(os.str(), out.increments);
}

SpaceTimeField solve_semilinear_parabolic(const ProblemSpec& spec, const Grid& grid, SubGrid sub,
                                          const BoundaryTrace& left, const BoundaryTrace& right,
                                          std::span<const double> initial,
                                          const PicardOptions& options) {
  if (!grid.time) throw std::invalid_argument("parabolic solve: grid has no time axis");
  const TimeAxis& axis = *grid.time;
  const std::size_t n = sub.size();
  if (initial.size() != n) throw std::invalid_argument("parabolic solve: initial field has wrong size");
  if (left.values.size() != axis.levels() || right.values.size() != axis.levels())
    throw std::invalid_argument("parabolic solve: boundary trace length differs from time levels");

  SpaceTimeField u(n, axis.levels());
  std::copy(initial.begin(), initial.end(), u.level(0).begin());
  std::vector<double> extra(n);
  const double inv_dt = 1.0 / axis.dt;
  for (std::size_t m = 1; m < axis.levels(); ++m) {
    const auto prev = u.level(m - 1);
    for (std::size_t j = 0; j < n; ++j) extra[j] = prev[j] * inv_dt;
    StepTerms step{axis.t(m), inv_dt, extra};
    try {
      EllipticSolve s =
          solve_semilinear_elliptic(spec, grid, sub, left.at(m), right.at(m), options, prev, step);
      std::copy(s.u.begin(), s.u.end(), u.level(m).begin());
    } catch (const std::runtime_error& e) {
      std::ostringstream os;
      os << "time level " << m << ": " << e.what();
      throw TimeStepError(os.str(), m);
    }
  }
  return u;
}

Field reference_solve(const ProblemSpec& spec, const Grid& grid, const PicardOptions& options) {
  const auto left = BoundaryCondition::dirichlet(spec.boundary(0.0, 0.0));
  const auto right = BoundaryCondition::dirichlet(spec.boundary(spec.length, 0.0));
  return solve_semilinear_elliptic(spec, grid, grid.whole(), left, right, options).u;
}

SpaceTimeField reference_solve_transient(const ProblemSpec& spec, const Grid& grid,
                                         const PicardOptions& options) {
  if (!grid.time) throw std::invalid_argument("reference: grid has no time axis");
  const TimeAxis& axis = *grid.time;
  BoundaryTrace left, right;
  left.values.resize(axis.levels());
  right.values.resize(axis.levels());
  for (std::size_t m = 0; m < axis.levels(); ++m) {
    left.values[m] = spec.boundary(0.0, axis.t(m));
    right.values[m] = spec.boundary(spec.length, axis.t(m));
  }
  Field initial(grid.nodes());
  for (std::size_t i = 0; i < grid.nodes(); ++i) initial[i] = spec.initial(grid.x(i));
  return solve_semilinear_parabolic(spec, grid, grid.whole(), left, right, initial, options);
}

}  // namespace schwarz
