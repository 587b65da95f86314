#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "schwarz/geometry.hpp"
#include "schwarz/problem.hpp"

namespace schwarz {

using Field = std::vector<double>;

/// Values on nodes x time levels of one subgrid, stored level by level.
class SpaceTimeField {
public:
  SpaceTimeField() = default;
  SpaceTimeField(std::size_t nodes, std::size_t levels, double fill = 0.0)
      : m_nodes(nodes), m_levels(levels), m_data(nodes * levels, fill) {}

  std::size_t nodes() const { return m_nodes; }
  std::size_t levels() const { return m_levels; }

  double& at(std::size_t i, std::size_t m) { return m_data[m * m_nodes + i]; }
  double at(std::size_t i, std::size_t m) const { return m_data[m * m_nodes + i]; }

  std::span<double> level(std::size_t m) { return {m_data.data() + m * m_nodes, m_nodes}; }
  std::span<const double> level(std::size_t m) const { return {m_data.data() + m * m_nodes, m_nodes}; }

  /// Time series at node i.
  std::vector<double> series(std::size_t i) const;

  const std::vector<double>& data() const { return m_data; }

  bool operator==(const SpaceTimeField&) const = default;

private:
  std::size_t m_nodes = 0;
  std::size_t m_levels = 0;
  std::vector<double> m_data;
};

/// Boundary row of a subdomain solve. Robin rows impose
///   a * du/dn + p * u = value
/// with n the outward normal of the subdomain.
struct BoundaryCondition {
  enum class Kind { dirichlet, robin };

  Kind kind = Kind::dirichlet;
  double value = 0.0;
  double p = 0.0;

  static BoundaryCondition dirichlet(double value) { return {Kind::dirichlet, value, 0.0}; }
  static BoundaryCondition robin(double p, double value) { return {Kind::robin, value, p}; }
};

/// Weights of the ghost-free one-sided second-order outward derivative
///   du/dn(x_j) ~ (3/2 u_j - 2 u_{j-n} + 1/2 u_{j-2n}) / h,
/// shared by the Robin rows of assembly and by interface extraction.
inline constexpr double kOutward0 = 1.5;
inline constexpr double kOutward1 = -2.0;
inline constexpr double kOutward2 = 0.5;

/// a * du/dn + p * u at local node j of `u` for outward normal `normal`.
double robin_combination(std::span<const double> u, std::size_t j, int normal, double h,
                         double a, double p);

/// Tridiagonal system. After a Robin row is assembled, the third stencil entry
/// is eliminated against the adjacent interior row so the band stays at width 3.
struct BandedSystem {
  std::vector<double> sub;
  std::vector<double> main;
  std::vector<double> super;
  std::vector<double> rhs;

  /// h above 2 lambda / max|b|: central advection may lose diagonal dominance.
  bool dominance_warning = false;
  double dominance_threshold = 0.0;

  std::size_t size() const { return main.size(); }
};

/// Extra terms of one implicit Euler step: reaction c + reaction_shift and
/// right-hand side + extra_rhs.
struct StepTerms {
  double t = 0.0;
  double reaction_shift = 0.0;
  std::span<const double> extra_rhs{};
};

class SingularSystemError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Finite-difference rows on `sub`: flux form -(a_{i+1/2}(u_{i+1}-u_i) -
/// a_{i-1/2}(u_i-u_{i-1}))/h^2 + b (u_{i+1}-u_{i-1})/(2h) + c u with the
/// nonlinearity frozen at `frozen_u`.
BandedSystem assemble_elliptic(const ProblemSpec& spec, const Grid& grid, SubGrid sub,
                               const BoundaryCondition& left, const BoundaryCondition& right,
                               std::span<const double> frozen_u, const StepTerms& step = {});

/// Thomas algorithm, no pivoting.
Field solve_banded(const BandedSystem& sys);

struct PicardOptions {
  double tol = 1e-10;
  int max_iters = 200;
};

class PicardError : public std::runtime_error {
public:
  PicardError(const std::string& what, std::vector<double> history)
      : std::runtime_error(what), m_history(std::move(history)) {}
  const std::vector<double>& history() const { return m_history; }

private:
  std::vector<double> m_history;
};

struct EllipticSolve {
  Field u;
  int picard_iters = 0;
  /// ||u_{m+1} - u_m||_inf per Picard step.
  std::vector<double> increments;
  bool dominance_warning = false;
};

/// Picard iteration u_{m+1} = LinSolve(F(x, u_m)); starts from `guess` when
/// given, zero otherwise. A zero nonlinearity takes exactly one linear solve.
EllipticSolve solve_semilinear_elliptic(const ProblemSpec& spec, const Grid& grid, SubGrid sub,
                                        const BoundaryCondition& left,
                                        const BoundaryCondition& right,
                                        const PicardOptions& options = {},
                                        std::span<const double> guess = {},
                                        const StepTerms& step = {});

/// Boundary data for every time level (level 0 is unused).
struct BoundaryTrace {
  BoundaryCondition::Kind kind = BoundaryCondition::Kind::dirichlet;
  double p = 0.0;
  std::vector<double> values;

  BoundaryCondition at(std::size_t m) const { return {kind, values.at(m), p}; }
};

class TimeStepError : public std::runtime_error {
public:
  TimeStepError(const std::string& what, std::size_t level)
      : std::runtime_error(what), m_level(level) {}
  std::size_t level() const { return m_level; }

private:
  std::size_t m_level;
};

/// Implicit Euler; at each level one semilinear solve with c + 1/dt and
/// u_prev/dt added to the right-hand side.
SpaceTimeField solve_semilinear_parabolic(const ProblemSpec& spec, const Grid& grid, SubGrid sub,
                                          const BoundaryTrace& left, const BoundaryTrace& right,
                                          std::span<const double> initial,
                                          const PicardOptions& options = {});

/// Monodomain solve with the same discretization as the subdomain solves.
Field reference_solve(const ProblemSpec& spec, const Grid& grid, const PicardOptions& options = {});
SpaceTimeField reference_solve_transient(const ProblemSpec& spec, const Grid& grid,
                                         const PicardOptions& options = {});

}  // namespace schwarz
