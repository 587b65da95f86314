#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "schwarz/discretize.hpp"
#include "schwarz/geometry.hpp"
#include "schwarz/problem.hpp"

namespace schwarz {

/// Transmission operator B on every interface Gamma_{l,l'}:
///
///   dirichlet:     B v = v
///   robin:         B v = a dv/dn + p_{l,l'} v
///   scaled_robin:  B v = a dv/dn + rho p_{l,l'} v
///
/// n is the outward normal of the receiving subdomain l. p defaults to a
/// single value and may be overridden per ordered (receiver, donor) pair,
/// both 0-based.
class TransmissionSpec {
public:
  enum class Kind { dirichlet, robin, scaled_robin };

  static TransmissionSpec dirichlet();
  static TransmissionSpec robin(double p);
  static TransmissionSpec scaled_robin(double p, double rho);

  TransmissionSpec& set_p(std::size_t receiver, std::size_t donor, double p);

  Kind kind() const { return m_kind; }
  double default_p() const { return m_p; }
  double rho() const { return m_rho; }
  const std::map<std::pair<std::size_t, std::size_t>, double>& overrides() const { return m_overrides; }

  /// Unscaled p_{l,l'}.
  double p(std::size_t receiver, std::size_t donor) const;
  /// Coefficient of v in B: 0 for dirichlet, p for robin, rho p for scaled_robin.
  double effective_p(std::size_t receiver, std::size_t donor) const;

  BoundaryCondition::Kind condition_kind() const {
    return m_kind == Kind::dirichlet ? BoundaryCondition::Kind::dirichlet
                                     : BoundaryCondition::Kind::robin;
  }

  /// Violations of p > 0 and rho > 0.
  std::vector<std::string> validate() const;

  std::string describe() const;

private:
  Kind m_kind = Kind::dirichlet;
  double m_p = 0.0;
  double m_rho = 1.0;
  std::map<std::pair<std::size_t, std::size_t>, double> m_overrides;
};

std::string to_string(TransmissionSpec::Kind kind);

/// Boundary condition the receiver imposes with datum `value`.
BoundaryCondition receiver_condition(const TransmissionSpec& spec, const Interface& gamma,
                                     double value);

/// B u_{donor} at the interface node. The flux uses the receiver's outward
/// normal and the same one-sided stencil as the Robin rows of assembly, so
/// the stencil reads the donor nodes on the receiver's side of the point.
double extract(const TransmissionSpec& spec, const ProblemSpec& problem, const Grid& grid,
               SubGrid donor, std::span<const double> donor_field, const Interface& gamma);

/// B u_{donor} at every time level.
std::vector<double> extract_trace(const TransmissionSpec& spec, const ProblemSpec& problem,
                                  const Grid& grid, SubGrid donor,
                                  const SpaceTimeField& donor_field, const Interface& gamma);

/// Closed-form initial iterate u^0 of the Schwarz iteration.
struct InitialGuess {
  enum class Kind { zero, constant, sine, reference };

  Kind kind = Kind::zero;
  double value = 0.0;  // constant level, or sine amplitude
  int mode = 1;        // sine: value * sin(mode pi x / L)

  static InitialGuess zero() { return {}; }
  static InitialGuess constant(double v) { return {Kind::constant, v, 1}; }
  static InitialGuess sine(int mode, double amplitude = 1.0) { return {Kind::sine, amplitude, mode}; }
  /// u^0 equal to the discrete monodomain reference.
  static InitialGuess reference() { return {Kind::reference, 0.0, 1}; }

  double operator()(double x, double length) const;
  double derivative(double x, double length) const;

  std::string describe() const;
};

/// B u^0 evaluated analytically at the interface. Not defined for the
/// reference guess, whose data come from extract().
double initial_guess_data(const InitialGuess& u0, const Interface& gamma,
                          const TransmissionSpec& spec, const ProblemSpec& problem);

}  // namespace schwarz
