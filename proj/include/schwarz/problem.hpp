#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace schwarz {

/// Smooth coefficient drawn from a small closed family of evaluable forms.
///
///   constant:    v
///   polynomial:  c0 + c1 x + c2 x^2 + ...
///   scaled-exp:  c0 * exp(rate * x)
class CoefficientFn {
public:
  enum class Kind { constant, polynomial, scaled_exp };

  static CoefficientFn constant(double value);
  static CoefficientFn polynomial(std::vector<double> coeffs);
  static CoefficientFn scaled_exp(double scale, double rate);

  double operator()(double x) const;
  double derivative(double x) const;

  Kind kind() const { return m_kind; }
  const std::vector<double>& params() const { return m_params; }

  bool operator==(const CoefficientFn&) const = default;

private:
  CoefficientFn(Kind kind, std::vector<double> params)
      : m_kind(kind), m_params(std::move(params)) {}

  Kind m_kind = Kind::constant;
  std::vector<double> m_params{0.0};
};

/// Lipschitz zeroth-order nonlinearity N(x, u). The full right-hand side of the
/// model problem is F(x, t, u) = source(x, t) + N(x, u).
class Nonlinearity {
public:
  enum class Kind { zero, linear, sine, named };

  static Nonlinearity zero();
  /// N = slope * u
  static Nonlinearity linear(double slope);
  /// N = amplitude * sin(u)
  static Nonlinearity sine(double amplitude);
  /// Built-in named forms: "tanh" (tanh u) and "arctan" (atan u).
  static Nonlinearity named(const std::string& id);

  double operator()(double x, double u) const;

  Kind kind() const { return m_kind; }
  double parameter() const { return m_param; }
  const std::string& name() const { return m_name; }
  double lipschitz() const { return m_lipschitz; }
  bool is_zero() const { return m_kind == Kind::zero || m_lipschitz == 0.0; }

  bool operator==(const Nonlinearity&) const = default;

private:
  Kind m_kind = Kind::zero;
  double m_param = 0.0;
  std::string m_name;
  double m_lipschitz = 0.0;
};

enum class Mode { elliptic, parabolic };

std::string to_string(Mode mode);

using SpaceTimeFn = std::function<double(double x, double t)>;
using SpaceFn = std::function<double(double x)>;

/// Continuous model problem in divergence form on (0, L):
///
///   [u_t] - (a u')' + b u' + c u = F(x, t, u),   u = g on the boundary,
///   u(x, 0) = initial(x)  (parabolic only).
struct ProblemSpec {
  std::string id;
  Mode mode = Mode::elliptic;
  double length = 1.0;
  double horizon = 0.0;  // parabolic only

  CoefficientFn diffusion = CoefficientFn::constant(1.0);
  CoefficientFn advection = CoefficientFn::constant(0.0);
  CoefficientFn reaction = CoefficientFn::constant(0.0);
  double ellipticity = 1.0;  // declared lambda with a(x) >= lambda

  Nonlinearity nonlinearity = Nonlinearity::zero();
  SpaceTimeFn source = [](double, double) { return 0.0; };
  SpaceTimeFn boundary = [](double, double) { return 0.0; };
  SpaceFn initial = [](double) { return 0.0; };

  /// Members of the example-3.1 family exist to show transmission-side
  /// divergence; they are still expected to satisfy the model assumptions.
  bool counterexample_family = false;

  double rhs(double x, double t, double u) const {
    return source(x, t) + nonlinearity(x, u);
  }
};

/// Closed-form solution used to manufacture a source term.
struct ManufacturedSolution {
  SpaceTimeFn u;
  SpaceTimeFn u_x;
  SpaceTimeFn u_xx;
  SpaceTimeFn u_t = [](double, double) { return 0.0; };
};

/// Source f such that `solution` satisfies the problem's PDE exactly.
SpaceTimeFn manufactured_source(const ProblemSpec& spec,
                                const ManufacturedSolution& solution);

/// Replaces source, boundary and initial data of `spec` so that `solution`
/// is its exact solution.
ProblemSpec with_manufactured(ProblemSpec spec, const ManufacturedSolution& solution);

class UnknownProblemError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Known catalog keys, in a stable order.
std::vector<std::string> catalog_ids();

ProblemSpec catalog_lookup(const std::string& id);

struct ValidationOptions {
  std::size_t samples = 1001;
  std::size_t lipschitz_triples = 10000;
  std::uint64_t seed = 20240611;
};

/// Dense-sampling check of the model assumptions. Each violation string starts
/// with the rule tag: "ellipticity", "(A3') c <= Lipschitz C", "Lipschitz",
/// "finite", "domain".
std::vector<std::string> validate(const ProblemSpec& spec,
                                  const ValidationOptions& options = {});

}  // namespace schwarz
