#include "schwarz/problem.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace schwarz {

CoefficientFn CoefficientFn::constant(double value) {
  return CoefficientFn(Kind::constant, {value});
}

CoefficientFn CoefficientFn::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  return CoefficientFn(Kind::polynomial, std::move(coeffs));
}

CoefficientFn CoefficientFn::scaled_exp(double scale, double rate) {
  return CoefficientFn(Kind::scaled_exp, {scale, rate});
}

double CoefficientFn::operator()(double x) const {
  switch (m_kind) {
    case Kind::constant:
      return m_params[0];
    case Kind::polynomial: {
      // Horner
      double v = 0.0;
      for (auto it = m_params.rbegin(); it != m_params.rend(); ++it) v = v * x + *it;
      return v;
    }
    case Kind::scaled_exp:
      return m_params[0] * std::exp(m_params[1] * x);
  }
  return 0.0;
}

double CoefficientFn::derivative(double x) const {
  switch (m_kind) {
    case Kind::constant:
      return 0.0;
    case Kind::polynomial: {
      double v = 0.0;
      for (std::size_t i = m_params.size(); i-- > 1;)
        v = v * x + static_cast<double>(i) * m_params[i];
      return v;
    }
    case Kind::scaled_exp:
      return m_params[0] * m_params[1] * std::exp(m_params[1] * x);
  }
  return 0.0;
}

Nonlinearity Nonlinearity::zero() { return {}; }

Nonlinearity Nonlinearity::linear(double slope) {
  Nonlinearity n;
  n.m_kind = Kind::linear;
  n.m_param = slope;
  n.m_lipschitz = std::abs(slope);
  return n;
}

Nonlinearity Nonlinearity::sine(double amplitude) {
  Nonlinearity n;
  n.m_kind = Kind::sine;
  n.m_param = amplitude;
  n.m_lipschitz = std::abs(amplitude);
  return n;
}

Nonlinearity Nonlinearity::named(const std::string& id) {
  if (id != "tanh" && id != "arctan")
    throw std::invalid_argument("unknown nonlinearity '" + id + "'");
  Nonlinearity n;
  n.m_kind = Kind::named;
  n.m_param = 1.0;
  n.m_name = id;
  n.m_lipschitz = 1.0;
  return n;
}

double Nonlinearity::operator()(double /*x*/, double u) const {
  switch (m_kind) {
    case Kind::zero:
      return 0.0;
    case Kind::linear:
      return m_param * u;
    case Kind::sine:
      return m_param * std::sin(u);
    case Kind::named:
      return m_name == "tanh" ? std::tanh(u) : std::atan(u);
  }
  return 0.0;
}

std::string to_string(Mode mode) {
  return mode == Mode::elliptic ? "elliptic" : "parabolic";
}

SpaceTimeFn manufactured_source(const ProblemSpec& spec,
                                const ManufacturedSolution& solution) {
  const bool parabolic = spec.mode == Mode::parabolic;
  return [=](double x, double t) {
    const double u = solution.u(x, t);
    const double ux = solution.u_x(x, t);
    const double uxx = solution.u_xx(x, t);
    double lhs = -(spec.diffusion.derivative(x) * ux + spec.diffusion(x) * uxx) +
                 spec.advection(x) * ux + spec.reaction(x) * u;
    if (parabolic) lhs += solution.u_t(x, t);
    return lhs - spec.nonlinearity(x, u);
  };
}

ProblemSpec with_manufactured(ProblemSpec spec, const ManufacturedSolution& solution) {
  spec.source = manufactured_source(spec, solution);
  spec.boundary = solution.u;
  spec.initial = [u = solution.u](double x) { return u(x, 0.0); };
  return spec;
}

namespace {

constexpr double pi = std::numbers::pi;

// u'' - 3u' - 4u = f on (0, 2) with f manufactured from u* = sin(pi x). The
// divergence form -(u')' + 3u' + 4u = -f is stored, so source = -f.
ProblemSpec make_example31() {
  ProblemSpec s;
  s.id = "example31";
  s.mode = Mode::elliptic;
  s.length = 2.0;
  s.diffusion = CoefficientFn::constant(1.0);
  s.advection = CoefficientFn::constant(3.0);
  s.reaction = CoefficientFn::constant(4.0);
  s.ellipticity = 1.0;
  s.source = [](double x, double) {
    const double f = -(pi * pi + 4.0) * std::sin(pi * x) - 3.0 * pi * std::cos(pi * x);
    return -f;
  };
  s.counterexample_family = true;
  return s;
}

ProblemSpec make_laplace1d() {
  ProblemSpec s;
  s.id = "laplace1d";
  s.mode = Mode::elliptic;
  s.length = 2.0;
  return s;
}

ProblemSpec make_semilinear_elliptic() {
  ProblemSpec s;
  s.id = "semilinear-elliptic";
  s.mode = Mode::elliptic;
  s.length = 1.0;
  s.diffusion = CoefficientFn::polynomial({1.0, 0.5});
  s.advection = CoefficientFn::constant(1.0);
  s.reaction = CoefficientFn::scaled_exp(3.0, 0.5);
  s.ellipticity = 1.0;
  s.nonlinearity = Nonlinearity::sine(1.0);
  ManufacturedSolution sol{
      [](double x, double) { return std::sin(pi * x); },
      [](double x, double) { return pi * std::cos(pi * x); },
      [](double x, double) { return -pi * pi * std::sin(pi * x); },
  };
  return with_manufactured(s, sol);
}

ProblemSpec make_heat_semilinear() {
  ProblemSpec s;
  s.id = "heat-semilinear";
  s.mode = Mode::parabolic;
  s.length = 1.0;
  s.horizon = 2.0;
  s.nonlinearity = Nonlinearity::sine(1.0);
  s.initial = [](double x) { return std::sin(pi * x); };
  return s;
}

}  // namespace

std::vector<std::string> catalog_ids() {
  return {"example31", "laplace1d", "semilinear-elliptic", "heat-semilinear"};
}

ProblemSpec catalog_lookup(const std::string& id) {
  if (id == "example31") return make_example31();
  if (id == "laplace1d") return make_laplace1d();
  if (id == "semilinear-elliptic") return make_semilinear_elliptic();
  if (id == "heat-semilinear") return make_heat_semilinear();
  throw UnknownProblemError("unknown catalog problem '" + id + "'");
}

std::vector<std::string> validate(const ProblemSpec& spec, const ValidationOptions& options) {
  std::vector<std::string> out;
  auto fmt = [](const char* tag, double x, double v) {
    std::ostringstream os;
    os << tag << " at x=" << x << " (value " << v << ")";
    return os.str();
  };

  if (!(spec.length > 0.0) || !std::isfinite(spec.length)) {
    out.push_back("domain: length must be positive");
    return out;
  }
  if (spec.mode == Mode::parabolic && !(spec.horizon > 0.0))
    out.push_back("domain: parabolic time horizon must be positive");

  if (!(spec.ellipticity > 0.0))
    out.push_back("ellipticity: declared lambda must be strictly positive");

  const double C = spec.nonlinearity.lipschitz();
  const std::size_t n = std::max<std::size_t>(options.samples, 2);
  bool ellip_reported = false;
  bool a3_reported = false;
  bool finite_reported = false;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = spec.length * static_cast<double>(i) / static_cast<double>(n - 1);
    const double a = spec.diffusion(x);
    const double b = spec.advection(x);
    const double c = spec.reaction(x);
    if (!finite_reported && !(std::isfinite(a) && std::isfinite(b) && std::isfinite(c))) {
      out.push_back(fmt("finite: non-finite coefficient", x, a));
      finite_reported = true;
    }
    if (!ellip_reported && !(a >= spec.ellipticity && a > 0.0)) {
      out.push_back(fmt("ellipticity: a(x) below lambda", x, a));
      ellip_reported = true;
    }
    // With C = 0 the problem is linear and the Dirichlet data alone give coercivity.
    if (spec.mode == Mode::elliptic && C > 0.0 && !a3_reported && !(c > C)) {
      out.push_back(fmt("(A3') c <= Lipschitz C", x, c));
      a3_reported = true;
    }
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> ux(0.0, spec.length);
  std::uniform_real_distribution<double> uz(-10.0, 10.0);
  for (std::size_t i = 0; i < options.lipschitz_triples; ++i) {
    const double x = ux(rng);
    const double z = uz(rng);
    const double z2 = uz(rng);
    const double lhs = std::abs(spec.nonlinearity(x, z) - spec.nonlinearity(x, z2));
    const double bound = C * std::abs(z - z2);
    if (lhs > bound * (1.0 + 1e-12) + 1e-14) {
      out.push_back(fmt("Lipschitz: |F(x,z)-F(x,z')| exceeds C|z-z'|", x, lhs));
      break;
    }
  }
  return out;
}

}  // namespace schwarz
