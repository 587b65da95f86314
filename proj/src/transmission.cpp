#include "schwarz/transmission.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace schwarz {

TransmissionSpec TransmissionSpec::dirichlet() { return {}; }

TransmissionSpec TransmissionSpec::robin(double p) {
  TransmissionSpec s;
  s.m_kind = Kind::robin;
  s.m_p = p;
  return s;
}

TransmissionSpec TransmissionSpec::scaled_robin(double p, double rho) {
  TransmissionSpec s;
  s.m_kind = Kind::scaled_robin;
  s.m_p = p;
  s.m_rho = rho;
  return s;
}

TransmissionSpec& TransmissionSpec::set_p(std::size_t receiver, std::size_t donor, double p) {
  m_overrides[{receiver, donor}] = p;
  return *this;
}

double TransmissionSpec::p(std::size_t receiver, std::size_t donor) const {
  const auto it = m_overrides.find({receiver, donor});
  return it == m_overrides.end() ? m_p : it->second;
}

double TransmissionSpec::effective_p(std::size_t receiver, std::size_t donor) const {
  switch (m_kind) {
    case Kind::dirichlet:
      return 0.0;
    case Kind::robin:
      return p(receiver, donor);
    case Kind::scaled_robin:
      return m_rho * p(receiver, donor);
  }
  return 0.0;
}

std::vector<std::string> TransmissionSpec::validate() const {
  std::vector<std::string> out;
  if (m_kind == Kind::dirichlet) return out;
  if (!(m_p > 0.0)) out.push_back("transmission: Robin parameter p must be positive");
  for (const auto& [key, p] : m_overrides)
    if (!(p > 0.0)) {
      std::ostringstream os;
      os << "transmission: p on interface (" << key.first + 1 << "," << key.second + 1
         << ") must be positive";
      out.push_back(os.str());
    }
  if (m_kind == Kind::scaled_robin && !(m_rho > 0.0))
    out.push_back("transmission: rho must be positive");
  return out;
}

std::string to_string(TransmissionSpec::Kind kind) {
  switch (kind) {
    case TransmissionSpec::Kind::dirichlet:
      return "dirichlet";
    case TransmissionSpec::Kind::robin:
      return "robin";
    case TransmissionSpec::Kind::scaled_robin:
      return "scaled_robin";
  }
  return "?";
}

std::string TransmissionSpec::describe() const {
  std::ostringstream os;
  os << to_string(m_kind);
  if (m_kind != Kind::dirichlet) {
    os << "(p=" << m_p;
    for (const auto& [key, p] : m_overrides)
      os << ", p[" << key.first + 1 << "," << key.second + 1 << "]=" << p;
    if (m_kind == Kind::scaled_robin) os << ", rho=" << m_rho;
    os << ")";
  }
  return os.str();
}

BoundaryCondition receiver_condition(const TransmissionSpec& spec, const Interface& gamma,
                                     double value) {
  return {spec.condition_kind(), value, spec.effective_p(gamma.receiver, gamma.donor)};
}

namespace {

std::size_t donor_local_node(const Grid& grid, SubGrid donor, const Interface& gamma,
                             const TransmissionSpec& spec) {
  const std::size_t i = grid.node_of(gamma.point);
  if (!donor.contains(i) || i == donor.first || i == donor.last)
    throw GeometryError("transmission: interface node is not interior to the neighbor grid");
  const std::size_t j = i - donor.first;
  if (spec.kind() != TransmissionSpec::Kind::dirichlet) {
    // stencil reads j - 2n .. j inside the donor
    const bool fits = gamma.normal > 0 ? j >= 2 : j + 2 < donor.size();
    if (!fits) throw GeometryError("transmission: overlap too small for the Robin stencil");
  }
  return j;
}

}  // namespace

double extract(const TransmissionSpec& spec, const ProblemSpec& problem, const Grid& grid,
               SubGrid donor, std::span<const double> donor_field, const Interface& gamma) {
  if (donor_field.size() != donor.size())
    throw std::invalid_argument("transmission: donor field has wrong size");
  const std::size_t j = donor_local_node(grid, donor, gamma, spec);
  if (spec.kind() == TransmissionSpec::Kind::dirichlet) return donor_field[j];
  return robin_combination(donor_field, j, gamma.normal, grid.h, problem.diffusion(gamma.point),
                           spec.effective_p(gamma.receiver, gamma.donor));
}

std::vector<double> extract_trace(const TransmissionSpec& spec, const ProblemSpec& problem,
                                  const Grid& grid, SubGrid donor,
                                  const SpaceTimeField& donor_field, const Interface& gamma) {
  if (donor_field.nodes() != donor.size())
    throw std::invalid_argument("transmission: donor field has wrong size");
  const std::size_t j = donor_local_node(grid, donor, gamma, spec);
  std::vector<double> out(donor_field.levels());
  const double a = problem.diffusion(gamma.point);
  const double p = spec.effective_p(gamma.receiver, gamma.donor);
  for (std::size_t m = 0; m < out.size(); ++m) {
    const auto level = donor_field.level(m);
    out[m] = spec.kind() == TransmissionSpec::Kind::dirichlet
                 ? level[j]
                 : robin_combination(level, j, gamma.normal, grid.h, a, p);
  }
  return out;
}

double InitialGuess::operator()(double x, double length) const {
  switch (kind) {
    case Kind::zero:
    case Kind::reference:
      return 0.0;
    case Kind::constant:
      return value;
    case Kind::sine:
      return value * std::sin(mode * std::numbers::pi * x / length);
  }
  return 0.0;
}

double InitialGuess::derivative(double x, double length) const {
  if (kind != Kind::sine) return 0.0;
  const double k = mode * std::numbers::pi / length;
  return value * k * std::cos(k * x);
}

std::string InitialGuess::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::zero:
      os << "zero";
      break;
    case Kind::constant:
      os << "constant(" << value << ")";
      break;
    case Kind::sine:
      os << "sine(mode=" << mode << ", amplitude=" << value << ")";
      break;
    case Kind::reference:
      os << "reference";
      break;
  }
  return os.str();
}

double initial_guess_data(const InitialGuess& u0, const Interface& gamma,
                          const TransmissionSpec& spec, const ProblemSpec& problem) {
  if (u0.kind == InitialGuess::Kind::reference)
    throw std::invalid_argument("initial guess: reference data must be extracted from a field");
  const double x = gamma.point;
  const double v = u0(x, problem.length);
  if (spec.kind() == TransmissionSpec::Kind::dirichlet) return v;
  return problem.diffusion(x) * gamma.normal * u0.derivative(x, problem.length) +
         spec.effective_p(gamma.receiver, gamma.donor) * v;
}

}  // namespace schwarz
