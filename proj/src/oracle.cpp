#include "schwarz/oracle.hpp"

#include <cmath>
#include <numbers>

namespace schwarz::oracle {

namespace {

void check_geometry(const AnalyticCase& c) {
  if (!(0.0 < c.L1 && c.L1 < c.L2 && c.L2 < c.L))
    throw std::invalid_argument("oracle: need 0 < L1 < L2 < L");
}

double checked_ratio(double num, double den, double scale, const char* what) {
  if (!std::isfinite(den) || std::abs(den) <= 1e-14 * scale)
    throw DegenerateCaseError(std::string("oracle: vanishing denominator in ") + what);
  return num / den;
}

}  // namespace

TauFactors tau_factors(const AnalyticCase& c) {
  check_geometry(c);
  const double p = c.effective_p();
  const double q = c.effective_q();
  const double L = c.L, L1 = c.L1, L2 = c.L2;
  using std::exp;

  // tau1: e_1'(L2) + p e_1(L2) = e_2'(L2) + p e_2(L2)
  const double g2 = exp(4.0 * (L2 - L)), d2 = exp(-(L2 - L));
  const double G2 = exp(4.0 * L2), D2 = exp(-L2);
  const double num1 = 4.0 * g2 + d2 + p * (g2 - d2);
  const double den1 = 4.0 * G2 + D2 + p * (G2 - D2);
  const double tau1 = checked_ratio(num1, den1, 4.0 * G2 + D2 + std::abs(p) * (G2 + D2), "tau1");

  // tau2: e_2'(L1) - q e_2(L1) = e_1'(L1) - q e_1(L1)
  const double G1 = exp(4.0 * L1), D1 = exp(-L1);
  const double g1 = exp(4.0 * (L1 - L)), d1 = exp(-(L1 - L));
  const double num2 = 4.0 * G1 + D1 - q * (G1 - D1);
  const double den2 = 4.0 * g1 + d1 - q * (g1 - d1);
  const double tau2 = checked_ratio(num2, den2, 4.0 * g1 + d1 + std::abs(q) * (g1 + d1), "tau2");

  return {tau1, tau2, std::abs(tau1 * tau2)};
}

double tau_exp5(const AnalyticCase& c) {
  check_geometry(c);
  const double p = c.effective_p();
  const double q = c.effective_q();
  using std::exp;
  const double e5L = exp(5.0 * c.L), e5L1 = exp(5.0 * c.L1), e5L2 = exp(5.0 * c.L2);
  const double first = (4.0 * e5L2 + e5L + p * (e5L2 - e5L)) / (4.0 * e5L2 + 1.0 + p * (e5L2 - 1.0));
  const double second =
      (4.0 * e5L1 + 1.0 - q * (e5L1 - 1.0)) / (4.0 * e5L1 + e5L - q * (e5L1 - e5L));
  return std::abs(first) * std::abs(second);
}

InterfaceState step_interface(const AnalyticCase& c, const InterfaceState& s) {
  const TauFactors t = tau_factors(c);
  return {t.tau1 * s.B, t.tau2 * s.A};
}

double asymptotic_tau(double L, double L1) {
  return (std::exp(5.0 * L1) - 1.0) / (std::exp(5.0 * L) - std::exp(5.0 * L1));
}

double divergence_threshold_L1(double L) {
  // ln((e^{5L} + 1) / 2) / 5 without forming e^{5L}
  return L - std::numbers::ln2 / 5.0 + std::log1p(std::exp(-5.0 * L)) / 5.0;
}

double classical_laplace_rate(double L, double L1, double L2) {
  if (!(0.0 < L1 && L1 < L2 && L2 < L)) throw std::invalid_argument("oracle: need 0 < L1 < L2 < L");
  return (L1 / L2) * ((L - L2) / (L - L1));
}

double optimal_p(double L, double L2) {
  const double e5L = std::exp(5.0 * L), e5L2 = std::exp(5.0 * L2);
  return -(4.0 * e5L2 + e5L) / (e5L2 - e5L);
}

double optimal_q(double L1) {
  const double e5L1 = std::exp(5.0 * L1);
  return (4.0 * e5L1 + 1.0) / (e5L1 - 1.0);
}

}  // namespace schwarz::oracle
