#pragma once

#include <optional>
#include <stdexcept>

namespace schwarz::oracle {

// Closed forms for the two-subdomain splitting Omega_1 = (0, L2), Omega_2 =
// (L1, L) of u'' - 3u' - 4u = f on (0, L) with Robin data
//   (u_1)' + p u_1   at x = L2,
//   (u_2)' - q u_2   at x = L1.
// The errors stay in the one-dimensional spaces
//   e_1 = A (exp(4x) - exp(-x)),  e_2 = B (exp(4(x-L)) - exp(-(x-L))),
// and a parallel sweep maps (A, B) to (tau1 B, tau2 A).

/// Roots of r^2 - 3r - 4 = 0.
inline constexpr double kGrowthRoot = 4.0;
inline constexpr double kDecayRoot = -1.0;
static_assert(kGrowthRoot * kGrowthRoot - 3.0 * kGrowthRoot - 4.0 == 0.0);
static_assert(kDecayRoot * kDecayRoot - 3.0 * kDecayRoot - 4.0 == 0.0);

class DegenerateCaseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct AnalyticCase {
  double L = 2.0;
  double L1 = 1.7;
  double L2 = 1.9;
  double p = 1.0;
  double q = 50.0;
  /// Multiplies both p and q when set.
  std::optional<double> rho;

  double effective_p() const { return rho ? *rho * p : p; }
  double effective_q() const { return rho ? *rho * q : q; }
};

struct TauFactors {
  double tau1 = 0.0;  // A_{k+1} / B_k
  double tau2 = 0.0;  // B_{k+1} / A_k
  double tau = 0.0;   // |tau1 tau2|, contraction per double sweep
};

/// Throws std::invalid_argument unless 0 < L1 < L2 < L, and
/// DegenerateCaseError on a vanishing denominator.
TauFactors tau_factors(const AnalyticCase& c);

/// |tau1 tau2| written with exponents 5L, 5L1, 5L2 only; equal to
/// tau_factors(c).tau.
double tau_exp5(const AnalyticCase& c);

struct InterfaceState {
  double A = 0.0;
  double B = 0.0;
};

InterfaceState step_interface(const AnalyticCase& c, const InterfaceState& s);

/// Limit of tau for p = 1 and q -> infinity:
///   (exp(5 L1) - 1) / (exp(5 L) - exp(5 L1)).
double asymptotic_tau(double L, double L1);

/// Root of 2 exp(5 L1) = exp(5 L) + 1, i.e. L1* = ln((exp(5L) + 1) / 2) / 5,
/// above which asymptotic_tau exceeds 1.
double divergence_threshold_L1(double L);

/// Per-double-sweep Dirichlet factor (L1 / L2) ((L - L2) / (L - L1)) for
/// -u'' = 0; subdomains (0, L2) and (L1, L).
double classical_laplace_rate(double L, double L1, double L2);

/// Robin parameter at L2 that zeroes tau1, and the one at L1 that zeroes tau2.
double optimal_p(double L, double L2);
double optimal_q(double L1);

}  // namespace schwarz::oracle
