#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "schwarz/discretize.hpp"
#include "schwarz/geometry.hpp"

namespace schwarz {

/// max over nodes and levels of e(x,t)^2 exp(-alpha t).
double weighted_sup_norm(const SpaceTimeField& e, const TimeAxis& axis, double alpha);

struct SeminormOptions {
  /// Log-spaced shifts alpha' in [alpha, shift_span * alpha].
  std::size_t shift_samples = 8;
  double shift_span = 10.0;
  /// Simpson intervals per unit y-interval (even).
  std::size_t y_intervals = 64;
};

/// |f|_alpha = sup_{alpha' >= alpha} ( int_{alpha'}^{alpha'+1} (Lf)(y)^2 dy )^{1/2}
/// with the Laplace transform Lf taken by the trapezoidal rule on the time
/// axis (truncated at the horizon) and the sup sampled on log-spaced shifts.
/// The quadrature kernel depends only on the axis, alpha and options, so it is
/// built once and reused for every series.
class LaplaceSeminorm {
public:
  LaplaceSeminorm(const TimeAxis& axis, double alpha, SeminormOptions options = {});

  double squared(std::span<const double> series) const;
  double operator()(std::span<const double> series) const;

  std::size_t levels() const { return m_levels; }
  const std::vector<double>& shifts() const { return m_shifts; }

private:
  std::size_t m_levels = 0;
  std::size_t m_ypoints = 0;
  std::vector<double> m_shifts;
  std::vector<double> m_simpson;  // per y point, includes dy
  std::vector<double> m_kernel;   // [shift][y][level]
};

double laplace_seminorm(std::span<const double> series, const TimeAxis& axis, double alpha,
                        const SeminormOptions& options = {});

/// sum over subgrid nodes (trapezoid in x) of |e(x, .)|_alpha^2.
double integrated_seminorm(const SpaceTimeField& e, double h, const LaplaceSeminorm& seminorm);

struct RateFit {
  double per_iteration = 0.0;
  double per_double = 0.0;
  /// Some E^k in the window was exactly zero; rates are reported as 0.
  bool zero_hit = false;
  std::size_t points = 0;
};

/// Least-squares slope s of log E^k over the trailing `window` entries, with
/// separate intercepts for even and odd k so that the alternating pattern
/// of two-subdomain Jacobi sweeps does not bias the slope.
/// per_iteration = exp(s), per_double = exp(2 s). Needs at least 3 entries.
RateFit fit_contraction_rate(std::span<const double> history, std::size_t window);

}  // namespace schwarz
