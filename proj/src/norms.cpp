#include "schwarz/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace schwarz {

double weighted_sup_norm(const SpaceTimeField& e, const TimeAxis& axis, double alpha) {
  if (e.levels() != axis.levels()) throw std::invalid_argument("weighted norm: level count mismatch");
  double out = 0.0;
  for (std::size_t m = 0; m < e.levels(); ++m) {
    const double w = std::exp(-alpha * axis.t(m));
    for (double v : e.level(m)) out = std::max(out, v * v * w);
  }
  return out;
}

LaplaceSeminorm::LaplaceSeminorm(const TimeAxis& axis, double alpha, SeminormOptions options)
    : m_levels(axis.levels()) {
  if (!(alpha > 0.0)) throw std::invalid_argument("seminorm: alpha must be positive");
  if (options.y_intervals < 2 || options.y_intervals % 2 != 0)
    throw std::invalid_argument("seminorm: Simpson needs an even number of intervals");
  const std::size_t shifts = std::max<std::size_t>(options.shift_samples, 1);
  for (std::size_t j = 0; j < shifts; ++j) {
    const double frac = shifts == 1 ? 0.0 : static_cast<double>(j) / static_cast<double>(shifts - 1);
    m_shifts.push_back(alpha * std::pow(options.shift_span, frac));
  }

  const std::size_t P = options.y_intervals;
  m_ypoints = P + 1;
  const double dy = 1.0 / static_cast<double>(P);
  m_simpson.resize(m_ypoints);
  for (std::size_t q = 0; q <= P; ++q) {
    const double w = (q == 0 || q == P) ? 1.0 : (q % 2 == 1 ? 4.0 : 2.0);
    m_simpson[q] = w * dy / 3.0;
  }

  m_kernel.resize(shifts * m_ypoints * m_levels);
  const double dt = axis.dt;
  for (std::size_t s = 0; s < shifts; ++s)
    for (std::size_t q = 0; q <= P; ++q) {
      const double y = m_shifts[s] + static_cast<double>(q) * dy;
      double* row = &m_kernel[(s * m_ypoints + q) * m_levels];
      for (std::size_t m = 0; m < m_levels; ++m) {
        const double trap = (m == 0 || m + 1 == m_levels) ? 0.5 * dt : dt;
        row[m] = trap * std::exp(-y * axis.t(m));
      }
    }
}

double LaplaceSeminorm::squared(std::span<const double> series) const {
  if (series.size() != m_levels) throw std::invalid_argument("seminorm: series length mismatch");
  double best = 0.0;
  for (std::size_t s = 0; s < m_shifts.size(); ++s) {
    double integral = 0.0;
    for (std::size_t q = 0; q < m_ypoints; ++q) {
      const double* row = &m_kernel[(s * m_ypoints + q) * m_levels];
      double transform = 0.0;
      for (std::size_t m = 0; m < m_levels; ++m) transform += row[m] * series[m];
      integral += m_simpson[q] * transform * transform;
    }
    best = std::max(best, integral);
  }
  return best;
}

double LaplaceSeminorm::operator()(std::span<const double> series) const {
  return std::sqrt(squared(series));
}

double laplace_seminorm(std::span<const double> series, const TimeAxis& axis, double alpha,
                        const SeminormOptions& options) {
  return LaplaceSeminorm(axis, alpha, options)(series);
}

double integrated_seminorm(const SpaceTimeField& e, double h, const LaplaceSeminorm& seminorm) {
  const std::size_t n = e.nodes();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 * h : h;
    total += w * seminorm.squared(e.series(i));
  }
  return total;
}

RateFit fit_contraction_rate(std::span<const double> history, std::size_t window) {
  if (history.size() < 3) throw std::invalid_argument("rate fit: need at least 3 entries");
  const std::size_t w = std::clamp<std::size_t>(window, 3, history.size());
  const std::size_t start = history.size() - w;

  RateFit fit;
  fit.points = w;
  for (std::size_t k = start; k < history.size(); ++k)
    if (history[k] == 0.0) {
      fit.zero_hit = true;
      return fit;
    }

  double kbar[2] = {0.0, 0.0}, ybar[2] = {0.0, 0.0};
  std::size_t count[2] = {0, 0};
  for (std::size_t k = start; k < history.size(); ++k) {
    const std::size_t g = k % 2;
    kbar[g] += static_cast<double>(k);
    ybar[g] += std::log(history[k]);
    ++count[g];
  }
  for (int g = 0; g < 2; ++g)
    if (count[g] > 0) {
      kbar[g] /= static_cast<double>(count[g]);
      ybar[g] /= static_cast<double>(count[g]);
    }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = start; k < history.size(); ++k) {
    const std::size_t g = k % 2;
    const double dk = static_cast<double>(k) - kbar[g];
    sxy += dk * (std::log(history[k]) - ybar[g]);
    sxx += dk * dk;
  }
  const double slope = sxy / sxx;
  fit.per_iteration = std::exp(slope);
  fit.per_double = std::exp(2.0 * slope);
  return fit;
}

}  // namespace schwarz
