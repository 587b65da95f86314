#pragma once

// Independent helpers for the test suites: a dense elimination solver, order
// estimates and a few closed-form fields.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "schwarz/discretize.hpp"
#include "schwarz/geometry.hpp"

namespace testing {

inline constexpr double pi = std::numbers::pi;

/// Gaussian elimination with partial pivoting on a dense copy of `sys`.
inline std::vector<double> dense_solve(const schwarz::BandedSystem& sys) {
  const std::size_t n = sys.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] = sys.main[i];
    if (i > 0) m[i][i - 1] = sys.sub[i];
    if (i + 1 < n) m[i][i + 1] = sys.super[i];
    m[i][n] = sys.rhs[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    std::swap(m[c], m[piv]);
    if (m[c][c] == 0.0) throw std::runtime_error("dense_solve: singular");
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r][c] / m[c][c];
      for (std::size_t j = c; j <= n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = m[i][n];
    for (std::size_t j = i + 1; j < n; ++j) s -= m[i][j] * x[j];
    x[i] = s / m[i][i];
  }
  return x;
}

/// (A x)_i for the tridiagonal system.
inline std::vector<double> apply(const schwarz::BandedSystem& sys, std::span<const double> x) {
  const std::size_t n = sys.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = sys.main[i] * x[i];
    if (i > 0) y[i] += sys.sub[i] * x[i - 1];
    if (i + 1 < n) y[i] += sys.super[i] * x[i + 1];
  }
  return y;
}

inline double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

/// log2 of successive error ratios for refinements by a factor of 2.
inline std::vector<double> observed_orders(const std::vector<double>& errors) {
  std::vector<double> out;
  for (std::size_t i = 1; i < errors.size(); ++i) out.push_back(std::log2(errors[i - 1] / errors[i]));
  return out;
}

inline schwarz::Grid single_grid(double length, std::size_t cells) {
  const schwarz::Partition p(length, {{0.0, length}});
  return schwarz::build_grid(p, length / static_cast<double>(cells));
}

}  // namespace testing
