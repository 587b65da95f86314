#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "schwarz/norms.hpp"
#include "support.hpp"

using namespace schwarz;

namespace {

TimeAxis axis_of(double T, std::size_t steps) { return {T, steps, T / static_cast<double>(steps)}; }

std::vector<double> series_of(const TimeAxis& axis, const std::function<double(double)>& f) {
  std::vector<double> s(axis.levels());
  for (std::size_t m = 0; m < s.size(); ++m) s[m] = f(axis.t(m));
  return s;
}

}  // namespace

TEST_CASE("weighted sup norm") {
  const TimeAxis axis = axis_of(2.0, 200);
  const double alpha = 10.0;
  SpaceTimeField ones(5, axis.levels(), 1.0), zeros(5, axis.levels(), 0.0), grow(5, axis.levels());
  for (std::size_t m = 0; m < axis.levels(); ++m)
    for (std::size_t i = 0; i < 5; ++i) grow.at(i, m) = std::exp(alpha * axis.t(m) / 2.0);
  CHECK(weighted_sup_norm(ones, axis, alpha) == 1.0);
  CHECK(weighted_sup_norm(ones, axis, 0.3) == 1.0);
  CHECK(weighted_sup_norm(zeros, axis, alpha) == 0.0);
  CHECK(weighted_sup_norm(grow, axis, alpha) == doctest::Approx(1.0).epsilon(1e-12));

  SpaceTimeField spike(3, axis.levels(), 0.0);
  spike.at(1, 100) = 2.0;  // t = 1
  CHECK(weighted_sup_norm(spike, axis, alpha) == doctest::Approx(4.0 * std::exp(-alpha)));
}

TEST_CASE("Laplace seminorm of exp(-beta t) matches the closed form") {
  const double alpha = 10.0;
  const TimeAxis axis = axis_of(2.0, 20000);  // dt = 1e-4
  for (double beta : {0.0, 1.0, 3.5}) {
    const auto f = series_of(axis, [&](double t) { return std::exp(-beta * t); });
    const double exact = 1.0 / (beta + alpha) - 1.0 / (beta + alpha + 1.0);
    const double got = laplace_seminorm(f, axis, alpha);
    INFO("beta = " << beta);
    CHECK(std::abs(got * got - exact) <= 1e-6 * exact);
    const LaplaceSeminorm norm(axis, alpha);
    CHECK(norm.squared(f) == doctest::Approx(got * got).epsilon(1e-13));
    CHECK(norm.shifts().front() == alpha);
    CHECK(norm.shifts().back() == doctest::Approx(10.0 * alpha));
    CHECK(norm.shifts().size() == 8);
  }
}

TEST_CASE("Laplace seminorm is a seminorm") {
  const TimeAxis axis = axis_of(2.0, 400);
  const LaplaceSeminorm norm(axis, 10.0);
  CHECK(norm(std::vector<double>(axis.levels(), 0.0)) == 0.0);
  std::mt19937_64 rng(23);
  std::normal_distribution<double> N(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> f(axis.levels()), g(axis.levels()), cf(axis.levels()), sum(axis.levels());
    const double c = 5.0 * N(rng);
    for (std::size_t m = 0; m < f.size(); ++m) {
      f[m] = N(rng);
      g[m] = N(rng);
      cf[m] = c * f[m];
      sum[m] = f[m] + g[m];
    }
    CHECK(norm(cf) == doctest::Approx(std::abs(c) * norm(f)).epsilon(1e-12));
    CHECK(norm(sum) <= norm(f) + norm(g) + 1e-14);
  }
}

TEST_CASE("integrated seminorm separates in x") {
  const TimeAxis axis = axis_of(2.0, 2000);
  const LaplaceSeminorm norm(axis, 10.0);
  const std::size_t nodes = 21;
  const double h = 0.05;
  SpaceTimeField e(nodes, axis.levels());
  for (std::size_t m = 0; m < axis.levels(); ++m)
    for (std::size_t i = 0; i < nodes; ++i) e.at(i, m) = (1.0 + i * h) * std::exp(-axis.t(m));
  double trap = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    const double g = 1.0 + i * h;
    trap += (i == 0 || i + 1 == nodes ? 0.5 : 1.0) * h * g * g;
  }
  const auto f = series_of(axis, [](double t) { return std::exp(-t); });
  CHECK(integrated_seminorm(e, h, norm) == doctest::Approx(trap * norm.squared(f)).epsilon(1e-12));
}

TEST_CASE("contraction rate fit") {
  SUBCASE("geometric decay") {
    std::vector<double> E;
    for (int k = 0; k < 30; ++k) E.push_back(std::pow(0.5, k));
    const RateFit fit = fit_contraction_rate(E, 10);
    CHECK(fit.per_iteration == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fit.per_double == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(fit.points == 10);
    CHECK_FALSE(fit.zero_hit);
  }
  SUBCASE("geometric growth") {
    std::vector<double> E;
    for (int k = 0; k < 30; ++k) E.push_back(std::pow(2.0, k));
    CHECK(fit_contraction_rate(E, 10).per_iteration == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("noisy decay") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> eps(-0.01, 0.01);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> E;
      for (int k = 0; k < 40; ++k) E.push_back(std::pow(0.5, k) * (1.0 + eps(rng)));
      const double r = fit_contraction_rate(E, 10).per_iteration;
      CHECK(r >= 0.49);
      CHECK(r <= 0.51);
    }
  }
  SUBCASE("alternating amplitudes do not bias the slope") {
    std::vector<double> E;
    for (int k = 0; k < 30; ++k) E.push_back((k % 2 ? 7.0 : 1.0) * std::pow(0.6, k));
    CHECK(fit_contraction_rate(E, 11).per_iteration == doctest::Approx(0.6).epsilon(1e-12));
  }
  SUBCASE("exact zero") {
    const std::vector<double> E = {1.0, 0.5, 0.0, 0.0};
    const RateFit fit = fit_contraction_rate(E, 10);
    CHECK(fit.zero_hit);
    CHECK(fit.per_iteration == 0.0);
  }
  SUBCASE("too short a history") {
    CHECK_THROWS(fit_contraction_rate(std::vector<double>{1.0, 0.5}, 10));
  }
  SUBCASE("window larger than the history uses everything") {
    std::vector<double> E;
    for (int k = 0; k < 6; ++k) E.push_back(std::pow(0.3, k));
    const RateFit fit = fit_contraction_rate(E, 100);
    CHECK(fit.points == 6);
    CHECK(fit.per_iteration == doctest::Approx(0.3).epsilon(1e-12));
  }
}
