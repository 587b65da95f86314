#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "schwarz/discretize.hpp"
#include "schwarz/geometry.hpp"
#include "schwarz/norms.hpp"
#include "schwarz/problem.hpp"
#include "schwarz/transmission.hpp"

namespace schwarz {

enum class Verdict { converged, diverged, stalled };
enum class NormKind { sup, weighted_sup, laplace_seminorm };

std::string to_string(Verdict v);
std::string to_string(NormKind n);

struct SchwarzConfig {
  ProblemSpec problem;
  Partition partition;
  double h = 1e-2;
  double dt = 1e-2;  // parabolic only
  TransmissionSpec transmission = TransmissionSpec::dirichlet();
  InitialGuess initial_guess = InitialGuess::zero();

  int max_iters = 100;
  double stop_tol = 1e-10;
  /// Weight exp(-alpha t) and seminorm shift (parabolic).
  double alpha = 10.0;

  PicardOptions picard;
  SeminormOptions seminorm;
  std::size_t fit_window = 10;
  /// Stop as diverged once E^k > divergence_factor * E^1.
  double divergence_factor = 1e6;
  /// Concurrent subdomain solves per sweep; results do not depend on it.
  std::size_t threads = 1;
  /// Keep every error field in the history.
  bool record_fields = false;

  std::vector<std::string> validate(const ValidationOptions& problem_checks = {}) const;
};

struct IterationRecord {
  std::size_t k = 0;
  std::vector<double> subdomain_norms;
  double E = 0.0;
  /// Subdomain with the largest contribution (0-based).
  std::size_t argmax = 0;
  double rate = 0.0;
  double rate_double = 0.0;
  double wall_seconds = 0.0;
};

struct IterationHistory {
  NormKind norm = NormKind::sup;
  /// records[k] for k = 0 (initial guess) .. iterations.
  std::vector<IterationRecord> records;
  std::size_t iterations = 0;
  Verdict verdict = Verdict::stalled;
  bool guard_triggered = false;
  RateFit fitted;
  double wall_seconds = 0.0;
  std::vector<std::string> warnings;

  std::vector<std::vector<Field>> elliptic_errors;
  std::vector<std::vector<SpaceTimeField>> parabolic_errors;

  std::vector<double> E() const;
};

class SchwarzError : public std::runtime_error {
public:
  SchwarzError(const std::string& what, std::size_t k, std::size_t l)
      : std::runtime_error(what), m_k(k), m_l(l) {}
  std::size_t iteration() const { return m_k; }
  std::size_t subdomain() const { return m_l; }

private:
  std::size_t m_k, m_l;
};

/// Parallel (Jacobi) Schwarz for the elliptic problem: every subdomain reads
/// its transmission data from the neighbors' iterate k-1. E^k is the max over
/// subdomains of ||u_l^k - u||_inf against the discrete monodomain solution.
IterationHistory run_elliptic(const SchwarzConfig& cfg);

/// Schwarz waveform relaxation over the whole time window. Dirichlet runs use
/// max_l ||e_l^2 exp(-alpha t)||_inf, Robin runs sum_l int |e_l|_alpha^2 dx.
IterationHistory run_parabolic(const SchwarzConfig& cfg);

IterationHistory run(const SchwarzConfig& cfg);

/// Columns: k,l,norm,E_k,rate,rate_double,verdict,wall_s with one row per
/// iteration k >= 1 and l the 1-based subdomain attaining E^k. The verdict
/// column reads "running" until the final row.
void write_history_csv(std::ostream& os, const IterationHistory& history);

}  // namespace schwarz
