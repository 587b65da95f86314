#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "schwarz/engine.hpp"
#include "schwarz/oracle.hpp"

namespace schwarz {

inline constexpr int kConfigSchema = 1;

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A uniform partition request that breaks a partition rule.
class PartitionRuleError : public ConfigError {
public:
  using ConfigError::ConfigError;
};

struct SweepAxis {
  /// Dotted path into the config document, e.g. "transmission.scaled_robin.rho".
  std::string name;
  std::vector<nlohmann::json> values;
};

/// Everything in SchwarzConfig plus the sweep description and the source
/// document the config was read from.
struct RunConfig {
  SchwarzConfig schwarz;
  std::string problem_id;
  std::vector<SweepAxis> sweep;
  nlohmann::json document;
};

/// Config document layout (schema 1):
///
///   { "schema": 1,
///     "problem": "example31" | { "catalog": id, "length": .., "horizon": ..,
///                                "diffusion": coef, "advection": coef,
///                                "reaction": coef, "ellipticity": ..,
///                                "nonlinearity": nl },
///     "partition": { "uniform": { "I": n, "overlap": d } }
///                | { "intervals": [[l, r], ...] },
///     "grid": { "h": .., "dt": .. },
///     "transmission": "dirichlet"
///                   | { "robin": { "p": .., "interfaces": [{ "receiver": 1, "donor": 2, "p": .. }] } }
///                   | { "scaled_robin": { "p": .., "rho": .., "interfaces": [...] } },
///     "initial_guess": "zero" | "reference" | { "constant": v }
///                    | { "sine": { "mode": k, "amplitude": a } },
///     "iteration": { "max_iters", "stop_tol", "alpha", "fit_window",
///                    "divergence_factor", "threads", "picard_tol", "picard_max" },
///     "sweep": { "axes": [{ "name": "a.b.c", "values": [...] }] } }
///
/// coef is a number, { "constant": v }, { "polynomial": [c0, c1, ..] } or
/// { "scaled_exp": { "scale": s, "rate": r } }; nl is "zero",
/// { "linear": s }, { "sine": a } or { "named": "tanh" | "arctan" }.
/// Subdomain indices in the document are 1-based.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

/// Problem section: catalog id plus the declarative fields. Source, boundary
/// and initial data always come from the catalog entry.
nlohmann::json problem_to_json(const ProblemSpec& spec);
ProblemSpec problem_from_json(const nlohmann::json& j);

nlohmann::json transmission_to_json(const TransmissionSpec& spec);
TransmissionSpec transmission_from_json(const nlohmann::json& j);

/// Returns a copy of `doc` with the dotted path replaced; the path must exist.
nlohmann::json with_value(const nlohmann::json& doc, const std::string& path,
                          const nlohmann::json& value);

/// Example 3.1 oracle parameters when the config is the two-subdomain Robin
/// splitting of example31, nullopt otherwise.
std::optional<oracle::AnalyticCase> analytic_case(const RunConfig& cfg);

/// Closed-form per-double-sweep rate when one applies: tau for the example31
/// Robin splitting, the classical factor for laplace1d with two subdomains
/// and Dirichlet transmission.
std::optional<double> oracle_rate(const RunConfig& cfg);

}  // namespace schwarz
