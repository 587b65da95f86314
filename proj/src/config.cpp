#include "schwarz/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace schwarz {

using nlohmann::json;

namespace {

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items())
    if (!ok.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  return j.get<double>();
}

double number_or(const json& obj, const char* key, double fallback, const std::string& where) {
  return obj.contains(key) ? number(obj.at(key), where + "." + key) : fallback;
}

/// Single-key object {"kind": payload}, or a bare string naming the kind.
std::pair<std::string, json> tagged(const json& j, const std::string& where) {
  if (j.is_string()) return {j.get<std::string>(), json::object()};
  if (j.is_object() && j.size() == 1) return {j.begin().key(), j.begin().value()};
  throw ConfigError(where + ": expected a string or a single-key object");
}

CoefficientFn coefficient_from_json(const json& j, const std::string& where) {
  if (j.is_number()) return CoefficientFn::constant(j.get<double>());
  const auto [kind, body] = tagged(j, where);
  if (kind == "constant") return CoefficientFn::constant(number(body, where + ".constant"));
  if (kind == "polynomial") {
    if (!body.is_array() || body.empty()) throw ConfigError(where + ".polynomial: expected coefficients");
    std::vector<double> c;
    for (const auto& v : body) c.push_back(number(v, where + ".polynomial"));
    return CoefficientFn::polynomial(std::move(c));
  }
  if (kind == "scaled_exp") {
    check_keys(body, {"scale", "rate"}, where + ".scaled_exp");
    return CoefficientFn::scaled_exp(number_or(body, "scale", 1.0, where),
                                     number_or(body, "rate", 0.0, where));
  }
  throw ConfigError(where + ": unknown coefficient kind '" + kind + "'");
}

json coefficient_to_json(const CoefficientFn& c) {
  switch (c.kind()) {
    case CoefficientFn::Kind::constant:
      return {{"constant", c.params()[0]}};
    case CoefficientFn::Kind::polynomial:
      return {{"polynomial", c.params()}};
    case CoefficientFn::Kind::scaled_exp:
      return {{"scaled_exp", {{"scale", c.params()[0]}, {"rate", c.params()[1]}}}};
  }
  return nullptr;
}

Nonlinearity nonlinearity_from_json(const json& j, const std::string& where) {
  const auto [kind, body] = tagged(j, where);
  if (kind == "zero") return Nonlinearity::zero();
  if (kind == "linear") return Nonlinearity::linear(number(body, where + ".linear"));
  if (kind == "sine") return Nonlinearity::sine(number(body, where + ".sine"));
  if (kind == "named") {
    if (!body.is_string()) throw ConfigError(where + ".named: expected a name");
    try {
      return Nonlinearity::named(body.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  throw ConfigError(where + ": unknown nonlinearity kind '" + kind + "'");
}

json nonlinearity_to_json(const Nonlinearity& n) {
  switch (n.kind()) {
    case Nonlinearity::Kind::zero:
      return "zero";
    case Nonlinearity::Kind::linear:
      return {{"linear", n.parameter()}};
    case Nonlinearity::Kind::sine:
      return {{"sine", n.parameter()}};
    case Nonlinearity::Kind::named:
      return {{"named", n.name()}};
  }
  return nullptr;
}

Partition partition_from_json(const json& j, double length) {
  const auto [kind, body] = tagged(j, "partition");
  if (kind == "uniform") {
    check_keys(body, {"I", "overlap"}, "partition.uniform");
    if (!body.contains("I") || !body.at("I").is_number_integer())
      throw ConfigError("partition.uniform.I: expected an integer");
    const auto count = body.at("I").get<long>();
    if (count < 1) throw ConfigError("partition.uniform.I: must be positive");
    try {
      return build_uniform_partition(length, static_cast<std::size_t>(count),
                                     number_or(body, "overlap", 0.0, "partition.uniform"));
    } catch (const GeometryError& e) {
      throw PartitionRuleError(std::string("partition: ") + e.what());
    }
  }
  if (kind == "intervals") {
    if (!body.is_array() || body.empty()) throw ConfigError("partition.intervals: expected a list");
    std::vector<Interval> parts;
    for (const auto& iv : body) {
      if (!iv.is_array() || iv.size() != 2) throw ConfigError("partition.intervals: expected [left, right]");
      parts.push_back({number(iv[0], "partition.intervals"), number(iv[1], "partition.intervals")});
    }
    return Partition(length, std::move(parts));
  }
  throw ConfigError("partition: unknown kind '" + kind + "'");
}

InitialGuess guess_from_json(const json& j) {
  const auto [kind, body] = tagged(j, "initial_guess");
  if (kind == "zero") return InitialGuess::zero();
  if (kind == "reference") return InitialGuess::reference();
  if (kind == "constant") return InitialGuess::constant(number(body, "initial_guess.constant"));
  if (kind == "sine") {
    check_keys(body, {"mode", "amplitude"}, "initial_guess.sine");
    const auto mode = body.contains("mode") ? body.at("mode").get<int>() : 1;
    return InitialGuess::sine(mode, number_or(body, "amplitude", 1.0, "initial_guess.sine"));
  }
  throw ConfigError("initial_guess: unknown kind '" + kind + "'");
}

}  // namespace

ProblemSpec problem_from_json(const json& j) {
  std::string id;
  json body = json::object();
  if (j.is_string()) {
    id = j.get<std::string>();
  } else {
    check_keys(j, {"catalog", "length", "horizon", "diffusion", "advection", "reaction",
                   "ellipticity", "nonlinearity"},
               "problem");
    if (!j.contains("catalog") || !j.at("catalog").is_string())
      throw ConfigError("problem.catalog: expected a catalog id");
    id = j.at("catalog").get<std::string>();
    body = j;
  }
  ProblemSpec spec;
  try {
    spec = catalog_lookup(id);
  } catch (const UnknownProblemError& e) {
    throw ConfigError(std::string("problem: ") + e.what());
  }
  spec.length = number_or(body, "length", spec.length, "problem");
  spec.horizon = number_or(body, "horizon", spec.horizon, "problem");
  spec.ellipticity = number_or(body, "ellipticity", spec.ellipticity, "problem");
  if (body.contains("diffusion")) spec.diffusion = coefficient_from_json(body["diffusion"], "problem.diffusion");
  if (body.contains("advection")) spec.advection = coefficient_from_json(body["advection"], "problem.advection");
  if (body.contains("reaction")) spec.reaction = coefficient_from_json(body["reaction"], "problem.reaction");
  if (body.contains("nonlinearity"))
    spec.nonlinearity = nonlinearity_from_json(body["nonlinearity"], "problem.nonlinearity");
  return spec;
}

json problem_to_json(const ProblemSpec& spec) {
  json j = {{"catalog", spec.id},
            {"length", spec.length},
            {"diffusion", coefficient_to_json(spec.diffusion)},
            {"advection", coefficient_to_json(spec.advection)},
            {"reaction", coefficient_to_json(spec.reaction)},
            {"ellipticity", spec.ellipticity},
            {"nonlinearity", nonlinearity_to_json(spec.nonlinearity)}};
  if (spec.mode == Mode::parabolic) j["horizon"] = spec.horizon;
  return j;
}

TransmissionSpec transmission_from_json(const json& j) {
  const auto [kind, body] = tagged(j, "transmission");
  if (kind == "dirichlet") {
    if (!body.empty()) throw ConfigError("transmission.dirichlet: takes no parameters");
    return TransmissionSpec::dirichlet();
  }
  TransmissionSpec spec;
  if (kind == "robin") {
    check_keys(body, {"p", "interfaces"}, "transmission.robin");
    spec = TransmissionSpec::robin(number_or(body, "p", 1.0, "transmission.robin"));
  } else if (kind == "scaled_robin") {
    check_keys(body, {"p", "rho", "interfaces"}, "transmission.scaled_robin");
    spec = TransmissionSpec::scaled_robin(number_or(body, "p", 1.0, "transmission.scaled_robin"),
                                          number_or(body, "rho", 1.0, "transmission.scaled_robin"));
  } else {
    throw ConfigError("transmission: unknown kind '" + kind + "'");
  }
  if (body.contains("interfaces")) {
    const std::string where = "transmission." + kind + ".interfaces";
    if (!body["interfaces"].is_array()) throw ConfigError(where + ": expected a list");
    for (const auto& entry : body["interfaces"]) {
      check_keys(entry, {"receiver", "donor", "p"}, where);
      const auto receiver = entry.value("receiver", 0);
      const auto donor = entry.value("donor", 0);
      if (receiver < 1 || donor < 1) throw ConfigError(where + ": indices are 1-based");
      spec.set_p(static_cast<std::size_t>(receiver - 1), static_cast<std::size_t>(donor - 1),
                 number_or(entry, "p", 0.0, where));
    }
  }
  return spec;
}

json transmission_to_json(const TransmissionSpec& spec) {
  if (spec.kind() == TransmissionSpec::Kind::dirichlet) return "dirichlet";
  json body = {{"p", spec.default_p()}};
  if (spec.kind() == TransmissionSpec::Kind::scaled_robin) body["rho"] = spec.rho();
  if (!spec.overrides().empty()) {
    json list = json::array();
    for (const auto& [key, p] : spec.overrides())
      list.push_back({{"receiver", key.first + 1}, {"donor", key.second + 1}, {"p", p}});
    body["interfaces"] = list;
  }
  return {{to_string(spec.kind()), body}};
}

RunConfig parse_config(const json& doc) {
  check_keys(doc, {"schema", "problem", "partition", "grid", "transmission", "initial_guess",
                   "iteration", "sweep"},
             "config");
  if (!doc.contains("schema") || !doc["schema"].is_number_integer() ||
      doc["schema"].get<int>() != kConfigSchema)
    throw ConfigError("config: 'schema' must be " + std::to_string(kConfigSchema));
  for (const char* key : {"problem", "partition"})
    if (!doc.contains(key)) throw ConfigError(std::string("config: missing '") + key + "'");

  RunConfig rc;
  rc.document = doc;
  SchwarzConfig& cfg = rc.schwarz;
  cfg.problem = problem_from_json(doc["problem"]);
  rc.problem_id = cfg.problem.id;
  cfg.partition = partition_from_json(doc["partition"], cfg.problem.length);

  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    check_keys(g, {"h", "dt"}, "grid");
    cfg.h = number_or(g, "h", cfg.h, "grid");
    cfg.dt = number_or(g, "dt", cfg.dt, "grid");
  }
  if (doc.contains("transmission")) cfg.transmission = transmission_from_json(doc["transmission"]);
  if (doc.contains("initial_guess")) cfg.initial_guess = guess_from_json(doc["initial_guess"]);

  if (doc.contains("iteration")) {
    const json& it = doc["iteration"];
    check_keys(it, {"max_iters", "stop_tol", "alpha", "fit_window", "divergence_factor", "threads",
                    "picard_tol", "picard_max"},
               "iteration");
    cfg.max_iters = static_cast<int>(number_or(it, "max_iters", cfg.max_iters, "iteration"));
    cfg.stop_tol = number_or(it, "stop_tol", cfg.stop_tol, "iteration");
    cfg.alpha = number_or(it, "alpha", cfg.alpha, "iteration");
    cfg.fit_window = static_cast<std::size_t>(number_or(it, "fit_window", 10, "iteration"));
    cfg.divergence_factor = number_or(it, "divergence_factor", cfg.divergence_factor, "iteration");
    cfg.threads = static_cast<std::size_t>(number_or(it, "threads", 1, "iteration"));
    cfg.picard.tol = number_or(it, "picard_tol", cfg.picard.tol, "iteration");
    cfg.picard.max_iters = static_cast<int>(number_or(it, "picard_max", cfg.picard.max_iters, "iteration"));
  }

  if (doc.contains("sweep")) {
    const json& s = doc["sweep"];
    check_keys(s, {"axes"}, "sweep");
    if (!s.contains("axes") || !s["axes"].is_array()) throw ConfigError("sweep.axes: expected a list");
    for (const auto& axis : s["axes"]) {
      check_keys(axis, {"name", "values"}, "sweep.axes");
      SweepAxis a;
      if (!axis.contains("name") || !axis["name"].is_string())
        throw ConfigError("sweep.axes: every axis needs a name");
      a.name = axis["name"].get<std::string>();
      if (!axis.contains("values") || !axis["values"].is_array() || axis["values"].empty())
        throw ConfigError("sweep.axes." + a.name + ": values must be a nonempty list");
      for (const auto& v : axis["values"]) a.values.push_back(v);
      with_value(doc, a.name, a.values.front());  // path must exist
      rc.sweep.push_back(std::move(a));
    }
  }
  return rc;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  try {
    return parse_config(doc);
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
}

json with_value(const json& doc, const std::string& path, const json& value) {
  json out = doc;
  json* node = &out;
  std::stringstream ss(path);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  if (parts.empty()) throw ConfigError("sweep: empty axis name");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!node->is_object() || !node->contains(parts[i]))
      throw ConfigError("sweep: axis '" + path + "' does not name an existing config field");
    node = &(*node)[parts[i]];
  }
  *node = value;
  return out;
}

std::optional<oracle::AnalyticCase> analytic_case(const RunConfig& cfg) {
  const SchwarzConfig& s = cfg.schwarz;
  if (cfg.problem_id != "example31" || s.partition.size() != 2) return std::nullopt;
  const auto kind = s.transmission.kind();
  if (kind == TransmissionSpec::Kind::dirichlet) return std::nullopt;
  const auto& d = s.problem;
  if (d.diffusion != CoefficientFn::constant(1.0) || d.advection != CoefficientFn::constant(3.0) ||
      d.reaction != CoefficientFn::constant(4.0) || !d.nonlinearity.is_zero())
    return std::nullopt;
  const Interval& first = s.partition.subdomain(0);
  const Interval& second = s.partition.subdomain(1);
  if (first.left != 0.0 || second.right != s.partition.length()) return std::nullopt;
  oracle::AnalyticCase c;
  c.L = s.partition.length();
  c.L1 = second.left;
  c.L2 = first.right;
  c.p = s.transmission.p(0, 1);
  c.q = s.transmission.p(1, 0);
  if (kind == TransmissionSpec::Kind::scaled_robin) c.rho = s.transmission.rho();
  return c;
}

std::optional<double> oracle_rate(const RunConfig& cfg) {
  if (const auto c = analytic_case(cfg)) {
    try {
      return oracle::tau_factors(*c).tau;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  const SchwarzConfig& s = cfg.schwarz;
  if (cfg.problem_id == "laplace1d" && s.partition.size() == 2 &&
      s.transmission.kind() == TransmissionSpec::Kind::dirichlet &&
      s.problem.advection == CoefficientFn::constant(0.0) &&
      s.problem.reaction == CoefficientFn::constant(0.0) && s.problem.nonlinearity.is_zero()) {
    const Interval& first = s.partition.subdomain(0);
    const Interval& second = s.partition.subdomain(1);
    if (first.left != 0.0 || second.right != s.partition.length()) return std::nullopt;
    try {
      return oracle::classical_laplace_rate(s.partition.length(), second.left, first.right);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace schwarz
