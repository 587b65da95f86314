#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "schwarz/cli.hpp"

using namespace schwarz;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& tag) {
  static std::mt19937_64 rng(std::random_device{}());
  fs::path dir = fs::temp_directory_path() / ("schwarz-cli-" + tag + "-" + std::to_string(rng()));
  fs::create_directories(dir);
  return dir;
}

std::string write_config(const fs::path& dir, const json& doc, const std::string& name = "cfg.json") {
  const fs::path path = dir / name;
  std::ofstream(path) << doc.dump(2);
  return path.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (char c : line) {
      if (c == '"') quoted = !quoted;
      else if (c == ',' && !quoted) {
        cells.push_back(cell);
        cell.clear();
      } else cell += c;
    }
    cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

json laplace_doc() {
  return json::parse(R"({
    "schema": 1,
    "problem": "laplace1d",
    "partition": { "intervals": [[0.0, 1.2], [0.8, 2.0]] },
    "grid": { "h": 0.01 },
    "transmission": "dirichlet",
    "initial_guess": { "constant": 1.0 },
    "iteration": { "max_iters": 200, "stop_tol": 1e-12 }
  })");
}

json divergent_doc() {
  return json::parse(R"({
    "schema": 1,
    "problem": "example31",
    "partition": { "intervals": [[0.0, 1.95], [1.9, 2.0]] },
    "grid": { "h": 0.001 },
    "transmission": { "robin": { "p": 1.0, "interfaces": [
      { "receiver": 1, "donor": 2, "p": 1.0 }, { "receiver": 2, "donor": 1, "p": 50.0 } ] } },
    "initial_guess": { "sine": { "mode": 1, "amplitude": 1.0 } },
    "iteration": { "max_iters": 1000 }
  })");
}

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("full document") {
    const RunConfig cfg = parse_config(divergent_doc());
    CHECK(cfg.problem_id == "example31");
    CHECK(cfg.schwarz.partition.size() == 2);
    CHECK(cfg.schwarz.h == 0.001);
    CHECK(cfg.schwarz.transmission.kind() == TransmissionSpec::Kind::robin);
    CHECK(cfg.schwarz.transmission.p(0, 1) == 1.0);
    CHECK(cfg.schwarz.transmission.p(1, 0) == 50.0);
    CHECK(cfg.schwarz.initial_guess.kind == InitialGuess::Kind::sine);
    CHECK(cfg.schwarz.max_iters == 1000);
    CHECK(cfg.sweep.empty());
  }
  SUBCASE("uniform partition and iteration block") {
    json doc = laplace_doc();
    doc["partition"] = {{"uniform", {{"I", 3}, {"overlap", 0.1}}}};
    doc["iteration"] = {{"alpha", 4.0}, {"threads", 2}, {"picard_tol", 1e-9}, {"picard_max", 50},
                        {"fit_window", 6}, {"divergence_factor", 1e3}};
    const RunConfig cfg = parse_config(doc);
    CHECK(cfg.schwarz.partition.size() == 3);
    CHECK(cfg.schwarz.alpha == 4.0);
    CHECK(cfg.schwarz.threads == 2);
    CHECK(cfg.schwarz.picard.tol == 1e-9);
    CHECK(cfg.schwarz.picard.max_iters == 50);
    CHECK(cfg.schwarz.fit_window == 6);
    CHECK(cfg.schwarz.divergence_factor == 1e3);
  }
  SUBCASE("rejections") {
    json doc = laplace_doc();
    doc["unexpected"] = 1;
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
    doc = laplace_doc();
    doc["schema"] = 2;
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
    doc = laplace_doc();
    doc.erase("partition");
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
    doc = laplace_doc();
    doc["problem"] = "nope";
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
    doc = laplace_doc();
    doc["transmission"] = {{"ventcell", {{"p", 1}}}};
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
    doc = laplace_doc();
    doc["sweep"] = {{"axes", {{{"name", "grid.nope"}, {"values", {1, 2}}}}}};
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
    doc = laplace_doc();
    doc["sweep"] = {{"axes", {{{"name", "grid.h"}, {"values", json::array()}}}}};
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
    doc = laplace_doc();
    doc["partition"] = {{"uniform", {{"I", 3}, {"overlap", 0.5}}}};
    CHECK_THROWS_AS(parse_config(doc), PartitionRuleError);
  }
}

TEST_CASE("serialization round trips") {
  for (const auto& id : catalog_ids()) {
    ProblemSpec p = catalog_lookup(id);
    const json j = problem_to_json(p);
    const ProblemSpec q = problem_from_json(j);
    CHECK(q.id == p.id);
    CHECK(q.diffusion == p.diffusion);
    CHECK(q.advection == p.advection);
    CHECK(q.reaction == p.reaction);
    CHECK(q.nonlinearity == p.nonlinearity);
    CHECK(q.length == p.length);
    CHECK(q.horizon == p.horizon);
    CHECK(problem_to_json(q) == j);
  }
  const ProblemSpec custom = problem_from_json(json::parse(R"({
    "catalog": "laplace1d", "reaction": { "polynomial": [1, 2] },
    "nonlinearity": { "named": "arctan" }, "length": 3 })"));
  CHECK(custom.reaction == CoefficientFn::polynomial({1, 2}));
  CHECK(custom.nonlinearity == Nonlinearity::named("arctan"));
  CHECK(custom.length == 3.0);

  auto robin = TransmissionSpec::scaled_robin(2.0, 8.0);
  robin.set_p(1, 0, 50.0);
  for (const auto& t : {TransmissionSpec::dirichlet(), TransmissionSpec::robin(1.5), robin}) {
    const TransmissionSpec back = transmission_from_json(transmission_to_json(t));
    CHECK(back.kind() == t.kind());
    CHECK(back.default_p() == t.default_p());
    CHECK(back.rho() == t.rho());
    CHECK(back.overrides() == t.overrides());
  }
}

TEST_CASE("with_value") {
  const json doc = divergent_doc();
  const json moved = with_value(doc, "grid.h", 0.002);
  CHECK(moved["grid"]["h"] == 0.002);
  CHECK(doc["grid"]["h"] == 0.001);
  CHECK_THROWS_AS(with_value(doc, "grid.dt", 0.1), ConfigError);
  CHECK_THROWS_AS(with_value(doc, "", 0.1), ConfigError);
}

TEST_CASE("oracle hooks") {
  const RunConfig divergent = parse_config(divergent_doc());
  const auto c = analytic_case(divergent);
  REQUIRE(c.has_value());
  CHECK(c->L == 2.0);
  CHECK(c->L1 == 1.9);
  CHECK(c->L2 == 1.95);
  CHECK(c->p == 1.0);
  CHECK(c->q == 50.0);
  CHECK_FALSE(c->rho.has_value());
  CHECK(*oracle_rate(divergent) == doctest::Approx(1.2077311921632212));

  const RunConfig laplace = parse_config(laplace_doc());
  CHECK_FALSE(analytic_case(laplace).has_value());
  CHECK(*oracle_rate(laplace) == doctest::Approx(oracle::classical_laplace_rate(2.0, 0.8, 1.2)));

  json other = laplace_doc();
  other["problem"] = "semilinear-elliptic";
  other["partition"] = {{"uniform", {{"I", 2}, {"overlap", 0.1}}}};
  CHECK_FALSE(oracle_rate(parse_config(other)).has_value());
}

TEST_CASE("run") {
  const fs::path dir = scratch_dir("run");
  std::ostringstream out, err;
  SUBCASE("laplace1d Dirichlet converges with a monotone E_k column") {
    const int code = cli::cmd_run({write_config(dir, laplace_doc()), (dir / "out").string(), true}, out, err);
    CHECK(code == 0);
    CHECK(out.str().empty());
    const auto rows = read_csv(dir / "out" / "history.csv");
    REQUIRE(rows.size() > 3);
    CHECK(rows[0] == std::vector<std::string>{"k", "l", "norm", "E_k", "rate", "rate_double", "verdict", "wall_s"});
    for (std::size_t i = 2; i < rows.size(); ++i) CHECK(std::stod(rows[i][3]) < std::stod(rows[i - 1][3]));
    CHECK(rows.back()[6] == "converged");
    const std::string summary = slurp(dir / "out" / "summary.txt");
    for (const char* key : {"problem:", "transmission:", "verdict:", "fitted rate:", "iterations:", "wall time:"})
      CHECK(summary.find(key) != std::string::npos);
  }
  SUBCASE("example31 divergent Robin exits 2") {
    const int code = cli::cmd_run({write_config(dir, divergent_doc()), (dir / "out").string(), false}, out, err);
    CHECK(code == 2);
    CHECK(out.str().find("diverged") != std::string::npos);
    CHECK(read_csv(dir / "out" / "history.csv").back()[6] == "diverged");
  }
  SUBCASE("stalled runs exit 3") {
    json doc = laplace_doc();
    doc["iteration"]["max_iters"] = 4;
    CHECK(cli::cmd_run({write_config(dir, doc), (dir / "out").string(), true}, out, err) == 3);
  }
  SUBCASE("malformed and missing configs exit 1") {
    const fs::path bad = dir / "bad.json";
    std::ofstream(bad) << "{ \"schema\": 1, ";
    CHECK(cli::cmd_run({bad.string(), (dir / "out").string(), true}, out, err) == 1);
    CHECK_FALSE(err.str().empty());
    CHECK(cli::cmd_run({(dir / "missing.json").string(), (dir / "out").string(), true}, out, err) == 1);
    json invalid = laplace_doc();
    invalid["transmission"] = {{"robin", {{"p", -1.0}}}};
    CHECK(cli::cmd_run({write_config(dir, invalid), (dir / "out").string(), true}, out, err) == 1);
  }
  SUBCASE("identical configs give identical CSV apart from wall time") {
    const std::string cfg = write_config(dir, divergent_doc());
    cli::cmd_run({cfg, (dir / "a").string(), true}, out, err);
    cli::cmd_run({cfg, (dir / "b").string(), true}, out, err);
    auto a = read_csv(dir / "a" / "history.csv"), b = read_csv(dir / "b" / "history.csv");
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i].pop_back();
      b[i].pop_back();
      CHECK(a[i] == b[i]);
    }
  }
  fs::remove_all(dir);
}

TEST_CASE("tau") {
  std::ostringstream out, err;
  SUBCASE("q at the numerator root") {
    cli::TauOptions o{2.0, 1.7, 1.9, 1.0, oracle::optimal_q(1.7), {}};
    CHECK(cli::cmd_tau(o, out, err) == 0);
    CHECK(out.str().find("verdict converge") != std::string::npos);
  }
  SUBCASE("diverging case") {
    cli::TauOptions o{2.0, 1.9, 1.95, 1.0, 50.0, {}};
    CHECK(cli::cmd_tau(o, out, err) == 2);
    CHECK(out.str().find("verdict diverge") != std::string::npos);
    for (const char* key : {"tau1", "tau2", "tau "}) CHECK(out.str().find(key) != std::string::npos);
  }
  SUBCASE("large rho rescues it") {
    cli::TauOptions o{2.0, 1.9, 1.95, 1.0, 50.0, 16.0};
    CHECK(cli::cmd_tau(o, out, err) == 0);
  }
  SUBCASE("degenerate input") {
    CHECK(cli::cmd_tau({2.0, 1.9, 1.7, 1.0, 50.0, {}}, out, err) == 1);
    const double G = std::exp(4 * 1.9), D = std::exp(-1.9);
    CHECK(cli::cmd_tau({2.0, 1.7, 1.9, -(4 * G + D) / (G - D), 50.0, {}}, out, err) == 1);
  }
}

TEST_CASE("sweep") {
  const fs::path dir = scratch_dir("sweep");
  std::ostringstream out, err;
  SUBCASE("rho sweep on the diverging case") {
    json doc = divergent_doc();
    doc["transmission"] = json::parse(R"({ "scaled_robin": { "p": 1.0, "rho": 1.0, "interfaces": [
      { "receiver": 1, "donor": 2, "p": 1.0 }, { "receiver": 2, "donor": 1, "p": 50.0 } ] } })");
    doc["sweep"] = {{"axes", {{{"name", "transmission.scaled_robin.rho"}, {"values", {1, 2, 4, 8}}}}}};
    CHECK(cli::cmd_sweep({write_config(dir, doc), dir.string(), true}, out, err) == 0);
    const auto rows = read_csv(dir / "sweep.csv");
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == std::vector<std::string>{"transmission.scaled_robin.rho", "verdict", "iterations",
                                              "rate", "rate_double", "oracle_rate", "error"});
    std::string first_converged;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (first_converged.empty() && rows[i][1] == "converged") first_converged = rows[i][0];
      const double tau = std::stod(rows[i][5]);
      CHECK(std::abs(std::stod(rows[i][4]) - tau) <= 0.05 * tau);
    }
    CHECK(first_converged == "4");
  }
  SUBCASE("overlap sweep on laplace1d") {
    json doc = laplace_doc();
    doc["partition"] = {{"uniform", {{"I", 2}, {"overlap", 0.1}}}};
    doc["iteration"]["max_iters"] = 1000;
    doc["sweep"] = {{"axes", {{{"name", "partition.uniform.overlap"}, {"values", {0.1, 0.2, 0.3, 0.4, 0.8}}}}}};
    CHECK(cli::cmd_sweep({write_config(dir, doc), dir.string(), true}, out, err) == 0);
    const auto rows = read_csv(dir / "sweep.csv");
    REQUIRE(rows.size() == 6);
    for (std::size_t i = 2; i < 5; ++i) CHECK(std::stod(rows[i][3]) < std::stod(rows[i - 1][3]));
    // the last point breaks a partition rule and is recorded in its row
    CHECK(rows[5][1] == "error");
    CHECK(rows[5][6].find("triple overlap") != std::string::npos);
  }
  SUBCASE("two axes form a product") {
    json doc = laplace_doc();
    doc["sweep"] = {{"axes", {{{"name", "grid.h"}, {"values", {0.02, 0.01}}},
                              {{"name", "initial_guess.constant"}, {"values", {1.0, -2.0, 3.0}}}}}};
    CHECK(cli::cmd_sweep({write_config(dir, doc), dir.string(), true}, out, err) == 0);
    const auto rows = read_csv(dir / "sweep.csv");
    CHECK(rows.size() == 7);
    CHECK(rows[1][0] == "0.02");
    CHECK(rows[1][1] == "1");
    CHECK(rows[3][1] == "3");
    CHECK(rows[4][0] == "0.01");
  }
  SUBCASE("no axes") {
    CHECK(cli::cmd_sweep({write_config(dir, laplace_doc()), dir.string(), true}, out, err) == 1);
    json doc = laplace_doc();
    doc["sweep"] = {{"axes", json::array()}};
    CHECK(cli::cmd_sweep({write_config(dir, doc), dir.string(), true}, out, err) == 1);
  }
  fs::remove_all(dir);
}

TEST_CASE("validate") {
  const fs::path dir = scratch_dir("validate");
  std::ostringstream out, err;
  SUBCASE("valid config") {
    CHECK(cli::cmd_validate({write_config(dir, laplace_doc()), 1}, out, err) == 0);
  }
  SUBCASE("three mutually overlapping subdomains") {
    json doc = laplace_doc();
    doc["partition"] = {{"intervals", {{0.0, 1.2}, {0.6, 1.6}, {1.0, 2.0}}}};
    CHECK(cli::cmd_validate({write_config(dir, doc), 1}, out, err) != 0);
    CHECK(out.str().find("triple overlap") != std::string::npos);
  }
  SUBCASE("uniform request with too much overlap") {
    json doc = laplace_doc();
    doc["partition"] = {{"uniform", {{"I", 3}, {"overlap", 0.8}}}};
    CHECK(cli::cmd_validate({write_config(dir, doc), 1}, out, err) == 2);
    CHECK(out.str().find("triple overlap") != std::string::npos);
  }
  SUBCASE("c not above the Lipschitz constant") {
    json doc = laplace_doc();
    doc["problem"] = {{"catalog", "laplace1d"}, {"nonlinearity", {{"linear", 1.0}}}};
    CHECK(cli::cmd_validate({write_config(dir, doc), 1}, out, err) != 0);
    CHECK(out.str().find("(A3')") != std::string::npos);
  }
  SUBCASE("parse error") {
    const fs::path bad = dir / "bad.json";
    std::ofstream(bad) << "not json";
    CHECK(cli::cmd_validate({bad.string(), 1}, out, err) == 1);
  }
  fs::remove_all(dir);
}
