#include <doctest.h>

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "crext/cli.hpp"
#include "crext/fixtures.hpp"
#include "crext/formal.hpp"
#include "crext/model_io.hpp"

using namespace crext;
using nlohmann::json;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/crext_test_" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

struct RunResult {
  int code;
  std::string out, err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli_run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("analyze on the bundled counterexample models") {
  std::string m23 = write_temp("m23.json", model_to_json(model_hyperbolic_11()).dump());
  RunResult r = run({"analyze", "--model", m23});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["verdict"] == "Inconclusive");
  CHECK(j["a_inertia"]["positive"] == 1);
  CHECK(j["a_inertia"]["negative"] == 1);
  CHECK(j["q_nondegenerate"] == true);

  std::string m24 = write_temp("m24.json", model_to_json(model_sig_21()).dump());
  RunResult r2 = run({"analyze", "--model", m24});
  REQUIRE(r2.code == 0);
  json j2 = json::parse(r2.out);
  CHECK(j2["verdict"] == "ExtendsUp");
  CHECK(j2["a_inertia"]["positive"] == 2);

  std::string mp = write_temp("mp.json", model_to_json(model_parabolic_n2()).dump());
  RunResult r3 = run({"analyze", "--model", mp});
  json j3 = json::parse(r3.out);
  CHECK(j3["verdict"] == "QDegenerate");
  CHECK(j3["cr_singular_locus"]["kernel_dim"] == 2);
  CHECK(j3["parabolic_flags"][0] == "PARABOLIC_BOUNDARY");
}

TEST_CASE("analyze output is byte-identical across runs") {
  std::string m = write_temp("det.json", model_to_json(model_split_boundary(1.0)).dump());
  RunResult a = run({"analyze", "--model", m});
  RunResult b = run({"analyze", "--model", m});
  CHECK(a.out == b.out);
}

TEST_CASE("parse and schema errors exit with code 2") {
  std::string empty = write_temp("empty.json", "");
  RunResult r = run({"analyze", "--model", empty});
  CHECK(r.code == 2);

  std::string bad = write_temp("bad.json", "{\"n\": 2}");
  RunResult r2 = run({"analyze", "--model", bad});
  CHECK(r2.code == 2);
  CHECK(r2.err.find("SCHEMA_ERROR") != std::string::npos);
}

TEST_CASE("hypothesis failures exit with code 3") {
  std::string mp = write_temp("mp2.json", model_to_json(model_parabolic_n2()).dump());
  // normal-form on A = I succeeds, but on a degenerate A it is code 3
  QuadricModel zero_a;
  zero_a.n = 1;
  zero_a.a.m = Eigen::MatrixXcd::Zero(1, 1);
  zero_a.b.m = Eigen::MatrixXcd::Zero(1, 1);
  zero_a.e = CPoly(1);
  std::string z = write_temp("zeroA.json", model_to_json(zero_a).dump());
  RunResult r = run({"normal-form", "--model", z});
  CHECK(r.code == 3);
  CHECK(r.err.find("A_DEGENERATE") != std::string::npos);
}

TEST_CASE("formal-extend emits F and diagnostics") {
  QuadricModel m = model_sig_21();
  // f = compose(z1 * s) = z1 * Q
  SPoly f0 = SPoly::monomial(3, {1, 0, 0}, 1, 1.0);
  CPoly f = compose(f0, m);
  std::string mp = write_temp("fe_model.json", model_to_json(m).dump());
  std::string fp = write_temp("fe_f.json", cpoly_to_json(f).dump());
  RunResult r = run({"formal-extend", "--model", mp, "--f", fp, "--order", "4"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["status"] == "ok");
  CHECK(j["residual_valuation"] == 5);
  SPoly back = spoly_from_json(j["F"], 3);
  CHECK((back - f0).max_abs_coeff() < 1e-9);
}

TEST_CASE("disc subcommand emits an attached contour as CSV") {
  QuadricModel m = model_sig_21();
  std::string mp = write_temp("disc_model.json", model_to_json(m).dump());
  std::string pp = write_temp(
      "disc_point.json",
      json{{"z", {{0.0, 0.0}, {0.0, 0.0}, {0.6, 0.0}}}, {"s", -0.25}}.dump());
  RunResult r = run({"disc", "--model", mp, "--point", pp, "--output", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header.find("angle") == 0);
  int rows = 0;
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    ++rows;
    auto pos = line.rfind(',');
    double residual = std::stod(line.substr(pos + 1));
    CHECK(residual < 1e-8);
  }
  CHECK(rows == default_config().boundary_nodes);
}

TEST_CASE("extend-point value and divergence modes") {
  QuadricModel m = model_sig_21();
  std::string mp = write_temp("ext_model.json", model_to_json(m).dump());
  // data: restriction of F0 = z1 (holomorphic polynomial)
  json data = {{"kind", "poly"},
               {"terms", json::array({{{"z_exp", {1, 0, 0}},
                                       {"zbar_exp", {0, 0, 0}},
                                       {"coeff", {1.0, 0.0}}}})}};
  std::string dp = write_temp("ext_data.json", data.dump());
  std::string pp = write_temp(
      "ext_point.json",
      json{{"z", {{0.1, 0.0}, {0.0, 0.0}, {0.0, 0.0}}}, {"s", 0.4}}.dump());
  RunResult r = run({"extend-point", "--model", mp, "--data", dp, "--point", pp});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(std::abs(j["value"][0].get<double>() - 0.1) < 1e-9);
  CHECK(std::abs(j["value"][1].get<double>()) < 1e-9);
  CHECK(j.contains("chain"));

  // wrong side is a hypothesis failure (exit 3)
  std::string pp2 = write_temp(
      "ext_point2.json",
      json{{"z", {{0.4, 0.0}, {0.0, 0.0}, {0.0, 0.0}}}, {"s", -0.5}}.dump());
  RunResult r2 = run({"extend-point", "--model", mp, "--data", dp, "--point", pp2});
  CHECK(r2.code == 3);
  CHECK(r2.err.find("VERDICT_FORBIDS") != std::string::npos);
}

TEST_CASE("leaf-topology subcommand") {
  QuadricModel m = model_split_boundary(1.0);
  std::string mp = write_temp("leaf_model.json", model_to_json(m).dump());
  RunResult r = run({"leaf-topology", "--model", mp, "--s", "0.5", "--resolution", "48"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["oracle"]["boundary_components"] == 2);
  CHECK(j["classifier"].contains("error"));  // k = 1 < 2
}

TEST_CASE("verify-examples filter") {
  RunResult r = run({"verify-examples", "--only", "2.5"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  REQUIRE(j.size() == 1);
  CHECK(j[0]["id"] == "2.5");
  CHECK(j[0]["passed"] == true);

  RunResult r2 = run({"verify-examples", "--only", "nope"});
  CHECK(r2.code == 2);
}
