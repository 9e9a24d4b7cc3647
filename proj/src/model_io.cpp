#include "crext/model_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "crext/expr.hpp"

namespace crext {

namespace {

using nlohmann::json;

cplx complex_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(Errc::schema_error, path + ": expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Eigen::MatrixXcd matrix_at(const json& j, int n, const std::string& path) {
  if (!j.is_array() || int(j.size()) != n)
    throw Error(Errc::schema_error, path + ": expected " + std::to_string(n) + " rows");
  Eigen::MatrixXcd m(n, n);
  for (int r = 0; r < n; ++r) {
    const json& row = j[r];
    if (!row.is_array() || int(row.size()) != n)
      throw Error(Errc::schema_error,
                  path + "[" + std::to_string(r) + "]: expected " + std::to_string(n) + " entries");
    for (int c = 0; c < n; ++c)
      m(r, c) = complex_at(row[c], path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

std::vector<int> exponents_at(const json& j, int n, const std::string& path) {
  if (!j.is_array() || int(j.size()) != n)
    throw Error(Errc::schema_error, path + ": expected " + std::to_string(n) + " exponents");
  std::vector<int> e(n);
  for (int i = 0; i < n; ++i) {
    if (!j[i].is_number_integer() || j[i].get<int>() < 0)
      throw Error(Errc::schema_error, path + "[" + std::to_string(i) + "]: expected int >= 0");
    e[i] = j[i].get<int>();
  }
  return e;
}

}  // namespace

QuadricModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(Errc::schema_error, "model: expected an object");
  if (!j.contains("n") || !j.at("n").is_number_integer())
    throw Error(Errc::schema_error, "n: expected an integer");
  QuadricModel m;
  m.n = j.at("n").get<int>();
  if (m.n < 1 || m.n > 16) throw Error(Errc::schema_error, "n: out of range [1, 16]");
  if (!j.contains("A")) throw Error(Errc::schema_error, "A: missing");
  if (!j.contains("B")) throw Error(Errc::schema_error, "B: missing");
  m.a.m = matrix_at(j.at("A"), m.n, "A");
  m.b.m = matrix_at(j.at("B"), m.n, "B");
  m.e = CPoly(m.n);
  if (j.contains("E")) {
    const json& e = j.at("E");
    if (!e.is_array()) throw Error(Errc::schema_error, "E: expected a list of monomials");
    for (std::size_t i = 0; i < e.size(); ++i) {
      std::string path = "E[" + std::to_string(i) + "]";
      const json& t = e[i];
      if (!t.is_object()) throw Error(Errc::schema_error, path + ": expected an object");
      m.e.add_term({exponents_at(t.at("z_exp"), m.n, path + ".z_exp"),
                    exponents_at(t.at("zbar_exp"), m.n, path + ".zbar_exp")},
                   complex_at(t.at("coeff"), path + ".coeff"));
    }
  }
  m.validate();
  return m;
}

nlohmann::json model_to_json(const QuadricModel& m) {
  json j;
  j["n"] = m.n;
  auto mat = [&](const Eigen::MatrixXcd& a) {
    json rows = json::array();
    for (int r = 0; r < a.rows(); ++r) {
      json row = json::array();
      for (int c = 0; c < a.cols(); ++c) row.push_back({a(r, c).real(), a(r, c).imag()});
      rows.push_back(row);
    }
    return rows;
  };
  j["A"] = mat(m.a.m);
  j["B"] = mat(m.b.m);
  json e = json::array();
  for (const auto& [mono, c] : m.e.terms()) {
    json t;
    t["z_exp"] = mono.ze;
    t["zbar_exp"] = mono.we;
    t["coeff"] = {c.real(), c.imag()};
    e.push_back(t);
  }
  j["E"] = e;
  return j;
}

CPoly cpoly_from_json(const nlohmann::json& j, int n) {
  if (!j.is_array()) throw Error(Errc::schema_error, "polynomial: expected a list of terms");
  CPoly p(n);
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string path = "terms[" + std::to_string(i) + "]";
    const json& t = j[i];
    p.add_term({exponents_at(t.at("z_exp"), n, path + ".z_exp"),
                exponents_at(t.at("zbar_exp"), n, path + ".zbar_exp")},
               complex_at(t.at("coeff"), path + ".coeff"));
  }
  return p;
}

nlohmann::json cpoly_to_json(const CPoly& p) {
  json out = json::array();
  for (const auto& [m, c] : p.terms()) {
    json t;
    t["z_exp"] = m.ze;
    t["zbar_exp"] = m.we;
    t["coeff"] = {c.real(), c.imag()};
    out.push_back(t);
  }
  return out;
}

SPoly spoly_from_json(const nlohmann::json& j, int n) {
  if (!j.is_array()) throw Error(Errc::schema_error, "polynomial: expected a list of terms");
  SPoly p(n);
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string path = "terms[" + std::to_string(i) + "]";
    const json& t = j[i];
    int k = t.at("s_exp").get<int>();
    if (k < 0) throw Error(Errc::schema_error, path + ".s_exp: expected int >= 0");
    p.add_term({exponents_at(t.at("z_exp"), n, path + ".z_exp"), k},
               complex_at(t.at("coeff"), path + ".coeff"));
  }
  return p;
}

nlohmann::json spoly_to_json(const SPoly& p) {
  json out = json::array();
  for (const auto& [m, c] : p.terms()) {
    json t;
    t["z_exp"] = m.ze;
    t["s_exp"] = m.k;
    t["coeff"] = {c.real(), c.imag()};
    out.push_back(t);
  }
  return out;
}

BoundaryData data_from_json(const nlohmann::json& j, const QuadricModel& model) {
  if (!j.is_object() || !j.contains("kind"))
    throw Error(Errc::schema_error, "data: expected an object with a \"kind\" field");
  std::string kind = j.at("kind").get<std::string>();
  BoundaryData d;
  if (kind == "poly") {
    CPoly p = cpoly_from_json(j.at("terms"), model.n);
    d.eval = [p](const Eigen::VectorXcd& z) { return p.eval(z); };
    d.kind = BoundaryData::Kind::closed_form;
    return d;
  }
  if (kind == "expr") {
    Expr e = Expr::from_json(j.at("expr"));
    QuadricModel m = model;
    d.eval = [e, m](const Eigen::VectorXcd& z) { return e.eval(z, m.rho(z)); };
    d.kind = BoundaryData::Kind::closed_form;
    return d;
  }
  throw Error(Errc::schema_error, "data.kind: expected \"poly\" or \"expr\"");
}

LeafPoint point_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("z") || !j.contains("s"))
    throw Error(Errc::schema_error, "point: expected { \"z\": [[re,im],...], \"s\": real }");
  const json& zj = j.at("z");
  if (!zj.is_array() || zj.empty()) throw Error(Errc::schema_error, "point.z: expected a list");
  LeafPoint p;
  p.z.resize(zj.size());
  for (std::size_t i = 0; i < zj.size(); ++i)
    p.z(long(i)) = complex_at(zj[i], "point.z[" + std::to_string(i) + "]");
  p.s = j.at("s").get<double>();
  return p;
}

std::vector<LeafPoint> points_from_json(const nlohmann::json& j) {
  std::vector<LeafPoint> out;
  if (j.is_array()) {
    for (const auto& e : j) out.push_back(point_from_json(e));
  } else {
    out.push_back(point_from_json(j));
  }
  return out;
}

nlohmann::json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse_error, std::string(e.what()));
  }
  return j;
}

QuadricModel load_model_file(const std::string& path) {
  return model_from_json(parse_json_file(path));
}

BoundaryData load_data_file(const std::string& path, const QuadricModel& model) {
  return data_from_json(parse_json_file(path), model);
}

}  // namespace crext
