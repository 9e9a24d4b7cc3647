#include "crext/formal.hpp"

#include <algorithm>

namespace crext {

namespace {

constexpr std::size_t kTermBudget = 2'000'000;

// All z-monomial exponent vectors of total degree d in n variables,
// lexicographic order (deterministic unknown ordering).
void enumerate_monomials(int n, int d, std::vector<int>& cur, int pos,
                         std::vector<std::vector<int>>& out) {
  if (pos == n - 1) {
    cur[pos] = d;
    out.push_back(cur);
    return;
  }
  for (int e = d; e >= 0; --e) {
    cur[pos] = e;
    enumerate_monomials(n, d - e, cur, pos + 1, out);
  }
}

std::vector<std::vector<int>> monomials_of_degree(int n, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  enumerate_monomials(n, d, cur, 0, out);
  return out;
}

}  // namespace

CPoly compose(const SPoly& f, const QuadricModel& model, int max_degree) {
  const int n = model.n;
  CPoly rho = model.rho_poly();
  if (max_degree >= 0) rho = rho.truncate_degree(max_degree);

  // Group by s-power so rho^k is computed once per k.
  int kmax = 0;
  for (const auto& [m, c] : f.terms()) kmax = std::max(kmax, m.k);
  std::vector<CPoly> rho_pow(kmax + 1, CPoly(n));
  rho_pow[0] = CPoly::constant(n, 1.0);
  for (int k = 1; k <= kmax; ++k) {
    rho_pow[k] = rho_pow[k - 1] * rho;
    if (max_degree >= 0) rho_pow[k] = rho_pow[k].truncate_degree(max_degree);
    if (rho_pow[k].term_count() > kTermBudget)
      throw Error(Errc::order_overflow, "composition exceeded the term budget");
  }

  CPoly out(n);
  for (const auto& [m, c] : f.terms()) {
    CPoly t = rho_pow[m.k] * c;
    if (!std::all_of(m.ze.begin(), m.ze.end(), [](int e) { return e == 0; })) {
      CPoly zmon = CPoly::monomial(n, m.ze, std::vector<int>(n, 0), 1.0);
      t = t * zmon;
    }
    if (max_degree >= 0) t = t.truncate_degree(max_degree);
    out += t;
    if (out.term_count() > kTermBudget)
      throw Error(Errc::order_overflow, "composition exceeded the term budget");
  }
  return out;
}

ExtendResult extend_homogeneous(const CPoly& f_d, const QuadricModel& model, const Config& cfg) {
  const int n = model.n;
  ExtendResult out;
  out.status = ExtendStatus::ok;

  if (f_d.empty()) {
    out.extension = SPoly::zero(n);
    out.rel_residual = 0.0;
    out.rank = 0;
    out.unknowns = 0;
    out.cond = 1.0;
    return out;
  }
  const int d = f_d.degree();
  if (f_d.valuation() != d)
    throw Error(Errc::hypothesis_fail, "extend_homogeneous expects homogeneous input");

  QuadricModel quad = model;
  quad.e = CPoly(n);  // the lift lives on the pure quadric
  CPoly q = quad.q_poly();

  // Unknowns: coefficients of P_{d-2k}(z), one column per monomial;
  // each column is the (z,zbar)-expansion of z^gamma * Q^k.
  struct Unknown {
    std::vector<int> ze;
    int k;
  };
  std::vector<Unknown> unknowns;
  std::vector<CPoly> columns;
  CPoly qk = CPoly::constant(n, 1.0);
  for (int k = 0; 2 * k <= d; ++k) {
    int j = d - 2 * k;
    for (const auto& ze : monomials_of_degree(n, j)) {
      unknowns.push_back({ze, k});
      columns.push_back(qk * CPoly::monomial(n, ze, std::vector<int>(n, 0), 1.0));
    }
    qk = qk * q;
  }

  // Row space: every (z,zbar)-monomial appearing in any column or in f_d.
  std::map<CMono, int> row_index;
  auto touch = [&](const CPoly& p) {
    for (const auto& [m, c] : p.terms())
      if (!row_index.count(m)) row_index.emplace(m, int(row_index.size()));
  };
  for (const auto& col : columns) touch(col);
  touch(f_d);

  const int rows = int(row_index.size()), cols = int(columns.size());
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(rows, cols);
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(rows);
  for (int c = 0; c < cols; ++c)
    for (const auto& [m, v] : columns[c].terms()) a(row_index.at(m), c) = v;
  for (const auto& [m, v] : f_d.terms()) b(row_index.at(m)) = v;

  LsqSolution ls = solve_least_squares(a, b);
  out.rank = ls.rank;
  out.unknowns = cols;
  out.cond = ls.cond;
  out.rel_residual = ls.rel_residual;

  if (ls.rel_residual > cfg.ls_residual_tol) {
    out.status = ExtendStatus::not_cr;
    CrCheck chk = is_cr(f_d, quad, cfg);
    if (chk.witness) out.witness = chk.witness;
    return out;
  }

  SPoly ext(n);
  double scale = std::max(f_d.max_abs_coeff(), 1.0);
  for (int c = 0; c < cols; ++c) {
    if (std::abs(ls.x(c)) > cfg.coeff_tol * scale)
      ext.add_term({unknowns[c].ze, unknowns[c].k}, ls.x(c));
  }
  out.extension = ext;
  return out;
}

Jet formal_jet(const CPoly& f_data, const QuadricModel& model, int order, const Config& cfg) {
  const int n = model.n;
  Jet jet;
  jet.order = order;
  jet.f_truncation = f_data.truncate_degree(order);
  jet.f_series = SPoly::zero(n);
  jet.residual_valuation = order + 1;

  QuadricModel quad = model;
  quad.e = CPoly(n);

  CPoly remainder = jet.f_truncation;
  const double scale = std::max(f_data.max_abs_coeff(), 1.0);
  const double noise = 1e-10 * scale;  // absorbed solve/cancellation noise
  for (int k = 0; k <= order; ++k) {
    CPoly layer = remainder.homogeneous_part(k);
    if (layer.is_zero(noise)) {
      remainder -= layer;
      continue;
    }
    ExtendResult ext = extend_homogeneous(layer, quad, cfg);
    if (ext.status == ExtendStatus::not_cr) {
      jet.status = ExtendStatus::not_cr;
      jet.failed_layer = k;
      jet.witness = ext.witness;
      return jet;
    }
    jet.f_series += ext.extension;
    remainder -= compose(ext.extension, model, order);
    remainder = remainder.truncate_degree(order);
    // The processed layer must have cancelled to solver noise.
    CPoly left = remainder.homogeneous_part(k);
    if (!left.is_zero(1e-7 * scale))
      throw Error(Errc::internal, "jet iteration failed to raise the valuation");
    remainder -= left;
  }
  jet.residual_valuation = remainder.is_zero(noise) ? order + 1 : remainder.valuation();
  return jet;
}

ChainResidual chain_identity_check(const CPoly& f, const SPoly& bigf, const QuadricModel& model) {
  const int n = model.n;
  CPoly rho = model.rho_poly();
  CPoly fs_on_m = compose(bigf.d_s(), model);
  ChainResidual out{0.0, 0.0};
  for (int j = 0; j < n; ++j) {
    CPoly lhs_bar = f.wirtinger(j, true) - fs_on_m * rho.wirtinger(j, true);
    out.dbar = std::max(out.dbar, lhs_bar.max_abs_coeff());
    CPoly lhs_z = f.wirtinger(j, false) - compose(bigf.d_z(j), model) -
                  fs_on_m * rho.wirtinger(j, false);
    out.dz = std::max(out.dz, lhs_z.max_abs_coeff());
  }
  return out;
}

}  // namespace crext
