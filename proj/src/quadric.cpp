#include "crext/quadric.hpp"

#include <algorithm>

namespace crext {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::extends_up: return "ExtendsUp";
    case Verdict::extends_down: return "ExtendsDown";
    case Verdict::both: return "Both";
    case Verdict::inconclusive: return "Inconclusive";
    case Verdict::q_degenerate: return "QDegenerate";
  }
  return "?";
}

void HermitianForm::validate(double tol) const {
  if (m.rows() != m.cols()) throw Error(Errc::schema_error, "A: not square");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol * std::max(1.0, m.cwiseAbs().maxCoeff()))
    throw Error(Errc::schema_error, "A: not conjugate-symmetric");
}

void SymmetricForm::validate(double tol) const {
  if (m.rows() != m.cols()) throw Error(Errc::schema_error, "B: not square");
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol * std::max(1.0, m.cwiseAbs().maxCoeff()))
    throw Error(Errc::schema_error, "B: not symmetric");
}

void QuadricModel::validate(double tol) const {
  a.validate();
  b.validate();
  if (a.n() != n || b.n() != n) throw Error(Errc::schema_error, "A/B dimension mismatch with n");
  if (!e.empty()) {
    if (e.nvars() != n) throw Error(Errc::schema_error, "E: variable count mismatch");
    if (e.valuation() < 3) throw Error(Errc::schema_error, "E: monomial of total degree < 3");
    if (!e.is_real_valued(tol)) throw Error(Errc::schema_error, "E: not real-valued");
  }
}

double QuadricModel::q_value(const Eigen::VectorXcd& z) const {
  return a.value(z) + 2.0 * b.value(z).real();
}

double QuadricModel::rho(const Eigen::VectorXcd& z) const {
  double v = q_value(z);
  if (!e.empty()) v += e.eval(z).real();
  return v;
}

CPoly QuadricModel::q_poly() const {
  CPoly q(n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      // zbar_j A_jk z_k
      if (a.m(j, k) != cplx(0.0)) {
        std::vector<int> ze(n, 0), we(n, 0);
        ze[k] += 1;
        we[j] += 1;
        q.add_term({ze, we}, a.m(j, k));
      }
      // z_j B_jk z_k + conj
      if (b.m(j, k) != cplx(0.0)) {
        std::vector<int> ze(n, 0), we(n, 0);
        ze[j] += 1;
        ze[k] += 1;
        q.add_term({ze, we}, b.m(j, k));
        q.add_term({we, ze}, std::conj(b.m(j, k)));
      }
    }
  }
  return q;
}

CPoly QuadricModel::rho_poly() const {
  CPoly q = q_poly();
  if (!e.empty()) q += e;
  return q;
}

QuadricModel QuadricModel::transformed(const Eigen::MatrixXcd& t) const {
  QuadricModel out;
  out.n = n;
  out.a.m = t.adjoint() * a.m * t;
  out.b.m = t.transpose() * b.m * t;
  if (!e.empty()) {
    // Substitute z = T z' monomial by monomial.
    std::vector<CPoly> tz(n, CPoly(n)), tz_bar(n, CPoly(n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (t(i, j) != cplx(0.0)) {
          tz[i] += CPoly::variable(n, j) * t(i, j);
          tz_bar[i] += CPoly::variable_bar(n, j) * std::conj(t(i, j));
        }
      }
    }
    CPoly acc(n);
    for (const auto& [m, c] : e.terms()) {
      CPoly term = CPoly::constant(n, c);
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < m.ze[i]; ++k) term = term * tz[i];
        for (int k = 0; k < m.we[i]; ++k) term = term * tz_bar[i];
      }
      acc += term;
    }
    out.e = acc.cleaned(1e-14);
  }
  return out;
}

QuadricModel QuadricModel::negated() const {
  QuadricModel out = *this;
  out.a.m = -a.m;
  out.b.m = -b.m;
  out.e = -e;
  return out;
}

Inertia inertia(const HermitianForm& a, const Config& cfg) { return matrix_inertia(a.m, cfg); }
Inertia inertia(const RealQuadForm& q, const Config& cfg) { return matrix_inertia(q.m, cfg); }

RealQuadForm real_form(const QuadricModel& model) {
  const int n = model.n, m = 2 * n;
  // Polarize q(v) on basis vectors; exact for a quadratic form and
  // independent of any expansion convention.
  auto to_z = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXcd z(n);
    for (int i = 0; i < n; ++i) z(i) = cplx(x(i), x(n + i));
    return z;
  };
  auto q = [&](const Eigen::VectorXd& x) { return model.q_value(to_z(x)); };
  RealQuadForm out;
  out.m.setZero(m, m);
  Eigen::VectorXd ei = Eigen::VectorXd::Zero(m), ej = Eigen::VectorXd::Zero(m);
  std::vector<double> diag(m);
  for (int i = 0; i < m; ++i) {
    ei.setZero();
    ei(i) = 1.0;
    diag[i] = q(ei);
    out.m(i, i) = diag[i];
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      ei.setZero();
      ei(i) = 1.0;
      ei(j) = 1.0;
      double v = (q(ei) - diag[i] - diag[j]) / 2.0;
      out.m(i, j) = v;
      out.m(j, i) = v;
    }
  }
  return out;
}

bool is_q_nondegenerate(const QuadricModel& model, const Config& cfg) {
  return inertia(real_form(model), cfg).zero == 0;
}

namespace {

// Real gradient of rho at z, via the Wirtinger derivatives of the symbolic rho.
Eigen::VectorXd real_gradient(const std::vector<CPoly>& rho_dz, const Eigen::VectorXcd& z) {
  const int n = int(z.size());
  Eigen::VectorXd g(2 * n);
  for (int j = 0; j < n; ++j) {
    cplx d = rho_dz[j].eval(z);
    g(j) = 2.0 * d.real();
    g(n + j) = -2.0 * d.imag();
  }
  return g;
}

}  // namespace

LocusReport cr_singular_locus(const QuadricModel& model, double box_half_width,
                              const Config& cfg) {
  LocusReport rep;
  const int n = model.n, m = 2 * n;

  // Kernel of the full real derivative system of Q (the set where dQ = 0).
  RealQuadForm c = real_form(model);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.m);
  double scale = es.eigenvalues().cwiseAbs().maxCoeff();
  double tol = cfg.zero_tol_factor * std::max(scale, 1e-300);
  for (int i = 0; i < m; ++i) {
    if (std::abs(es.eigenvalues()(i)) <= tol) {
      rep.kernel_dim++;
      rep.kernel_basis.push_back(es.eigenvectors().col(i));
    }
  }
  rep.isolated = (rep.kernel_dim == 0);

  if (model.pure_quadric()) return rep;

  // With E != 0: sample for gradient zeros of Q + E in the punctured box.
  rep.sampling_ran = true;
  CPoly rho = model.rho_poly();
  std::vector<CPoly> rho_dz;
  for (int j = 0; j < n; ++j) rho_dz.push_back(rho.wirtinger(j, false));

  const int res = (m <= 4) ? 13 : 7;
  const double step = 2.0 * box_half_width / (res - 1);
  const double origin_excluded = 1e-2 * box_half_width;  // the puncture
  std::vector<int> idx(m, 0);
  double min_grad = std::numeric_limits<double>::infinity();
  // Newton polish of a gradient-zero candidate; reports the final |grad|.
  auto polish = [&](Eigen::VectorXd x, double* final_grad) -> std::optional<Eigen::VectorXd> {
    double gn = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 60; ++it) {
      Eigen::VectorXcd z(n);
      for (int i = 0; i < n; ++i) z(i) = cplx(x(i), x(n + i));
      Eigen::VectorXd g = real_gradient(rho_dz, z);
      gn = g.norm();
      if (final_grad) *final_grad = gn;
      if (gn < 1e-12) return x;
      Eigen::MatrixXd jac(m, m);
      const double h = 1e-6;
      for (int d = 0; d < m; ++d) {
        Eigen::VectorXd xp = x, xm = x;
        xp(d) += h;
        xm(d) -= h;
        Eigen::VectorXcd zp(n), zm(n);
        for (int i = 0; i < n; ++i) {
          zp(i) = cplx(xp(i), xp(n + i));
          zm(i) = cplx(xm(i), xm(n + i));
        }
        jac.col(d) = (real_gradient(rho_dz, zp) - real_gradient(rho_dz, zm)) / (2 * h);
      }
      Eigen::VectorXd dx = jac.colPivHouseholderQr().solve(-g);
      if (!dx.allFinite()) return std::nullopt;
      double lim = 0.5 * box_half_width;
      if (dx.norm() > lim) dx *= lim / dx.norm();
      x += dx;
      if (x.cwiseAbs().maxCoeff() > 2.0 * box_half_width) return std::nullopt;
    }
    return std::nullopt;
  };

  std::vector<Eigen::VectorXd> zeros;
  bool ambiguous = false;
  double ambiguous_grad = 0.0;
  while (true) {
    Eigen::VectorXd x(m);
    for (int d = 0; d < m; ++d) x(d) = -box_half_width + idx[d] * step;
    if (x.norm() > 1e-9) {  // punctured box
      Eigen::VectorXcd z(n);
      for (int i = 0; i < n; ++i) z(i) = cplx(x(i), x(n + i));
      double gn = real_gradient(rho_dz, z).norm();
      min_grad = std::min(min_grad, gn);
      if (gn < 0.5 * step) {
        double final_grad = gn;
        auto p = polish(x, &final_grad);
        if (p && p->norm() > origin_excluded) {
          bool dup = false;
          for (const auto& q : zeros)
            if ((q - *p).norm() < 1e-5) dup = true;
          if (!dup) zeros.push_back(*p);
        } else if (!p && final_grad < 1e-6 && x.norm() > origin_excluded) {
          // Stuck in the band between a certified zero and a clear nonzero.
          ambiguous = true;
          ambiguous_grad = final_grad;
        }
      }
    }
    int d = 0;
    while (d < m && ++idx[d] == res) idx[d++] = 0;
    if (d == m) break;
  }
  if (ambiguous)
    throw Error(Errc::sampling_inconclusive,
                "gradient minimum of " + std::to_string(ambiguous_grad) +
                    " sits inside the tolerance band");
  rep.min_grad_seen = min_grad;
  for (const auto& x : zeros) {
    Eigen::VectorXcd z(n);
    for (int i = 0; i < n; ++i) z(i) = cplx(x(i), x(n + i));
    rep.sampled_zeros.push_back(z);
  }
  if (rep.isolated && !rep.sampled_zeros.empty()) rep.isolated = false;
  return rep;
}

std::vector<Eigen::VectorXd> numeric_gradient_zeros(
    const std::function<double(const Eigen::VectorXd&)>& rho, int real_dim,
    double box_half_width, int resolution, const Config& cfg) {
  (void)cfg;
  const double step = 2.0 * box_half_width / (resolution - 1);
  const double h = step * 1e-3;
  auto grad_norm = [&](const Eigen::VectorXd& x) {
    double acc = 0.0;
    for (int d = 0; d < real_dim; ++d) {
      Eigen::VectorXd xp = x, xm = x;
      xp(d) += h;
      xm(d) -= h;
      double g = (rho(xp) - rho(xm)) / (2 * h);
      acc += g * g;
    }
    return std::sqrt(acc);
  };
  std::vector<Eigen::VectorXd> zeros;
  std::vector<int> idx(real_dim, 0);
  while (true) {
    Eigen::VectorXd x(real_dim);
    for (int d = 0; d < real_dim; ++d) x(d) = -box_half_width + idx[d] * step;
    if (x.norm() > step / 4) {
      double g0 = grad_norm(x);
      if (g0 < 1.0 * step) {
        // Coordinate-descent polish on |grad|.
        Eigen::VectorXd y = x;
        double best = g0, hh = step / 2;
        for (int it = 0; it < 200 && hh > 1e-10; ++it) {
          bool improved = false;
          for (int d = 0; d < real_dim; ++d) {
            for (double sgn : {1.0, -1.0}) {
              Eigen::VectorXd yt = y;
              yt(d) += sgn * hh;
              double g = grad_norm(yt);
              if (g < best) {
                best = g;
                y = yt;
                improved = true;
              }
            }
          }
          if (!improved) hh /= 2;
        }
        if (best < 1e-6 && y.norm() > step / 4) {
          bool dup = false;
          for (const auto& q : zeros)
            if ((q - y).norm() < step / 2) dup = true;
          if (!dup) zeros.push_back(y);
        }
      }
    }
    int d = 0;
    while (d < real_dim && ++idx[d] == resolution) idx[d++] = 0;
    if (d == real_dim) break;
  }
  return zeros;
}

Eigen::MatrixXcd a_diagonalizing_transform(const QuadricModel& model, Eigen::VectorXd* diag_out,
                                           const Config& cfg) {
  const int n = model.n;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(model.a.m);
  Eigen::VectorXd ev = es.eigenvalues();
  double scale = ev.cwiseAbs().maxCoeff();
  double tol = cfg.zero_tol_factor * std::max(scale, 1e-300);
  for (int i = 0; i < n; ++i)
    if (std::abs(ev(i)) <= tol)
      throw Error(Errc::a_degenerate, "A has an eigenvalue within tolerance of 0");

  // Sort descending so the +1 block comes first.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int i, int j) { return ev(i) > ev(j); });

  Eigen::MatrixXcd t1(n, n);
  Eigen::VectorXd a_diag(n);
  for (int k = 0; k < n; ++k) {
    int i = order[k];
    t1.col(k) = es.eigenvectors().col(i) / std::sqrt(std::abs(ev(i)));
    a_diag(k) = ev(i) > 0 ? 1.0 : -1.0;
  }
  if (diag_out) *diag_out = a_diag;
  return t1;
}

NormalForm normalize(const QuadricModel& model, const Config& cfg) {
  const int n = model.n;
  Eigen::VectorXd a_diag(n);
  Eigen::MatrixXcd t1 = a_diagonalizing_transform(model, &a_diag, cfg);

  NormalForm out;
  out.transform = t1;
  out.a_diag = a_diag;

  bool pos_def = (a_diag.minCoeff() > 0);
  if (pos_def) {
    Eigen::MatrixXcd b1 = t1.transpose() * model.b.m * t1;
    Takagi tk = takagi_factor(b1, cfg);
    // T2 = conj(W) is unitary, preserving A' = I, with T2^T B' T2 = diag(sigma).
    Eigen::MatrixXcd t2 = tk.w.conjugate();
    out.transform = t1 * t2;
    out.lambdas.assign(tk.sigma.data(), tk.sigma.data() + n);
  }

  // Residual: max coefficient mismatch between the transformed forms and
  // their target shapes.
  Eigen::MatrixXcd at = out.transform.adjoint() * model.a.m * out.transform;
  double res = (at - Eigen::MatrixXcd(a_diag.cast<cplx>().asDiagonal())).cwiseAbs().maxCoeff();
  if (pos_def) {
    Eigen::MatrixXcd bt = out.transform.transpose() * model.b.m * out.transform;
    Eigen::VectorXcd lam(n);
    for (int i = 0; i < n; ++i) lam(i) = out.lambdas[i];
    res = std::max(res, (bt - Eigen::MatrixXcd(lam.asDiagonal())).cwiseAbs().maxCoeff());
  }
  out.residual = res;
  return out;
}

namespace {

bool is_pm_one_diagonal_sorted(const Eigen::MatrixXcd& a, double tol) {
  const int n = int(a.rows());
  double prev = 2.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (std::abs(a(i, j)) > tol) return false;
    }
    double d = a(i, i).real();
    if (std::abs(a(i, i).imag()) > tol) return false;
    if (std::abs(std::abs(d) - 1.0) > tol) return false;
    if (d > prev + tol) return false;  // +1 block must come first
    prev = d;
  }
  return true;
}

}  // namespace

NormalForm block_reduce_b(const QuadricModel& model, const Config& cfg) {
  const int n = model.n;
  Eigen::MatrixXcd t1 = Eigen::MatrixXcd::Identity(n, n);
  Eigen::VectorXd a_diag(n);

  if (is_pm_one_diagonal_sorted(model.a.m, 1e-10)) {
    for (int i = 0; i < n; ++i) a_diag(i) = model.a.m(i, i).real() > 0 ? 1.0 : -1.0;
  } else {
    t1 = a_diagonalizing_transform(model, &a_diag, cfg);
  }
  if (n < 2 || a_diag(0) <= 0 || a_diag(1) <= 0)
    throw Error(Errc::insufficient_positive, "block reduction needs a >= 2");

  Eigen::MatrixXcd b1 = t1.transpose() * model.b.m * t1;
  Takagi tk = takagi_factor(b1.topLeftCorner(2, 2), cfg);
  Eigen::MatrixXcd t2 = Eigen::MatrixXcd::Identity(n, n);
  t2.topLeftCorner(2, 2) = tk.w.conjugate();  // unitary, keeps A's block fixed

  NormalForm out;
  out.transform = t1 * t2;
  out.a_diag = a_diag;
  out.lambdas = {tk.sigma(0), tk.sigma(1)};

  Eigen::MatrixXcd bt = out.transform.transpose() * model.b.m * out.transform;
  Eigen::MatrixXcd target = bt;
  target(0, 0) = tk.sigma(0);
  target(1, 1) = tk.sigma(1);
  target(0, 1) = 0.0;
  target(1, 0) = 0.0;
  double res = (bt - target).cwiseAbs().maxCoeff();
  Eigen::MatrixXcd at = out.transform.adjoint() * model.a.m * out.transform;
  res = std::max(res,
                 (at - Eigen::MatrixXcd(a_diag.cast<cplx>().asDiagonal())).cwiseAbs().maxCoeff());
  out.residual = res;
  return out;
}

ExtensionVerdict extension_verdict(const QuadricModel& model, const Config& cfg) {
  ExtensionVerdict out;
  out.a_inertia = inertia(model.a, cfg);
  RealQuadForm q = real_form(model);
  out.q_inertia = inertia(q, cfg);
  out.q_nondegenerate = (out.q_inertia.zero == 0);
  if (!out.q_nondegenerate) {
    out.verdict = Verdict::q_degenerate;
    out.note = "Q is degenerate; the two-positive-eigenvalue criterion does not apply";
    return out;
  }
  bool up = out.a_inertia.positive >= 2;
  bool down = out.a_inertia.negative >= 2;
  if (up && down) out.verdict = Verdict::both;
  else if (up) out.verdict = Verdict::extends_up;
  else if (down) out.verdict = Verdict::extends_down;
  else {
    out.verdict = Verdict::inconclusive;
    out.note =
        "fewer than two eigenvalues of either sign; one-sided extension can fail "
        "(hyperbolic 1-1 and 2-1 model counterexamples)";
  }
  return out;
}

}  // namespace crext
