#include "crext/linalg.hpp"

#include <limits>

namespace crext {

namespace {

Inertia inertia_from_eigs(const Eigen::VectorXd& eigs, const Config& cfg) {
  Inertia in;
  double scale = eigs.size() ? eigs.cwiseAbs().maxCoeff() : 0.0;
  double tol = cfg.zero_tol_factor * scale;
  for (int i = 0; i < eigs.size(); ++i) {
    if (eigs(i) > tol) in.positive++;
    else if (eigs(i) < -tol) in.negative++;
    else in.zero++;
  }
  return in;
}

}  // namespace

Inertia matrix_inertia(const Eigen::MatrixXcd& h, const Config& cfg) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return inertia_from_eigs(es.eigenvalues(), cfg);
}

Inertia matrix_inertia(const Eigen::MatrixXd& h, const Config& cfg) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  return inertia_from_eigs(es.eigenvalues(), cfg);
}

Takagi takagi_factor(const Eigen::MatrixXcd& s, const Config& cfg) {
  const int n = int(s.rows());
  Eigen::MatrixXd x = s.real(), y = s.imag();
  Eigen::MatrixXd k(2 * n, 2 * n);
  k << x, y, y, -x;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
  const Eigen::VectorXd& ev = es.eigenvalues();    // ascending
  const Eigen::MatrixXd& q = es.eigenvectors();

  double scale = ev.size() ? ev.cwiseAbs().maxCoeff() : 0.0;
  double tol = cfg.zero_tol_factor * std::max(scale, 1e-300);

  Takagi out;
  out.w.resize(n, n);
  out.sigma.resize(n);

  int col = 0;
  // Strictly positive part: eigenvalues descending.
  for (int i = 2 * n - 1; i >= 0 && col < n; --i) {
    if (ev(i) <= tol) break;
    Eigen::VectorXd u = q.col(i).head(n), v = q.col(i).tail(n);
    out.sigma(col) = ev(i);
    out.w.col(col) = u.cast<cplx>() + cplx(0, 1) * v.cast<cplx>();
    ++col;
  }
  // Null part: pick vectors and remove their J-images, J(u;v) = (-v;u),
  // keeping the family closed under the pairing.
  if (col < n) {
    std::vector<Eigen::VectorXd> null_basis;
    for (int i = 0; i < 2 * n; ++i)
      if (std::abs(ev(i)) <= tol) null_basis.push_back(q.col(i));
    std::vector<Eigen::VectorXd> chosen;
    for (const auto& cand0 : null_basis) {
      if (col >= n) break;
      Eigen::VectorXd cand = cand0;
      for (const auto& c : chosen) {
        cand -= c.dot(cand) * c;
        Eigen::VectorXd jc(2 * n);
        jc << -c.tail(n), c.head(n);
        cand -= jc.dot(cand) * jc;
      }
      if (cand.norm() < 1e-8) continue;
      cand.normalize();
      chosen.push_back(cand);
      out.sigma(col) = 0.0;
      out.w.col(col) = cand.head(n).cast<cplx>() + cplx(0, 1) * cand.tail(n).cast<cplx>();
      ++col;
    }
  }
  if (col != n) throw Error(Errc::internal, "takagi basis selection failed");

  Eigen::MatrixXcd rec = out.w * out.sigma.asDiagonal() * out.w.transpose();
  out.residual = (rec - s).cwiseAbs().maxCoeff();
  return out;
}

LsqSolution solve_least_squares(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b,
                                double rank_tol) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  LsqSolution sol;
  sol.x = svd.solve(b);
  double bn = b.norm();
  sol.rel_residual = (a * sol.x - b).norm() / std::max(bn, 1.0);
  const Eigen::VectorXd& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  sol.rank = 0;
  double smin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > rank_tol * std::max(smax, 1e-300)) {
      sol.rank++;
      smin = std::min(smin, sv(i));
    }
  }
  sol.cond = (sol.rank == sv.size() && sol.rank > 0)
                 ? smax / smin
                 : std::numeric_limits<double>::infinity();
  return sol;
}

}  // namespace crext
