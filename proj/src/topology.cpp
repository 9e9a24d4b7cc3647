#include "crext/topology.hpp"

#include <algorithm>
#include <cmath>

namespace crext {

LeafTopology classify_quadric_leaf(const Inertia& q, int s_sign) {
  if (q.zero > 0)
    throw Error(Errc::hypothesis_fail, "classification requires a nondegenerate form");
  if (q.positive < 2)
    throw Error(Errc::hypothesis_fail, "classification requires k >= 2 positive eigenvalues");
  const int l = q.negative;
  LeafTopology t;
  if (s_sign > 0 || (s_sign < 0 && l >= 3) || s_sign == 0) {
    t.components = 1;
    t.boundary_components = 1;
    return t;
  }
  // s < 0 from here on
  if (l == 2) {
    t.components = 1;
    t.boundary_components = 1;
    t.pi1_rank = 1;
    t.generator_on_boundary = true;
    return t;
  }
  if (l == 1) {
    t.components = 2;
    t.boundary_components = 2;
    return t;
  }
  t.empty = true;  // l == 0, the form is positive definite
  return t;
}

namespace {

double auto_half_width(double s, double requested) {
  if (requested > 0) return requested;
  return 2.0 * std::sqrt(std::abs(s)) + 1.0;
}

LeafTopology diag_leaf_once(const std::vector<double>& weights, double s, double half_width,
                            int res, bool parallel, const Config& cfg) {
  GridSpec g{int(weights.size()), res, half_width};
  DiagSet set{weights, s, false};
  LeafCounts counts = separable_leaf_counts(g, set, parallel, cfg);
  LeafTopology t;
  t.empty = counts.components == 0;
  t.components = counts.components;
  t.boundary_components = counts.boundary_components;

  // pi1: annulus signature in the plane of the two negative axes (l = 2 only).
  int l = 0;
  std::vector<int> neg;
  for (int d = 0; d < int(weights.size()); ++d)
    if (weights[d] < 0) {
      ++l;
      neg.push_back(d);
    }
  if (!t.empty && l == 2 && s < 0) {
    auto axis = g.axis_centers();
    double rest = 0.0;
    for (int d = 0; d < g.dim; ++d) {
      if (d == neg[0] || d == neg[1]) continue;
      double gc = axis[res / 2];
      rest += weights[d] * gc * gc;
    }
    double a = weights[neg[0]], b = weights[neg[1]];
    bool hole = slice_has_center_hole(res, [&](int i, int j) {
      return rest + a * axis[i] * axis[i] + b * axis[j] * axis[j] <= s;
    });
    if (hole) {
      t.pi1_rank = 1;
      t.generator_on_boundary = true;  // the ring around the hole abuts the complement
    }
  }
  return t;
}

}  // namespace

LeafTopology sample_diag_leaf(const std::vector<double>& weights, double s,
                              const SampleOptions& opt, const Config& cfg) {
  if (opt.resolution < 17)
    throw Error(Errc::schema_error, "resolution must be at least 17 per axis");
  double hw = auto_half_width(s, opt.box_half_width);
  LeafTopology t = diag_leaf_once(weights, s, hw, opt.resolution, opt.parallel, cfg);
  if (opt.stability_check) {
    LeafTopology t2 = diag_leaf_once(weights, s, hw, 2 * opt.resolution, opt.parallel, cfg);
    if (t.components != t2.components || t.boundary_components != t2.boundary_components)
      throw Error(Errc::resolution_too_coarse,
                  "component counts unstable between resolution r and 2r");
  }
  return t;
}

namespace {

bool nearly_diagonal(const Eigen::MatrixXd& m, double rel_tol) {
  double scale = m.cwiseAbs().maxCoeff();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (i != j && std::abs(m(i, j)) > rel_tol * std::max(scale, 1e-300)) return false;
  return true;
}

LeafTopology model_leaf_once(const QuadricModel& model, double s, double hw, int res,
                             bool parallel, const Config& cfg) {
  RealQuadForm c = real_form(model);
  const int dim = 2 * model.n;

  if (model.pure_quadric() && nearly_diagonal(c.m, 1e-12)) {
    std::vector<double> w(dim);
    for (int d = 0; d < dim; ++d) w[d] = c.m(d, d);
    return diag_leaf_once(w, s, hw, res, parallel, cfg);
  }

  GridSpec g{dim, res, hw};
  const int n = model.n;
  auto pred = [&](const double* x) {
    Eigen::VectorXcd z(n);
    for (int i = 0; i < n; ++i) z(i) = cplx(x[i], x[n + i]);
    return model.rho(z) <= s;
  };
  LeafCounts counts = dense_leaf_counts(g, pred, parallel);
  LeafTopology t;
  t.empty = counts.components == 0;
  t.components = counts.components;
  t.boundary_components = counts.boundary_components;
  return t;
}

}  // namespace

LeafTopology sample_leaf(const QuadricModel& model, double s, const SampleOptions& opt,
                         const Config& cfg) {
  if (opt.resolution < 17)
    throw Error(Errc::schema_error, "resolution must be at least 17 per axis");
  double hw = auto_half_width(s, opt.box_half_width);
  LeafTopology t = model_leaf_once(model, s, hw, opt.resolution, opt.parallel, cfg);
  if (opt.stability_check) {
    LeafTopology t2 = model_leaf_once(model, s, hw, 2 * opt.resolution, opt.parallel, cfg);
    if (t.components != t2.components || t.boundary_components != t2.boundary_components)
      throw Error(Errc::resolution_too_coarse,
                  "component counts unstable between resolution r and 2r");
  }
  return t;
}

std::vector<std::vector<double>> boundary_cells(const QuadricModel& model, double s,
                                                const SampleOptions& opt, const Config& cfg) {
  (void)cfg;
  if (opt.resolution < 17)
    throw Error(Errc::schema_error, "resolution must be at least 17 per axis");
  const int n = model.n, dim = 2 * n;
  double hw = auto_half_width(s, opt.box_half_width);
  GridSpec g{dim, opt.resolution, hw};
  if (g.cell_count() > kDenseCellBudget)
    throw Error(Errc::grid_infeasible, "boundary dump needs a dense-size grid");
  auto axis = g.axis_centers();

  std::vector<std::vector<double>> rows;
  std::vector<int> c(dim, 0);
  auto occ_at = [&](const std::vector<int>& cc) {
    Eigen::VectorXcd z(n);
    for (int i = 0; i < n; ++i) z(i) = cplx(axis[cc[i]], axis[cc[n + i]]);
    return model.rho(z) <= s;
  };
  while (true) {
    if (occ_at(c)) {
      bool shell = false;
      for (int d = 0; d < dim && !shell; ++d) {
        for (int dir : {-1, 1}) {
          int v = c[d] + dir;
          if (v < 0 || v >= opt.resolution) continue;
          std::vector<int> cc = c;
          cc[d] = v;
          if (!occ_at(cc)) {
            shell = true;
            break;
          }
        }
      }
      if (shell) {
        std::vector<double> row(dim);
        for (int d = 0; d < dim; ++d) row[d] = axis[c[d]];
        rows.push_back(row);
      }
    }
    int d = dim - 1;
    while (d >= 0 && ++c[d] == opt.resolution) c[d--] = 0;
    if (d < 0) break;
  }
  return rows;
}

}  // namespace crext
