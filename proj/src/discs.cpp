#include "crext/discs.hpp"

#include <algorithm>
#include <cmath>

namespace crext {

std::pair<cplx, cplx> elliptic_direction(double lambda1, double lambda2) {
  if (lambda1 + lambda2 <= 0.0) return {cplx(1.0, 0.0), cplx(0.0, 0.0)};
  double denom = std::sqrt(lambda1 + lambda2);
  return {cplx(std::sqrt(lambda2) / denom, 0.0), cplx(0.0, std::sqrt(lambda1) / denom)};
}

namespace {

bool pm_one_diag_sorted(const Eigen::MatrixXcd& a, double tol, int* positives) {
  const int n = int(a.rows());
  int pos = 0;
  double prev = 2.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (i != j && std::abs(a(i, j)) > tol) return false;
    double d = a(i, i).real();
    if (std::abs(a(i, i).imag()) > tol || std::abs(std::abs(d) - 1.0) > tol) return false;
    if (d > prev + tol) return false;
    prev = d;
    if (d > 0) pos++;
  }
  if (positives) *positives = pos;
  return true;
}

struct LineRestriction {
  DiscGeometry geom;
  std::vector<CPoly> rho_dz;  // Wirtinger z-derivatives of rho, for d r / d xi
  const QuadricModel* model;
  Eigen::VectorXcd base;
  Eigen::VectorXcd dir;

  double r(cplx xi) const { return model->rho(base + xi * dir); }
  cplx dr_dxi(cplx xi) const {
    Eigen::VectorXcd w = base + xi * dir;
    cplx acc = 0.0;
    for (int j = 0; j < model->n; ++j)
      if (dir(j) != cplx(0.0)) acc += rho_dz[j].eval(w) * dir(j);
    return acc;
  }
};

LineRestriction restrict_line(const Eigen::VectorXcd& z, const QuadricModel& model,
                              const Eigen::VectorXcd& c) {
  LineRestriction lr;
  lr.model = &model;
  lr.base = z;
  lr.dir = c;
  lr.geom.q0 = model.q_value(z);
  // xi-coefficient of the quadratic part: zbar^T A c + 2 z^T B c.
  lr.geom.p = (z.conjugate().transpose() * model.a.m * c)(0) +
              2.0 * (z.transpose() * model.b.m * c)(0);
  lr.geom.mu = (c.conjugate().transpose() * model.a.m * c)(0).real();
  lr.geom.alpha = (c.transpose() * model.b.m * c)(0);
  double mu = (std::abs(lr.geom.mu) > 1e-300) ? lr.geom.mu : 1.0;
  lr.geom.center = -std::conj(lr.geom.p) / mu;
  lr.geom.r_const = std::norm(lr.geom.p) / mu - lr.geom.q0;
  CPoly rho = model.rho_poly();
  for (int j = 0; j < model.n; ++j) lr.rho_dz.push_back(rho.wirtinger(j, false));
  return lr;
}

// Radius along the ray trace_center + rho e^{i theta} where r crosses s.
double trace_ray(const LineRestriction& lr, cplx origin, double theta, double s,
                 double guess, const Config& cfg) {
  cplx e = std::exp(cplx(0.0, theta));
  auto h = [&](double rr) { return lr.r(origin + rr * e) - s; };
  if (h(0.0) >= 0.0) throw Error(Errc::empty_disc, "trace origin is not interior");
  double hi = std::max(guess, 1e-6);
  int grow = 0;
  while (h(hi) < 0.0) {
    hi *= 2.0;
    if (++grow > 60) throw Error(Errc::curve_not_closed, "no boundary crossing along a ray");
  }
  double lo = (grow == 0) ? 0.0 : hi / 2.0;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    (h(mid) < 0.0 ? lo : hi) = mid;
  }
  double rr = 0.5 * (lo + hi);
  for (int it = 0; it < 4; ++it) {  // Newton polish
    cplx d = lr.dr_dxi(origin + rr * e);
    double dh = 2.0 * (e * d).real();
    if (std::abs(dh) < 1e-14) break;
    double step = h(rr) / dh;
    if (std::abs(step) > 0.25 * rr + 1e-9) break;
    rr -= step;
  }
  (void)cfg;
  return rr;
}

void finalize_disc(AffineDisc& d, const LineRestriction& lr, const Config& cfg) {
  d.attach_residual = 0.0;
  d.min_sing_dist = std::numeric_limits<double>::infinity();
  d.min_grad = std::numeric_limits<double>::infinity();
  for (cplx xi : d.boundary_xi) {
    d.attach_residual = std::max(d.attach_residual, std::abs(lr.r(xi) - d.s));
    Eigen::VectorXcd w = d.point_at(xi);
    double dist = std::sqrt(w.squaredNorm() + d.s * d.s);
    d.min_sing_dist = std::min(d.min_sing_dist, dist);
    d.min_grad = std::min(d.min_grad, 2.0 * std::abs(lr.dr_dxi(xi)));
  }
  if (d.min_sing_dist < 1e-4 * (1.0 + std::sqrt(std::abs(d.geom.radius_sq))))
    throw Error(Errc::singularity_hit, "boundary passes through the CR singularity");
  if (d.attach_residual > cfg.boundary_tol)
    throw Error(Errc::curve_not_closed,
                "traced boundary left M: residual " + std::to_string(d.attach_residual));

  // Containment certificate of the attachment estimate: |E(l(xi))| must be
  // dominated by ||z||^2/2 + |xi - center|^2/2 on a region holding the disc.
  if (!lr.model->pure_quadric()) {
    double region = 0.0;
    for (cplx xi : d.boundary_xi) region = std::max(region, std::abs(xi - d.geom.center));
    region *= 1.2;
    double zn2 = d.base.squaredNorm();
    int halvings = 0;
    double margin = 0.0;
    for (; halvings <= 40; ++halvings) {
      bool ok = true;
      margin = std::numeric_limits<double>::infinity();
      for (int ir = 1; ir <= 6 && ok; ++ir) {
        for (int k = 0; k < 32 && ok; ++k) {
          cplx xi = d.geom.center +
                    region * (ir / 6.0) * std::exp(cplx(0.0, 2.0 * kPi * k / 32.0));
          double lhs = std::abs(lr.model->e.eval(d.point_at(xi)).real());
          double rhs = 0.5 * zn2 + 0.5 * std::norm(xi - d.geom.center);
          margin = std::min(margin, rhs - lhs);
          if (lhs > rhs) ok = false;
        }
      }
      if (ok) break;
      region *= 0.5;
    }
    if (halvings > 40)
      throw Error(Errc::containment_fail, "higher-order terms dominate near the disc");
    for (cplx xi : d.boundary_xi)
      if (std::abs(xi - d.geom.center) > region + 1e-12)
        throw Error(Errc::containment_fail, "disc escapes the certified region");
    d.containment_margin = margin;
  } else {
    d.containment_margin = std::numeric_limits<double>::infinity();
  }
}

AffineDisc build_disc(const Eigen::VectorXcd& z, double s, const QuadricModel& model,
                      const Eigen::VectorXcd& c, const Config& cfg) {
  LineRestriction lr = restrict_line(z, model, c);
  if (lr.geom.mu <= 0.5)
    throw Error(Errc::hypothesis_fail, "direction is not elliptic for A");
  lr.geom.radius_sq = (s + lr.geom.r_const) / lr.geom.mu;

  AffineDisc d;
  d.base = z;
  d.s = s;
  d.dir = c;
  d.geom = lr.geom;

  const bool quadric_circle =
      model.pure_quadric() && std::abs(lr.geom.alpha) < 1e-13 && std::abs(lr.geom.mu - 1.0) < 1e-12;
  if (quadric_circle && lr.geom.radius_sq <= 0.0)
    throw Error(Errc::empty_disc, "nonpositive squared radius");
  if (model.rho(z) >= s) throw Error(Errc::empty_disc, "base point is not interior");

  const int k = cfg.boundary_nodes;
  d.boundary_xi.resize(k);
  if (quadric_circle) {
    d.is_circle = true;
    d.trace_center = lr.geom.center;
    double r = std::sqrt(lr.geom.radius_sq);
    for (int i = 0; i < k; ++i)
      d.boundary_xi[i] = lr.geom.center + r * std::exp(cplx(0.0, 2.0 * kPi * i / k));
  } else {
    d.is_circle = false;
    cplx origin = (lr.r(lr.geom.center) < s) ? lr.geom.center : cplx(0.0);
    d.trace_center = origin;
    double guess = lr.geom.radius_sq > 0 ? std::sqrt(lr.geom.radius_sq) : 1e-3;
    for (int i = 0; i < k; ++i) {
      double th = 2.0 * kPi * i / k;
      double rr = trace_ray(lr, origin, th, s, guess, cfg);
      d.boundary_xi[i] = origin + rr * std::exp(cplx(0.0, th));
      guess = rr;
    }
  }
  finalize_disc(d, lr, cfg);
  return d;
}

}  // namespace

AffineDisc disc_through(const Eigen::VectorXcd& z, double s, const QuadricModel& model,
                        const Config& cfg) {
  const int n = model.n;
  if (n < 2) throw Error(Errc::hypothesis_fail, "affine discs need n >= 2");
  int positives = 0;
  if (!pm_one_diag_sorted(model.a.m, 1e-9, &positives))
    throw Error(Errc::hypothesis_fail, "model is not block-reduced (A not diag +-1)");

  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n);
  if (positives >= 2) {
    double l1 = model.b.m(0, 0).real(), l2 = model.b.m(1, 1).real();
    if (std::abs(model.b.m(0, 1)) > 1e-9 || std::abs(model.b.m(0, 0).imag()) > 1e-9 ||
        std::abs(model.b.m(1, 1).imag()) > 1e-9 || l1 < -1e-9 || l2 < -1e-9)
      throw Error(Errc::hypothesis_fail, "model is not block-reduced (B block not diagonal)");
    auto [c1, c2] = elliptic_direction(std::max(l1, 0.0), std::max(l2, 0.0));
    c(0) = c1;
    c(1) = c2;
  } else if (positives == 1) {
    // Hyperbolic-model line discs: fix all coordinates but the first,
    // which needs a vanishing bilinear self-term to stay elliptic.
    if (std::abs(model.b.m(0, 0)) > 1e-9)
      throw Error(Errc::hypothesis_fail, "a = 1 line discs need B_11 = 0");
    c(0) = 1.0;
  } else {
    throw Error(Errc::hypothesis_fail, "no positive direction for an attached disc");
  }
  return build_disc(z, s, model, c, cfg);
}

AffineDisc transversal_perturb(const AffineDisc& disc, const QuadricModel& model, double eps,
                               const Config& cfg) {
  if (eps <= 0) throw Error(Errc::hypothesis_fail, "eps must be positive");
  if (disc.min_grad >= cfg.grad_tol) return disc;  // identity jitter accepted
  Rng rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
    Eigen::VectorXcd c = disc.dir;
    // Only the first two components move (the rest stay pinned).
    for (int i = 0; i < std::min<int>(2, int(c.size())); ++i)
      c(i) += eps * cplx(gauss(rng), gauss(rng));
    c /= std::sqrt(c.squaredNorm());
    try {
      AffineDisc cand = build_disc(disc.base, disc.s, model, c, cfg);
      if (cand.min_grad >= cfg.grad_tol) return cand;
    } catch (const Error&) {
      // jitter landed badly; try the next one
    }
  }
  throw Error(Errc::transversality_fail, "no transversal jitter found");
}

DiscFamily shrink_family(const AffineDisc& disc, const QuadricModel& model, int steps,
                         const Config& cfg) {
  DiscFamily fam;
  for (int k = 0; k <= steps; ++k) {
    double t = 1.0 - double(k) / steps;
    try {
      AffineDisc d = build_disc(t * disc.base, disc.s, model, disc.dir, cfg);
      fam.t_values.push_back(t);
      fam.discs.push_back(std::move(d));
    } catch (const Error& e) {
      if (e.code() == Errc::empty_disc) {
        fam.ended_empty = true;
        fam.t_empty = t;
        break;
      }
      throw;
    }
  }
  return fam;
}

Eigen::VectorXcd RationalLeaf::phi(cplx xi) const {
  Eigen::VectorXcd z = Eigen::VectorXcd::Zero(nmodel);
  cplx q = t / xi;
  z(0) = (xi + q) / (2.0 * std::sqrt(lambda1));
  z(1) = (xi - q) / (cplx(0.0, 2.0) * std::sqrt(lambda2));
  return z;
}

bool RationalLeaf::contains(cplx xi) const {
  double r = std::abs(xi);
  if (r <= r_lo || r >= r_hi) return false;
  double lr = std::log(r);
  int ir = int((lr - std::log(r_lo)) / (std::log(r_hi) - std::log(r_lo)) * n_r);
  double th = std::arg(xi);
  if (th < 0) th += 2.0 * kPi;
  int it = int(th / (2.0 * kPi) * n_th) % n_th;
  if (ir < 0 || ir >= n_r) return false;
  return occ[std::size_t(ir) * n_th + it] != 0;
}

double RationalLeaf::clearance(cplx xi) const {
  double best = std::numeric_limits<double>::infinity();
  double lstep = (std::log(r_hi) - std::log(r_lo)) / n_r;
  for (int ir = 0; ir < n_r; ++ir) {
    double rr = std::exp(std::log(r_lo) + (ir + 0.5) * lstep);
    for (int it = 0; it < n_th; ++it) {
      if (occ[std::size_t(ir) * n_th + it]) continue;
      double th = 2.0 * kPi * (it + 0.5) / n_th;
      best = std::min(best, std::abs(xi - rr * std::exp(cplx(0.0, th))));
    }
  }
  // Stay a cell diameter away from any unoccupied cell center.
  double cell = std::abs(xi) * (std::exp(lstep) - 1.0) + std::abs(xi) * 2.0 * kPi / n_th;
  return best - cell;
}

std::optional<std::vector<cplx>> RationalLeaf::contour_around(cplx xi0, int k_nodes,
                                                              double radius) const {
  if (!contains(xi0)) return std::nullopt;
  double rad = radius > 0 ? radius : 0.8 * clearance(xi0);
  if (rad <= 0) return std::nullopt;
  std::vector<cplx> nodes(k_nodes);
  for (int i = 0; i < k_nodes; ++i)
    nodes[i] = xi0 + rad * std::exp(cplx(0.0, 2.0 * kPi * i / k_nodes));
  for (cplx nd : nodes)
    if (!contains(nd)) return std::nullopt;
  return nodes;
}

RationalLeaf rational_leaf(cplx t, double lambda1, double lambda2, const QuadricModel& model,
                           double s, const Config& cfg) {
  if (std::abs(t) == 0.0) throw Error(Errc::branch_error, "t must be nonzero");
  if (lambda1 <= 0 || lambda2 <= 0)
    throw Error(Errc::hypothesis_fail, "rational leaves need lambda1, lambda2 > 0");

  RationalLeaf leaf;
  leaf.t = t;
  leaf.lambda1 = lambda1;
  leaf.lambda2 = lambda2;
  leaf.s = s;
  leaf.nmodel = model.n;
  leaf.n_r = 160;
  leaf.n_th = 256;
  double rt = std::sqrt(std::abs(t));
  double lmax = std::max(lambda1, lambda2);
  leaf.r_lo = rt / 12.0;
  leaf.r_hi = std::max(rt * 12.0, 5.0 * std::sqrt(lmax * std::max(s, 1e-9)));
  leaf.occ.assign(std::size_t(leaf.n_r) * leaf.n_th, 0);

  double budget = s - 2.0 * t.real();
  auto value = [&](cplx xi) {
    Eigen::VectorXcd z = leaf.phi(xi);
    double v = z.squaredNorm();
    if (!model.e.empty()) v += model.e.eval(z).real();
    return v;
  };

  double lstep = (std::log(leaf.r_hi) - std::log(leaf.r_lo)) / leaf.n_r;
  bool any = false, rim = false;
  for (int ir = 0; ir < leaf.n_r; ++ir) {
    double rr = std::exp(std::log(leaf.r_lo) + (ir + 0.5) * lstep);
    for (int it = 0; it < leaf.n_th; ++it) {
      cplx xi = rr * std::exp(cplx(0.0, 2.0 * kPi * (it + 0.5) / leaf.n_th));
      bool in = value(xi) < budget;
      leaf.occ[std::size_t(ir) * leaf.n_th + it] = in;
      any |= in;
      if (in && (ir == 0 || ir == leaf.n_r - 1)) rim = true;
    }
  }
  if (!any) throw Error(Errc::empty_y_t, "Y_t is empty");
  if (rim) throw Error(Errc::branch_error, "Y_t reaches the radial grid window");

  // Relative boundary: polish radial occupancy transitions.
  double prad = 0.0, patt = 0.0;
  for (int it = 0; it < leaf.n_th; ++it) {
    double th = 2.0 * kPi * (it + 0.5) / leaf.n_th;
    cplx e = std::exp(cplx(0.0, th));
    for (int ir = 0; ir + 1 < leaf.n_r; ++ir) {
      bool a = leaf.occ[std::size_t(ir) * leaf.n_th + it];
      bool b = leaf.occ[std::size_t(ir + 1) * leaf.n_th + it];
      if (a == b) continue;
      double rlo = std::exp(std::log(leaf.r_lo) + (ir + 0.5) * lstep);
      double rhi = std::exp(std::log(leaf.r_lo) + (ir + 1.5) * lstep);
      for (int bs = 0; bs < 60; ++bs) {
        double mid = 0.5 * (rlo + rhi);
        bool in = value(mid * e) < budget;
        (in == a ? rlo : rhi) = mid;
      }
      cplx xi = 0.5 * (rlo + rhi) * e;
      leaf.boundary_nodes.push_back(xi);
      Eigen::VectorXcd z = leaf.phi(xi);
      cplx g = lambda1 * z(0) * z(0) + lambda2 * z(1) * z(1);
      prad = std::max(prad, std::abs(g - t));
      patt = std::max(patt, std::abs(s - model.rho(z)));
    }
  }
  leaf.param_residual = prad;
  leaf.attach_residual = patt;
  (void)cfg;
  return leaf;
}

}  // namespace crext
