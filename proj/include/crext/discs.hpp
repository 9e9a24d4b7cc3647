#ifndef CREXT_DISCS_HPP
#define CREXT_DISCS_HPP

#include <optional>

#include "crext/quadric.hpp"

namespace crext {

// Quadratic geometry of rho restricted to the affine line l(xi) = z + xi*c:
//   r(xi) = q0 + 2 Re(p xi) + mu |xi|^2 + 2 Re(alpha xi^2) + E(l(xi)).
// With the canonical elliptic direction, mu = 1 and alpha = 0, so the pure
// quadric boundary {r = s} is the circle |xi - center|^2 = radius_sq.
struct DiscGeometry {
  double q0 = 0.0;
  cplx p;
  double mu = 1.0;
  cplx alpha;
  cplx center;        // -conj(p), the completed-square center
  double r_const = 0.0;  // R = |p|^2 - q0
  double radius_sq = 0.0;  // s + R
};

struct AffineDisc {
  Eigen::VectorXcd base;  // z with (z, s) the carried point, l(0) = z
  double s = 0.0;
  Eigen::VectorXcd dir;   // unit direction c
  DiscGeometry geom;
  bool is_circle = true;           // pure quadric, alpha == 0
  cplx trace_center;               // radial-trace origin in the xi plane
  std::vector<cplx> boundary_xi;   // closed contour, angle-ordered, K nodes
  double attach_residual = 0.0;    // max |s - rho| over boundary nodes
  double min_sing_dist = 0.0;      // min ||(l(xi), s)|| over boundary nodes
  double min_grad = 0.0;           // min 2|dr/dxi| over boundary nodes
  double containment_margin = 0.0; // slack of the |E| <= ... certificate

  Eigen::VectorXcd point_at(cplx xi) const { return base + xi * dir; }
};

struct DiscFamily {
  std::vector<double> t_values;
  std::vector<AffineDisc> discs;
  bool ended_empty = false;
  double t_empty = 0.0;
};

// One solution of lambda1 c1^2 + lambda2 c2^2 = 0, |c1|^2 + |c2|^2 = 1:
// (sqrt(l2), i sqrt(l1)) / sqrt(l1 + l2), or (1, 0) when both vanish.
std::pair<cplx, cplx> elliptic_direction(double lambda1, double lambda2);

// Attached affine disc through an interior point of H_+.  The model must be
// in reduced shape: A diagonal +-1 with the +1 block first and, when a >= 2,
// B's upper-left 2x2 block diag(lambda >= 0) (a == 1 needs B_11 == 0).
AffineDisc disc_through(const Eigen::VectorXcd& z, double s, const QuadricModel& model,
                        const Config& cfg = default_config());

// Deterministic direction jitters until the boundary gradient clears grad_tol.
AffineDisc transversal_perturb(const AffineDisc& disc, const QuadricModel& model, double eps,
                               const Config& cfg = default_config());

// Family of discs through (t z, s), t = 1 -> 0.
DiscFamily shrink_family(const AffineDisc& disc, const QuadricModel& model, int steps,
                         const Config& cfg = default_config());

// Rational leaf X_t = {g = t}, g(z) = lambda1 z1^2 + lambda2 z2^2, with the
// region Y_t = {xi : s - 2 Re t > ||phi_t(xi)||^2 + E(phi_t(xi))} sampled on a
// log-polar grid around |xi| ~ sqrt|t|.
struct RationalLeaf {
  cplx t;
  double lambda1 = 0.0, lambda2 = 0.0;
  double s = 0.0;
  int n_r = 0, n_th = 0;
  double r_lo = 0.0, r_hi = 0.0;
  std::vector<std::uint8_t> occ;
  std::vector<cplx> boundary_nodes;  // polished relative-boundary xi values
  double param_residual = 0.0;       // max |g(phi(xi)) - t| over nodes
  double attach_residual = 0.0;      // max |s - rho(phi(xi))| over boundary nodes
  int nmodel = 2;

  Eigen::VectorXcd phi(cplx xi) const;
  bool contains(cplx xi) const;
  double clearance(cplx xi) const;  // distance to the nearest unoccupied cell
  std::optional<std::vector<cplx>> contour_around(cplx xi0, int k_nodes,
                                                  double radius = 0.0) const;
};

RationalLeaf rational_leaf(cplx t, double lambda1, double lambda2, const QuadricModel& model,
                           double s, const Config& cfg = default_config());

}  // namespace crext

#endif
