#ifndef CREXT_TOPOLOGY_HPP
#define CREXT_TOPOLOGY_HPP

#include "crext/grid.hpp"
#include "crext/quadric.hpp"

namespace crext {

struct LeafTopology {
  bool empty = false;
  int components = 0;
  int boundary_components = 0;
  int pi1_rank = 0;  // 0 or 1
  bool generator_on_boundary = false;
};

// Topology of { x : x^T C x <= s } from the inertia (k, l) of the
// nondegenerate form C, k >= 2:
//   s > 0, or s < 0 with l >= 3:  one component, connected boundary, pi1 = 0
//   s < 0, l = 2:                 connected, pi1 = Z, generator in the boundary
//   s < 0, l = 1:                 two simply connected components
//   s < 0, l = 0:                 empty
// s = 0 gives the cone {q <= 0}, star-shaped about 0: one component,
// connected boundary, trivial pi1 (a single point when l = 0).
LeafTopology classify_quadric_leaf(const Inertia& q_inertia, int s_sign);

struct SampleOptions {
  double box_half_width = 0.0;  // 0 => 2*sqrt(|s|) + 1
  int resolution = 64;
  bool stability_check = false;  // re-run at 2x resolution and compare
  bool parallel = true;
};

// Brute-force grid oracle on the leaf {z : rho(z) <= s} of the model.
// Diagonal pure quadrics in more than 4 real dimensions take the separable
// engine; everything else runs the dense engine (subject to the cell budget).
LeafTopology sample_leaf(const QuadricModel& model, double s, const SampleOptions& opt = {},
                         const Config& cfg = default_config());

// Same oracle at the level of a diagonal real form sum_d w_d x_d^2 <= s;
// used directly by tests to cover inertia combinations of any dimension.
LeafTopology sample_diag_leaf(const std::vector<double>& weights, double s,
                              const SampleOptions& opt = {},
                              const Config& cfg = default_config());

// Boundary-cell dump of a 2n-dimensional leaf for external plotting.
std::vector<std::vector<double>> boundary_cells(const QuadricModel& model, double s,
                                                const SampleOptions& opt = {},
                                                const Config& cfg = default_config());

}  // namespace crext

#endif
