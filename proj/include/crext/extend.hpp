#ifndef CREXT_EXTEND_HPP
#define CREXT_EXTEND_HPP

#include <functional>

#include "crext/discs.hpp"
#include "crext/topology.hpp"

namespace crext {

// CR data on M, parametrized by z (s = rho(z) implicitly).
struct BoundaryData {
  enum class Kind { closed_form, sampled };
  std::function<cplx(const Eigen::VectorXcd&)> eval;
  Kind kind = Kind::closed_form;
};

struct LeafPoint {
  Eigen::VectorXcd z;
  double s;
};

struct CauchyResult {
  cplx value;
  double est_error;  // node-halving estimate
};

struct ExtensionResult {
  cplx value;
  double est_error = 0.0;
  std::vector<std::string> chain;       // discs / leaves used, in order
  double max_principle_bound = 0.0;     // data oscillation on the last contour
};

enum class Route { automatic, direct_disc, shrink_family, rational_leaf };

// Coordinate frame in which disc_through applies: z = T w with the
// transformed model in reduced shape.
struct DiscFrame {
  QuadricModel model;
  Eigen::MatrixXcd t;
  Eigen::MatrixXcd t_inv;
  bool identity = true;
};
DiscFrame disc_frame(const QuadricModel& model, const Config& cfg = default_config());

// Trapezoid Cauchy integral over the disc's closed contour; the tangent
// tau'(theta) comes from the spectral (DFT) derivative of the node samples,
// so analytic integrands converge spectrally.
CauchyResult cauchy_eval(const BoundaryData& data, const AffineDisc& disc, cplx xi,
                         const Config& cfg = default_config());

// Generic closed-contour Cauchy transform used by the n = 1 paths.
CauchyResult cauchy_over_contour(const std::vector<cplx>& nodes,
                                 const std::vector<cplx>& values, cplx at);

// Single-disc Lewy evaluation at a point of H_+ \ M.
ExtensionResult leafwise_lewy(const BoundaryData& data, const QuadricModel& model,
                              const LeafPoint& p, const Config& cfg = default_config());

// Full orchestration: verdict gate, side flip, block reduction, then the
// direct disc when its boundary stays in the CR-regular tube, the shrink
// family continuation otherwise, and the rational-leaf t-path for s > 0
// points supported on the first two coordinates.
ExtensionResult extend_at_point(const BoundaryData& data, const QuadricModel& model,
                                const LeafPoint& p, const Config& cfg = default_config(),
                                Route force = Route::automatic);

struct ProbeRow {
  LeafPoint p;
  double candidate_abs = 0.0;      // |closed-form candidate| at the probe
  double data_sup_boundary = 0.0;  // sup |f| on the attached disc boundary
  double pole_distance = 0.0;      // probe distance to the pole set
};

struct DivergenceReport {
  std::string example_id;
  std::string mechanism;
  std::vector<ProbeRow> probes;
  double growth_ratio = 0.0;
  bool monotone = false;
  double arc_mismatch = 0.0;
  double component_mismatch = 0.0;
  int leaf_components = 0;
  int boundary_components = 0;
  double threshold = 0.0;
  bool passed = false;
};

// Non-extension demonstrations for the bundled counterexample models.
// example_id in {"2.3", "2.4-lower-side", "8.2", "8.3"}.
DivergenceReport verify_nonextension(const std::string& example_id, const QuadricModel& model,
                                     const BoundaryData& data,
                                     const std::vector<LeafPoint>& probes,
                                     const Config& cfg = default_config());

// Closed contour tracing of the n = 1 leaf boundary {rho = s}.
std::vector<cplx> leaf_contour_n1(const QuadricModel& model, double s, int k_nodes,
                                  const Config& cfg = default_config());

}  // namespace crext

#endif
