#include "crext/grid.hpp"

#include <algorithm>

namespace crext {
namespace grid_detail {

std::vector<std::vector<int>> previous_vertex_offsets(int dim) {
  std::vector<std::vector<int>> out;
  std::vector<int> o(dim, -1);
  const std::int64_t total = [&] {
    std::int64_t t = 1;
    for (int d = 0; d < dim; ++d) t *= 3;
    return t;
  }();
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t c = code;
    for (int d = dim - 1; d >= 0; --d) {
      o[d] = int(c % 3) - 1;
      c /= 3;
    }
    // first nonzero entry must be -1
    int first = 0;
    while (first < dim && o[first] == 0) ++first;
    if (first < dim && o[first] == -1) out.push_back(o);
  }
  return out;
}

}  // namespace grid_detail

namespace {

DiagSet collapse_to(DiagSet s, const GridSpec& g, int target_dim) {
  auto axis = g.axis_centers();
  double gmin2 = axis[0] * axis[0];
  for (double v : axis) gmin2 = std::min(gmin2, v * v);
  while (s.dim() > target_dim) {
    int pick = -1;
    for (int i = 0; i < s.dim(); ++i)
      if (s.weights[i] > 0) {
        pick = i;
        break;
      }
    if (pick < 0)
      throw Error(Errc::grid_infeasible,
                  "separable reduction needs a positive axis to collapse");
    s.t -= s.weights[pick] * gmin2;
    s.weights.erase(s.weights.begin() + pick);
  }
  return s;
}

LeafCounts dense_from_diag(const GridSpec& g, const DiagSet& s, bool parallel) {
  auto axis = g.axis_centers();
  std::vector<std::vector<double>> tbl(g.dim, std::vector<double>(g.res));
  for (int d = 0; d < g.dim; ++d)
    for (int i = 0; i < g.res; ++i) tbl[d][i] = s.weights[d] * axis[i] * axis[i];
  // Predicate over center coordinates; recover the index from the coordinate
  // to use the tables exactly (avoids re-deriving w*g^2 per cell).
  const double step = 2.0 * g.half_width / g.res;
  const int dim = g.dim;
  const double t = s.t;
  const bool strict = s.strict;
  auto pred = [&, dim, t, strict, step](const double* x) {
    double q = 0.0;
    for (int d = 0; d < dim; ++d) {
      int i = int((x[d] + g.half_width) / step);
      q += tbl[d][std::clamp(i, 0, g.res - 1)];
    }
    return strict ? (q < t) : (q <= t);
  };
  return dense_leaf_counts(g, pred, parallel);
}

}  // namespace

LeafCounts separable_leaf_counts(const GridSpec& g, const DiagSet& set, bool parallel,
                                 const Config& cfg) {
  (void)cfg;
  if (int(set.weights.size()) != g.dim)
    throw Error(Errc::internal, "weight count does not match grid dimension");

  if (g.dim <= 4) return dense_from_diag(g, set, parallel);

  DiagSet sc = collapse_to(set, g, 4);
  GridSpec gc{sc.dim(), g.res, g.half_width};
  LeafCounts comp = dense_from_diag(gc, sc, parallel);

  LeafCounts out;
  out.occupied = comp.components == 0 ? 0 : -1;  // cells not materialized
  out.components = comp.components;
  if (comp.components == 0) return out;

  DiagSet complement;
  complement.weights.resize(set.weights.size());
  for (std::size_t i = 0; i < set.weights.size(); ++i) complement.weights[i] = -set.weights[i];
  complement.t = -set.t;
  complement.strict = !set.strict;
  DiagSet cc = collapse_to(complement, g, 4);
  GridSpec gcc{cc.dim(), g.res, g.half_width};
  LeafCounts comp2 = dense_from_diag(gcc, cc, parallel);

  if (comp.components > 1 && comp2.components > 1)
    throw Error(Errc::grid_infeasible,
                "boundary pairing ambiguous: set and complement both disconnected");
  out.boundary_components = comp.components * comp2.components;
  return out;
}

}  // namespace crext
