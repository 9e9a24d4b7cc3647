#ifndef CREXT_GRID_HPP
#define CREXT_GRID_HPP

#include <cstdint>
#include <vector>

#include "crext/common.hpp"

namespace crext {

// Axis-aligned cell grid on [-L, L]^dim, res cells per axis, centers
// g(i) = -L + (i + 1/2) * 2L/res.
struct GridSpec {
  int dim;
  int res;
  double half_width;

  std::int64_t cell_count() const {
    std::int64_t n = 1;
    for (int d = 0; d < dim; ++d) n *= res;
    return n;
  }
  std::vector<double> axis_centers() const {
    std::vector<double> g(res);
    double step = 2.0 * half_width / res;
    for (int i = 0; i < res; ++i) g[i] = -half_width + (i + 0.5) * step;
    return g;
  }
};

struct LeafCounts {
  std::int64_t occupied = 0;  // -1 when the engine does not materialize cells
  int components = 0;
  int boundary_components = 0;
};

constexpr std::int64_t kDenseCellBudget = 300'000'000;

struct UnionFind {
  std::vector<std::int32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = std::int32_t(i);
  }
  std::int32_t find(std::int32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent[b] = a;
    else parent[a] = b;
  }
};

namespace grid_detail {

// Offsets o in {-1,0,1}^dim that are lexicographically negative (first
// nonzero entry is -1): the "previous" half of the vertex neighborhood.
std::vector<std::vector<int>> previous_vertex_offsets(int dim);

}  // namespace grid_detail

// Optional collector of labeled shell cells (coordinates + component root).
struct DenseCellDump {
  std::vector<std::vector<double>> boundary_cell_coords;
  std::vector<std::int32_t> boundary_cell_label;
};

// Dense engine.  Pred: bool(const double* center_coords).  The serial path is
// the reference implementation; parallel=true runs the OpenMP kernel
// (chunked along axis 0, cross-chunk unions stitched serially afterwards).
template <class Pred>
LeafCounts dense_leaf_counts(const GridSpec& g, Pred&& occupied_pred, bool parallel,
                             DenseCellDump* dump = nullptr);

// Separable engine for diagonal quadratic sets
//   S = { c : sum_d weights[d] * g(c_d)^2  (<= | <)  t }.
struct DiagSet {
  std::vector<double> weights;
  double t = 0.0;
  bool strict = false;

  int dim() const { return int(weights.size()); }
};

// Components of S equal components of its projection along any positive-weight
// axis: columns along such an axis are nested symmetric intervals around the
// per-axis minimum of g^2, so adjacent nonempty columns always overlap.
// Collapsing repeatedly reduces to <= 4 dimensions, where the dense engine
// finishes.  Boundary components are counted through the complement:
// #shell components = #adjacent (set-component, complement-component) pairs,
// and for these smooth quadric rasters each pairing contributes one connected
// shell sheet (validated against the dense reference in the tests).
LeafCounts separable_leaf_counts(const GridSpec& g, const DiagSet& set,
                                 bool parallel = true, const Config& cfg = default_config());

// Hole detection in a 2D slice: flood-fills the complement (face adjacency)
// from the center cell; a hole is a complement region not reaching the slice
// edge.  Pred2: bool(int i, int j) occupancy.
template <class Pred2>
bool slice_has_center_hole(int res, Pred2&& occ);

// ---- template implementations ----

namespace grid_detail {

// Runs body(c0) for c0 in [0, n0).  Bodies touch disjoint slabs of the cell
// arrays, so the parallel path is race-free without atomics; anything that
// crosses slabs is stitched serially by the caller afterwards.
template <class Body>
void run_chunked(std::int64_t n0, bool parallel, Body&& body) {
#if defined(_OPENMP)
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n0; ++i) body(int(i));
    return;
  }
#else
  (void)parallel;
#endif
  for (std::int64_t i = 0; i < n0; ++i) body(int(i));
}

}  // namespace grid_detail

template <class Pred>
LeafCounts dense_leaf_counts(const GridSpec& g, Pred&& occupied_pred, bool parallel,
                             DenseCellDump* dump) {
  const int dim = g.dim, res = g.res;
  const std::int64_t n = g.cell_count();
  if (n > kDenseCellBudget)
    throw Error(Errc::grid_infeasible,
                "dense grid of " + std::to_string(n) + " cells exceeds the budget");
  std::vector<double> axis = g.axis_centers();
  std::vector<std::int64_t> stride(dim);
  stride[dim - 1] = 1;
  for (int d = dim - 2; d >= 0; --d) stride[d] = stride[d + 1] * res;

  std::vector<std::uint8_t> occ(std::size_t(n), 0);
  const std::int64_t slab = stride[0];

  // Occupancy fill.
  grid_detail::run_chunked(res, parallel, [&](int c0) {
    std::vector<int> c(dim, 0);
    c[0] = c0;
    std::vector<double> x(dim);
    x[0] = axis[c0];
    for (std::int64_t ofs = 0; ofs < slab; ++ofs) {
      for (int d = 1; d < dim; ++d) x[d] = axis[c[d]];
      occ[std::size_t(c0 * slab + ofs)] = occupied_pred(x.data()) ? 1 : 0;
      for (int d = dim - 1; d >= 1; --d) {
        if (++c[d] < res) break;
        c[d] = 0;
      }
    }
  });

  LeafCounts out;
  for (std::int64_t i = 0; i < n; ++i) out.occupied += occ[std::size_t(i)];
  if (out.occupied == 0) return out;

  // Components, face adjacency.
  UnionFind uf{std::size_t(n)};
  grid_detail::run_chunked(res, parallel, [&](int c0) {
    std::vector<int> c(dim, 0);
    c[0] = c0;
    for (std::int64_t ofs = 0; ofs < slab; ++ofs) {
      std::int64_t i = c0 * slab + ofs;
      if (occ[std::size_t(i)]) {
        for (int d = dim - 1; d >= 1; --d)
          if (c[d] > 0 && occ[std::size_t(i - stride[d])])
            uf.unite(std::int32_t(i), std::int32_t(i - stride[d]));
      }
      for (int d = dim - 1; d >= 1; --d) {
        if (++c[d] < res) break;
        c[d] = 0;
      }
    }
  });
  // Stitch across axis 0 (serial; also covers the non-chunked case).
  for (int c0 = 1; c0 < res; ++c0)
    for (std::int64_t ofs = 0; ofs < slab; ++ofs) {
      std::int64_t i = c0 * slab + ofs;
      if (occ[std::size_t(i)] && occ[std::size_t(i - slab)])
        uf.unite(std::int32_t(i), std::int32_t(i - slab));
    }
  for (std::int64_t i = 0; i < n; ++i)
    if (occ[std::size_t(i)] && uf.find(std::int32_t(i)) == std::int32_t(i)) out.components++;

  // Shell cells: occupied with an unoccupied in-box face neighbor.
  std::vector<std::uint8_t> shell(std::size_t(n), 0);
  grid_detail::run_chunked(res, parallel, [&](int c0) {
    std::vector<int> c(dim, 0);
    c[0] = c0;
    for (std::int64_t ofs = 0; ofs < slab; ++ofs) {
      std::int64_t i = c0 * slab + ofs;
      if (occ[std::size_t(i)]) {
        bool b = false;
        for (int d = 0; d < dim && !b; ++d) {
          if (c[d] > 0 && !occ[std::size_t(i - stride[d])]) b = true;
          if (c[d] < res - 1 && !occ[std::size_t(i + stride[d])]) b = true;
        }
        shell[std::size_t(i)] = b ? 1 : 0;
      }
      for (int d = dim - 1; d >= 1; --d) {
        if (++c[d] < res) break;
        c[d] = 0;
      }
    }
  });

  // Shell components, vertex adjacency (face adjacency splits oblique
  // staircases; the full 3^dim - 1 neighborhood does not).
  auto offsets = grid_detail::previous_vertex_offsets(dim);
  std::vector<std::int64_t> odelta(offsets.size());
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    std::int64_t dd = 0;
    for (int d = 0; d < dim; ++d) dd += offsets[k][d] * stride[d];
    odelta[k] = dd;
  }
  UnionFind buf{std::size_t(n)};
  grid_detail::run_chunked(res, parallel, [&](int c0) {
    std::vector<int> c(dim, 0);
    c[0] = c0;
    for (std::int64_t ofs = 0; ofs < slab; ++ofs) {
      std::int64_t i = c0 * slab + ofs;
      if (shell[std::size_t(i)]) {
        for (std::size_t k = 0; k < offsets.size(); ++k) {
          if (offsets[k][0] != 0) continue;  // cross-slab handled in the stitch
          bool in = true;
          for (int d = 1; d < dim; ++d) {
            int cc = c[d] + offsets[k][d];
            if (cc < 0 || cc >= res) {
              in = false;
              break;
            }
          }
          if (in && shell[std::size_t(i + odelta[k])])
            buf.unite(std::int32_t(i), std::int32_t(i + odelta[k]));
        }
      }
      for (int d = dim - 1; d >= 1; --d) {
        if (++c[d] < res) break;
        c[d] = 0;
      }
    }
  });
  {
    std::vector<int> c(dim, 0);
    for (int c0 = 1; c0 < res; ++c0) {
      std::fill(c.begin(), c.end(), 0);
      c[0] = c0;
      for (std::int64_t ofs = 0; ofs < slab; ++ofs) {
        std::int64_t i = c0 * slab + ofs;
        if (shell[std::size_t(i)]) {
          for (std::size_t k = 0; k < offsets.size(); ++k) {
            if (offsets[k][0] != -1) continue;
            bool in = true;
            for (int d = 1; d < dim; ++d) {
              int cc = c[d] + offsets[k][d];
              if (cc < 0 || cc >= res) {
                in = false;
                break;
              }
            }
            if (in && shell[std::size_t(i + odelta[k])])
              buf.unite(std::int32_t(i), std::int32_t(i + odelta[k]));
          }
        }
        for (int d = dim - 1; d >= 1; --d) {
          if (++c[d] < res) break;
          c[d] = 0;
        }
      }
    }
  }
  for (std::int64_t i = 0; i < n; ++i)
    if (shell[std::size_t(i)] && buf.find(std::int32_t(i)) == std::int32_t(i))
      out.boundary_components++;

  if (dump) {
    std::vector<int> c(dim, 0);
    for (std::int64_t i = 0; i < n; ++i) {
      if (shell[std::size_t(i)]) {
        std::vector<double> coords(dim);
        for (int d = 0; d < dim; ++d) coords[d] = axis[c[d]];
        dump->boundary_cell_coords.push_back(std::move(coords));
        dump->boundary_cell_label.push_back(buf.find(std::int32_t(i)));
      }
      for (int d = dim - 1; d >= 0; --d) {
        if (++c[d] < res) break;
        c[d] = 0;
      }
    }
  }
  return out;
}

template <class Pred2>
bool slice_has_center_hole(int res, Pred2&& occ) {
  std::vector<std::uint8_t> o(std::size_t(res) * res);
  for (int i = 0; i < res; ++i)
    for (int j = 0; j < res; ++j) o[std::size_t(i) * res + j] = occ(i, j) ? 1 : 0;
  int ci = res / 2, cj = res / 2;
  if (o[std::size_t(ci) * res + cj]) return false;
  std::vector<std::uint8_t> seen(std::size_t(res) * res, 0);
  std::vector<std::pair<int, int>> stack{{ci, cj}};
  seen[std::size_t(ci) * res + cj] = 1;
  bool reached_edge = false;
  while (!stack.empty()) {
    auto [i, j] = stack.back();
    stack.pop_back();
    if (i == 0 || j == 0 || i == res - 1 || j == res - 1) reached_edge = true;
    const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      int ii = i + di[k], jj = j + dj[k];
      if (ii < 0 || jj < 0 || ii >= res || jj >= res) continue;
      std::size_t idx = std::size_t(ii) * res + jj;
      if (!seen[idx] && !o[idx]) {
        seen[idx] = 1;
        stack.emplace_back(ii, jj);
      }
    }
  }
  return !reached_edge;
}

}  // namespace crext

#endif
