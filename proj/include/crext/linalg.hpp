#ifndef CREXT_LINALG_HPP
#define CREXT_LINALG_HPP

#include <Eigen/Dense>

#include "crext/common.hpp"

namespace crext {

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  int dim() const { return positive + negative + zero; }
};

// Signature of a Hermitian (or real symmetric) matrix.  Eigenvalues within
// zero_tol_factor * spectral norm of 0 count as zero.
Inertia matrix_inertia(const Eigen::MatrixXcd& h, const Config& cfg = default_config());
Inertia matrix_inertia(const Eigen::MatrixXd& h, const Config& cfg = default_config());

// Takagi (Autonne) factorization of a complex symmetric S: S = W diag(sigma) W^T
// with W unitary and sigma >= 0 sorted descending.
//
// Computed from the real symmetric embedding K = [[X, Y], [Y, -X]] for
// S = X + iY: K (u;v)^T = sigma (u;v)^T  iff  S conj(w) = sigma w for
// w = u + iv, and J(u;v) = (-v;u) maps the sigma-eigenspace onto the
// -sigma one, which makes the selected w's Hermitian-orthonormal.  The
// null space needs explicit J-pairing.
struct Takagi {
  Eigen::MatrixXcd w;      // unitary
  Eigen::VectorXd sigma;   // nonnegative, descending
  double residual;         // max abs entry of S - W diag W^T
};
Takagi takagi_factor(const Eigen::MatrixXcd& s, const Config& cfg = default_config());

// Least-squares solve of a (tall) complex system with diagnostics used by
// the extension solver: relative consistency residual and numerical rank.
struct LsqSolution {
  Eigen::VectorXcd x;
  double rel_residual;     // ||Ax - b|| / max(||b||, 1)
  int rank;                // numerical rank of A
  double cond;             // sigma_max / sigma_min (inf if rank-deficient)
};
LsqSolution solve_least_squares(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b,
                                double rank_tol = 1e-10);

}  // namespace crext

#endif
