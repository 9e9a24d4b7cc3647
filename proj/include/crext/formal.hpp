#ifndef CREXT_FORMAL_HPP
#define CREXT_FORMAL_HPP

#include "crext/crfields.hpp"
#include "crext/spoly.hpp"

namespace crext {

// f(z, zbar) = F(z, rho(z, zbar)), expanded and collected.  With a degree
// cap >= 0 the substitution is truncated on the fly (jet arithmetic).
CPoly compose(const SPoly& f, const QuadricModel& model, int max_degree = -1);

enum class ExtendStatus { ok, not_cr };

struct ExtendResult {
  ExtendStatus status;
  SPoly extension;        // valid when status == ok
  double rel_residual;    // consistency residual of the linear solve
  int rank;               // numerical rank of the matching matrix
  int unknowns;           // columns of the matching matrix
  double cond;            // conditioning of the matching matrix
  std::optional<CPoly> witness;  // CR-field witness when not_cr
};

// Lifts a homogeneous degree-d polynomial that is CR on the pure quadric to a
// weighted homogeneous F(z,s) = sum_{j+2k=d} P_j(z) s^k with F(z, Q) = f.
// The coefficient-matching system is solved in least squares; inconsistency
// beyond ls_residual_tol means f was not CR (the solve and the symbolic CR
// check are independent routes to the same verdict).
ExtendResult extend_homogeneous(const CPoly& f_d, const QuadricModel& model,
                                const Config& cfg = default_config());

struct Jet {
  int order = 0;
  CPoly f_truncation;      // input data, degree <= order
  SPoly f_series;          // accumulated F, weighted degree <= order
  int residual_valuation;  // valuation of f - compose(F) (order+1 when clean)
  ExtendStatus status = ExtendStatus::ok;
  int failed_layer = -1;
  std::optional<CPoly> witness;
};

// Order-by-order formal extension: peel the lowest homogeneous layer of the
// running remainder, lift it on the quadric model, subtract its composition
// with the full model (E included), repeat through degree `order`.
Jet formal_jet(const CPoly& f_data, const QuadricModel& model, int order,
               const Config& cfg = default_config());

struct ChainResidual {
  double dbar;   // max_j ||f_{zbar_j} - F_s(z,rho) rho_{zbar_j}||
  double dz;     // max_j ||f_{z_j} - F_{z_j}(z,rho) - F_s(z,rho) rho_{z_j}||
  double max() const { return std::max(dbar, dz); }
};

// Chain-rule identities of the graph substitution, as coefficient residuals.
ChainResidual chain_identity_check(const CPoly& f, const SPoly& bigf, const QuadricModel& model);

}  // namespace crext

#endif
