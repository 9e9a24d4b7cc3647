#ifndef CREXT_QUADRIC_HPP
#define CREXT_QUADRIC_HPP

#include <functional>
#include <optional>
#include <string>

#include "crext/cpoly.hpp"
#include "crext/linalg.hpp"

namespace crext {

// Sesquilinear form A(z, zbar) = zbar^T A z, A = A^*.
struct HermitianForm {
  Eigen::MatrixXcd m;

  int n() const { return int(m.rows()); }
  double value(const Eigen::VectorXcd& z) const {
    return (z.conjugate().transpose() * m * z)(0).real();
  }
  void validate(double tol = 1e-12) const;
};

// Bilinear form B(z, z) = z^T B z, B = B^T (the symmetric representative).
struct SymmetricForm {
  Eigen::MatrixXcd m;

  int n() const { return int(m.rows()); }
  cplx value(const Eigen::VectorXcd& z) const { return (z.transpose() * m * z)(0); }
  void validate(double tol = 1e-12) const;
};

// The model  s = A(z,zbar) + B(z,z) + conj(B(z,z)) + E(z,zbar).
// E is a real-valued polynomial of valuation >= 3 (empty for the pure quadric).
struct QuadricModel {
  int n = 0;
  HermitianForm a;
  SymmetricForm b;
  CPoly e;

  bool pure_quadric() const { return e.empty(); }
  void validate(double tol = 1e-10) const;

  // rho(z, zbar) = Q + E
  double rho(const Eigen::VectorXcd& z) const;
  double q_value(const Eigen::VectorXcd& z) const;
  CPoly rho_poly() const;   // symbolic Q + E
  CPoly q_poly() const;     // symbolic Q

  // Pullback under z = T z': A -> T^* A T, B -> T^T B T, E -> E(Tz').
  QuadricModel transformed(const Eigen::MatrixXcd& t) const;
  // The s -> -s model (negates A, B, E); swaps the roles of the two sides.
  QuadricModel negated() const;
};

// Real quadratic form of Q on R^{2n}, coordinates (x_1..x_n, y_1..y_n).
struct RealQuadForm {
  Eigen::MatrixXd m;
  int dim() const { return int(m.rows()); }
  double value(const Eigen::VectorXd& x) const { return (x.transpose() * m * x)(0); }
};

struct NormalForm {
  Eigen::MatrixXcd transform;    // T, acting by z = T z'
  std::vector<double> lambdas;   // diag of T^T B T when A' = I (else empty)
  double residual = 0.0;         // max coefficient mismatch after transforming
  Eigen::VectorXd a_diag;        // diagonal of T^* A T (entries in {+1,-1})
};

enum class Verdict { extends_up, extends_down, both, inconclusive, q_degenerate };
const char* verdict_name(Verdict v);

struct ExtensionVerdict {
  Verdict verdict;
  Inertia a_inertia;       // (a, b, zeros) of the Hermitian form
  Inertia q_inertia;       // of the full real form
  bool q_nondegenerate;
  std::string note;
};

struct LocusReport {
  bool isolated = false;           // kernel of the full real derivative system trivial
  int kernel_dim = 0;
  std::vector<Eigen::VectorXd> kernel_basis;  // in (x, y) coordinates
  // For E != 0: polished zeros of grad(Q+E) found in the punctured box.
  std::vector<Eigen::VectorXcd> sampled_zeros;
  bool sampling_ran = false;
  double min_grad_seen = 0.0;      // smallest |grad| at non-zero candidates
};

Inertia inertia(const HermitianForm& a, const Config& cfg = default_config());
Inertia inertia(const RealQuadForm& q, const Config& cfg = default_config());

RealQuadForm real_form(const QuadricModel& model);

bool is_q_nondegenerate(const QuadricModel& model, const Config& cfg = default_config());

// Pure quadrics: exact kernel of the derivative system.  With E != 0 the
// punctured box is additionally sampled for gradient zeros (Newton-polished).
LocusReport cr_singular_locus(const QuadricModel& model, double box_half_width,
                              const Config& cfg = default_config());

// Gradient-zero sampling for models given only numerically (rho as a real
// function of (x, y)).  Central differences plus coordinate-descent polish.
std::vector<Eigen::VectorXd> numeric_gradient_zeros(
    const std::function<double(const Eigen::VectorXd&)>& rho, int real_dim,
    double box_half_width, int resolution, const Config& cfg = default_config());

// T with T^* A T = diag(+-1), the +1 block first.  Identity when A already
// has that shape.  Throws A_DEGENERATE on a zero eigenvalue.
Eigen::MatrixXcd a_diagonalizing_transform(const QuadricModel& model, Eigen::VectorXd* a_diag,
                                           const Config& cfg = default_config());

// T^* A T = diag(+-1); when A is positive definite additionally T^T B T = diag(lambda >= 0).
NormalForm normalize(const QuadricModel& model, const Config& cfg = default_config());

// 2x2 unitary block reduction of B on the first two coordinates (requires the
// first two diagonal entries of the diagonalized A to be +1).
NormalForm block_reduce_b(const QuadricModel& model, const Config& cfg = default_config());

ExtensionVerdict extension_verdict(const QuadricModel& model, const Config& cfg = default_config());

}  // namespace crext

#endif
