#ifndef CREXT_COMMON_HPP
#define CREXT_COMMON_HPP

#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace crext {

using cplx = std::complex<double>;

constexpr double kPi = 3.141592653589793238462643383279502884;

enum class Errc {
  parse_error,
  schema_error,
  a_degenerate,
  insufficient_positive,
  hypothesis_fail,
  resolution_too_coarse,
  grid_infeasible,
  sampling_inconclusive,
  not_cr,
  order_overflow,
  empty_disc,
  curve_not_closed,
  singularity_hit,
  containment_fail,
  transversality_fail,
  empty_y_t,
  branch_error,
  node_insufficient,
  verdict_forbids,
  continuation_stuck,
  data_domain,
  internal,
};

const char* errc_name(Errc c);

// Domain error with a machine-readable code; message carries specifics
// (field paths for schema errors, offending values for numeric ones).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Tolerances and knobs shared across modules.  All operations take a
// const Config& (defaulted), so callers can tighten or relax per run.
struct Config {
  double zero_tol_factor = 1e-9;   // eigenvalue rank decisions, x spectral norm
  double boundary_tol = 1e-8;      // |s - rho| on disc boundary nodes
  double est_tol = 1e-6;           // quadrature node-doubling tolerance
  double coeff_tol = 1e-12;        // relative tolerance for polynomial coefficient zero tests
  double ls_residual_tol = 1e-9;   // relative consistency residual of the extension solve
  double root_tol = 1e-12;         // boundary tracing root-finder tolerance
  double grad_tol = 1e-6;          // transversality certificate
  double w_factor = 0.2;           // CR-regular tube thickness factor
  int boundary_nodes = 256;        // K, nodes per disc contour
  int max_retries = 16;            // transversality jitter attempts
  int shrink_steps = 32;           // discs per shrink family
  std::uint64_t seed = 0x5eed;     // deterministic jitter seed
};

inline const Config& default_config() {
  static const Config cfg{};
  return cfg;
}

// Deterministic RNG for jitters and randomized tests.
using Rng = std::mt19937_64;

}  // namespace crext

#endif
