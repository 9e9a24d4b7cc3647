#ifndef CREXT_CRFIELDS_HPP
#define CREXT_CRFIELDS_HPP

#include <optional>

#include "crext/quadric.hpp"

namespace crext {

// The tangential antiholomorphic field
//   X_{jk} = rho_{zbar_j} d/dzbar_k - rho_{zbar_k} d/dzbar_j,  j < k.
struct CRField {
  int j, k;
  CPoly coeff_k;  // rho_{zbar_j}, multiplies d/dzbar_k
  CPoly coeff_j;  // rho_{zbar_k}, multiplies d/dzbar_j (with a minus sign)

  CPoly apply(const CPoly& f) const {
    return coeff_k * f.wirtinger(k, true) - coeff_j * f.wirtinger(j, true);
  }
};

// All n(n-1)/2 fields for j < k.  Requires n >= 2.
std::vector<CRField> cr_basis(const QuadricModel& model);

struct CrCheck {
  bool is_cr;
  std::optional<CPoly> witness;  // first nonzero X_{jk} f
  int witness_j = -1, witness_k = -1;
};

// f is CR on M (parametrized by z) iff every X_{jk} f vanishes identically
// as a polynomial in (z, zbar).
CrCheck is_cr(const CPoly& f, const QuadricModel& model, const Config& cfg = default_config());

}  // namespace crext

#endif
