#ifndef CREXT_SPOLY_HPP
#define CREXT_SPOLY_HPP

#include <map>
#include <vector>

#include "crext/cpoly.hpp"

namespace crext {

// Monomial z^ze * s^k.  The weighted degree is |ze| + 2k, matching the
// scaling s ~ ||z||^2 of the graph variable.
struct SMono {
  std::vector<int> ze;
  int k = 0;

  int weighted_degree() const {
    int d = 2 * k;
    for (int e : ze) d += e;
    return d;
  }
  bool operator<(const SMono& o) const {
    if (ze != o.ze) return ze < o.ze;
    return k < o.k;
  }
  bool operator==(const SMono& o) const { return ze == o.ze && k == o.k; }
};

// Sparse polynomial in (z, s), s a real graph variable.
class SPoly {
 public:
  SPoly() : n_(0) {}
  explicit SPoly(int n) : n_(n) {}

  static SPoly zero(int n) { return SPoly(n); }
  static SPoly constant(int n, cplx c);
  static SPoly variable(int n, int j);  // z_j
  static SPoly s_var(int n);            // s
  static SPoly monomial(int n, const std::vector<int>& ze, int k, cplx c);

  int nvars() const { return n_; }
  bool empty() const { return terms_.empty(); }
  const std::map<SMono, cplx>& terms() const { return terms_; }

  void add_term(const SMono& m, cplx c);
  cplx coeff(const SMono& m) const;

  int weighted_degree() const;  // -1 for zero

  SPoly& operator+=(const SPoly& o);
  SPoly& operator-=(const SPoly& o);
  SPoly operator+(const SPoly& o) const;
  SPoly operator-(const SPoly& o) const;
  SPoly operator*(cplx c) const;

  SPoly weighted_part(int d) const;
  SPoly truncate_weighted(int maxdeg) const;
  SPoly cleaned(double rel_tol) const;

  double max_abs_coeff() const;
  bool is_zero(double abs_tol = 0.0) const;

  SPoly d_s() const;           // formal d/ds
  SPoly d_z(int j) const;      // formal d/dz_j

  cplx eval(const Eigen::VectorXcd& z, cplx s) const;

 private:
  int n_;
  std::map<SMono, cplx> terms_;
};

}  // namespace crext

#endif
