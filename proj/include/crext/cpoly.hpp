#ifndef CREXT_CPOLY_HPP
#define CREXT_CPOLY_HPP

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "crext/common.hpp"

namespace crext {

// Exponent pair of a monomial z^ze * zbar^we in n variables.
struct CMono {
  std::vector<int> ze;  // z exponents
  std::vector<int> we;  // zbar exponents

  int degree() const {
    int d = 0;
    for (int e : ze) d += e;
    for (int e : we) d += e;
    return d;
  }
  bool operator<(const CMono& o) const {
    if (ze != o.ze) return ze < o.ze;
    return we < o.we;
  }
  bool operator==(const CMono& o) const { return ze == o.ze && we == o.we; }
};

// Sparse polynomial in (z, zbar) with complex coefficients.  Zero
// coefficients are never stored; the term map is ordered, so iteration
// (and everything derived from it) is deterministic.
class CPoly {
 public:
  CPoly() : n_(0) {}
  explicit CPoly(int n) : n_(n) {}

  static CPoly zero(int n) { return CPoly(n); }
  static CPoly constant(int n, cplx c);
  static CPoly variable(int n, int j);      // z_j
  static CPoly variable_bar(int n, int j);  // zbar_j
  static CPoly monomial(int n, const std::vector<int>& ze, const std::vector<int>& we, cplx c);

  int nvars() const { return n_; }
  bool empty() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<CMono, cplx>& terms() const { return terms_; }

  void add_term(const CMono& m, cplx c, double drop_tol = 0.0);

  cplx coeff(const CMono& m) const;

  int degree() const;     // max total degree, -1 for the zero polynomial
  int valuation() const;  // min total degree, large sentinel for zero

  CPoly& operator+=(const CPoly& o);
  CPoly& operator-=(const CPoly& o);
  CPoly operator+(const CPoly& o) const;
  CPoly operator-(const CPoly& o) const;
  CPoly operator-() const;
  CPoly operator*(const CPoly& o) const;
  CPoly operator*(cplx c) const;

  CPoly conjugate() const;  // swaps z/zbar exponents, conjugates coefficients
  CPoly pow(int k) const;

  CPoly homogeneous_part(int d) const;
  CPoly truncate_degree(int maxdeg) const;

  // Drops terms with |coeff| <= tol * max|coeff| (absolute tol if scale is 0).
  CPoly cleaned(double rel_tol) const;

  double max_abs_coeff() const;
  bool is_zero(double abs_tol = 0.0) const;

  // True when the polynomial is real-valued on C^n: coeff(a,b) == conj(coeff(b,a)).
  bool is_real_valued(double tol) const;

  cplx eval(const Eigen::VectorXcd& z) const;

  // Formal Wirtinger derivative d/dz_j (bar=false) or d/dzbar_j (bar=true).
  CPoly wirtinger(int j, bool bar) const;

 private:
  int n_;
  std::map<CMono, cplx> terms_;
};

inline CPoly operator*(cplx c, const CPoly& p) { return p * c; }

}  // namespace crext

#endif
