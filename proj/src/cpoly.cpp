#include "crext/cpoly.hpp"

#include <algorithm>
#include <limits>

namespace crext {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::parse_error: return "PARSE_ERROR";
    case Errc::schema_error: return "SCHEMA_ERROR";
    case Errc::a_degenerate: return "A_DEGENERATE";
    case Errc::insufficient_positive: return "INSUFFICIENT_POSITIVE";
    case Errc::hypothesis_fail: return "HYPOTHESIS_FAIL";
    case Errc::resolution_too_coarse: return "RESOLUTION_TOO_COARSE";
    case Errc::grid_infeasible: return "GRID_INFEASIBLE";
    case Errc::sampling_inconclusive: return "SAMPLING_INCONCLUSIVE";
    case Errc::not_cr: return "NOT_CR";
    case Errc::order_overflow: return "ORDER_OVERFLOW";
    case Errc::empty_disc: return "EMPTY_DISC";
    case Errc::curve_not_closed: return "CURVE_NOT_CLOSED";
    case Errc::singularity_hit: return "SINGULARITY_HIT";
    case Errc::containment_fail: return "CONTAINMENT_FAIL";
    case Errc::transversality_fail: return "TRANSVERSALITY_FAIL";
    case Errc::empty_y_t: return "EMPTY_Y_T";
    case Errc::branch_error: return "BRANCH_ERROR";
    case Errc::node_insufficient: return "NODE_INSUFFICIENT";
    case Errc::verdict_forbids: return "VERDICT_FORBIDS";
    case Errc::continuation_stuck: return "CONTINUATION_STUCK";
    case Errc::data_domain: return "DATA_DOMAIN";
    case Errc::internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

CPoly CPoly::constant(int n, cplx c) {
  CPoly p(n);
  p.add_term({std::vector<int>(n, 0), std::vector<int>(n, 0)}, c);
  return p;
}

CPoly CPoly::variable(int n, int j) {
  std::vector<int> ze(n, 0), we(n, 0);
  ze[j] = 1;
  return monomial(n, ze, we, 1.0);
}

CPoly CPoly::variable_bar(int n, int j) {
  std::vector<int> ze(n, 0), we(n, 0);
  we[j] = 1;
  return monomial(n, ze, we, 1.0);
}

CPoly CPoly::monomial(int n, const std::vector<int>& ze, const std::vector<int>& we, cplx c) {
  CPoly p(n);
  p.add_term({ze, we}, c);
  return p;
}

void CPoly::add_term(const CMono& m, cplx c, double drop_tol) {
  if (c == cplx(0.0)) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (std::abs(it->second) <= drop_tol) terms_.erase(it);
  else if (it->second == cplx(0.0)) terms_.erase(it);
}

cplx CPoly::coeff(const CMono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? cplx(0.0) : it->second;
}

int CPoly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

int CPoly::valuation() const {
  int v = std::numeric_limits<int>::max();
  for (const auto& [m, c] : terms_) v = std::min(v, m.degree());
  return v;
}

CPoly& CPoly::operator+=(const CPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

CPoly& CPoly::operator-=(const CPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

CPoly CPoly::operator+(const CPoly& o) const {
  CPoly r = *this;
  r += o;
  return r;
}

CPoly CPoly::operator-(const CPoly& o) const {
  CPoly r = *this;
  r -= o;
  return r;
}

CPoly CPoly::operator-() const {
  CPoly r(n_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

CPoly CPoly::operator*(const CPoly& o) const {
  CPoly r(n_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      CMono m = ma;
      for (int i = 0; i < n_; ++i) {
        m.ze[i] += mb.ze[i];
        m.we[i] += mb.we[i];
      }
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

CPoly CPoly::operator*(cplx c) const {
  CPoly r(n_);
  if (c == cplx(0.0)) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
  return r;
}

CPoly CPoly::conjugate() const {
  CPoly r(n_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(CMono{m.we, m.ze}, std::conj(c));
  return r;
}

CPoly CPoly::pow(int k) const {
  CPoly r = CPoly::constant(n_, 1.0);
  CPoly base = *this;
  while (k > 0) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

CPoly CPoly::homogeneous_part(int d) const {
  CPoly r(n_);
  for (const auto& [m, c] : terms_)
    if (m.degree() == d) r.terms_.emplace(m, c);
  return r;
}

CPoly CPoly::truncate_degree(int maxdeg) const {
  CPoly r(n_);
  for (const auto& [m, c] : terms_)
    if (m.degree() <= maxdeg) r.terms_.emplace(m, c);
  return r;
}

CPoly CPoly::cleaned(double rel_tol) const {
  double scale = max_abs_coeff();
  double tol = rel_tol * (scale > 0 ? scale : 1.0);
  CPoly r(n_);
  for (const auto& [m, c] : terms_)
    if (std::abs(c) > tol) r.terms_.emplace(m, c);
  return r;
}

double CPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [mo, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

bool CPoly::is_zero(double abs_tol) const { return max_abs_coeff() <= abs_tol; }

bool CPoly::is_real_valued(double tol) const {
  double scale = std::max(max_abs_coeff(), 1.0);
  for (const auto& [m, c] : terms_) {
    cplx other = coeff(CMono{m.we, m.ze});
    if (std::abs(c - std::conj(other)) > tol * scale) return false;
  }
  return true;
}

cplx CPoly::eval(const Eigen::VectorXcd& z) const {
  cplx acc = 0.0;
  for (const auto& [m, c] : terms_) {
    cplx t = c;
    for (int i = 0; i < n_; ++i) {
      for (int e = 0; e < m.ze[i]; ++e) t *= z(i);
      for (int e = 0; e < m.we[i]; ++e) t *= std::conj(z(i));
    }
    acc += t;
  }
  return acc;
}

CPoly CPoly::wirtinger(int j, bool bar) const {
  CPoly r(n_);
  for (const auto& [m, c] : terms_) {
    const std::vector<int>& ex = bar ? m.we : m.ze;
    if (ex[j] == 0) continue;
    CMono d = m;
    (bar ? d.we : d.ze)[j] -= 1;
    r.add_term(d, c * double(ex[j]));
  }
  return r;
}

}  // namespace crext
