#include "crext/spoly.hpp"

#include <algorithm>

namespace crext {

SPoly SPoly::constant(int n, cplx c) {
  SPoly p(n);
  p.add_term({std::vector<int>(n, 0), 0}, c);
  return p;
}

SPoly SPoly::variable(int n, int j) {
  std::vector<int> ze(n, 0);
  ze[j] = 1;
  return monomial(n, ze, 0, 1.0);
}

SPoly SPoly::s_var(int n) { return monomial(n, std::vector<int>(n, 0), 1, 1.0); }

SPoly SPoly::monomial(int n, const std::vector<int>& ze, int k, cplx c) {
  SPoly p(n);
  p.add_term({ze, k}, c);
  return p;
}

void SPoly::add_term(const SMono& m, cplx c) {
  if (c == cplx(0.0)) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second == cplx(0.0)) terms_.erase(it);
}

cplx SPoly::coeff(const SMono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? cplx(0.0) : it->second;
}

int SPoly::weighted_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.weighted_degree());
  return d;
}

SPoly& SPoly::operator+=(const SPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

SPoly& SPoly::operator-=(const SPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

SPoly SPoly::operator+(const SPoly& o) const {
  SPoly r = *this;
  r += o;
  return r;
}

SPoly SPoly::operator-(const SPoly& o) const {
  SPoly r = *this;
  r -= o;
  return r;
}

SPoly SPoly::operator*(cplx c) const {
  SPoly r(n_);
  if (c == cplx(0.0)) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
  return r;
}

SPoly SPoly::weighted_part(int d) const {
  SPoly r(n_);
  for (const auto& [m, c] : terms_)
    if (m.weighted_degree() == d) r.terms_.emplace(m, c);
  return r;
}

SPoly SPoly::truncate_weighted(int maxdeg) const {
  SPoly r(n_);
  for (const auto& [m, c] : terms_)
    if (m.weighted_degree() <= maxdeg) r.terms_.emplace(m, c);
  return r;
}

SPoly SPoly::cleaned(double rel_tol) const {
  double scale = max_abs_coeff();
  double tol = rel_tol * (scale > 0 ? scale : 1.0);
  SPoly r(n_);
  for (const auto& [m, c] : terms_)
    if (std::abs(c) > tol) r.terms_.emplace(m, c);
  return r;
}

double SPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [mo, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

bool SPoly::is_zero(double abs_tol) const { return max_abs_coeff() <= abs_tol; }

SPoly SPoly::d_s() const {
  SPoly r(n_);
  for (const auto& [m, c] : terms_) {
    if (m.k == 0) continue;
    SMono d = m;
    d.k -= 1;
    r.add_term(d, c * double(m.k));
  }
  return r;
}

SPoly SPoly::d_z(int j) const {
  SPoly r(n_);
  for (const auto& [m, c] : terms_) {
    if (m.ze[j] == 0) continue;
    SMono d = m;
    d.ze[j] -= 1;
    r.add_term(d, c * double(m.ze[j]));
  }
  return r;
}

cplx SPoly::eval(const Eigen::VectorXcd& z, cplx s) const {
  cplx acc = 0.0;
  for (const auto& [m, c] : terms_) {
    cplx t = c;
    for (int i = 0; i < n_; ++i)
      for (int e = 0; e < m.ze[i]; ++e) t *= z(i);
    for (int e = 0; e < m.k; ++e) t *= s;
    acc += t;
  }
  return acc;
}

}  // namespace crext
