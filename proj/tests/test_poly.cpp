#include <doctest.h>

#include "crext/spoly.hpp"

using namespace crext;

namespace {

CPoly random_cpoly(Rng& rng, int n, int maxdeg, int terms) {
  std::uniform_int_distribution<int> deg(0, maxdeg);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  CPoly p(n);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> ze(n, 0), we(n, 0);
    for (int i = 0; i < n; ++i) {
      ze[i] = deg(rng) / 2;
      we[i] = deg(rng) / 2;
    }
    p.add_term({ze, we}, cplx(coef(rng), coef(rng)));
  }
  return p;
}

Eigen::VectorXcd random_z(Rng& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXcd z(n);
  for (int i = 0; i < n; ++i) z(i) = cplx(u(rng), u(rng));
  return z;
}

}  // namespace

TEST_CASE("product evaluation matches pointwise product") {
  Rng rng(7);
  for (int rep = 0; rep < 25; ++rep) {
    CPoly f = random_cpoly(rng, 2, 3, 5), g = random_cpoly(rng, 2, 3, 5);
    CPoly fg = f * g;
    Eigen::VectorXcd z = random_z(rng, 2);
    CHECK(std::abs(fg.eval(z) - f.eval(z) * g.eval(z)) < 1e-10);
  }
}

TEST_CASE("conjugate evaluates to the complex conjugate") {
  Rng rng(8);
  CPoly f = random_cpoly(rng, 3, 3, 8);
  Eigen::VectorXcd z = random_z(rng, 3);
  CHECK(std::abs(f.conjugate().eval(z) - std::conj(f.eval(z))) < 1e-12);
}

TEST_CASE("homogeneous parts sum back to the polynomial") {
  Rng rng(9);
  CPoly f = random_cpoly(rng, 2, 4, 10);
  CPoly sum(2);
  for (int d = 0; d <= f.degree(); ++d) sum += f.homogeneous_part(d);
  CHECK((sum - f).is_zero(1e-15));
}

TEST_CASE("wirtinger derivative drops degree and matches finite differences") {
  // d/dz1 of z1^2 zbar2 = 2 z1 zbar2
  CPoly f = CPoly::monomial(2, {2, 0}, {0, 1}, 1.0);
  CPoly d = f.wirtinger(0, false);
  CHECK(d.degree() == 2);
  CHECK(std::abs(d.coeff({{1, 0}, {0, 1}}) - cplx(2.0)) < 1e-15);
}

TEST_CASE("spoly weighted degree and eval") {
  SPoly f = SPoly::monomial(2, {1, 0}, 2, 3.0);  // 3 z1 s^2
  CHECK(f.weighted_degree() == 5);
  Eigen::VectorXcd z(2);
  z << cplx(2.0, 0.0), cplx(0.0, 0.0);
  CHECK(std::abs(f.eval(z, 0.5) - cplx(1.5)) < 1e-15);
  CHECK(f.d_s().weighted_degree() == 3);
  CHECK(std::abs(f.d_s().eval(z, 0.5) - cplx(6.0)) < 1e-15);
}

TEST_CASE("cleaned drops relative noise") {
  CPoly f = CPoly::monomial(1, {1}, {0}, 1.0) + CPoly::monomial(1, {0}, {1}, 1e-15);
  CHECK(f.cleaned(1e-12).term_count() == 1);
}
