#include <doctest.h>

#include "crext/fixtures.hpp"
#include "crext/quadric.hpp"

using namespace crext;

namespace {

QuadricModel make_model(int n, const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  QuadricModel m;
  m.n = n;
  m.a.m = a;
  m.b.m = b;
  m.e = CPoly(n);
  return m;
}

Eigen::MatrixXcd random_invertible(Rng& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  while (true) {
    Eigen::MatrixXcd t(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t(i, j) = cplx(u(rng), u(rng));
    if (std::abs(t.determinant()) > 0.1) return t;
  }
}

Eigen::MatrixXcd random_hermitian(Rng& rng, int n) {
  Eigen::MatrixXcd t = random_invertible(rng, n);
  return (t + t.adjoint()) / 2.0;
}

Eigen::MatrixXcd random_symmetric(Rng& rng, int n) {
  Eigen::MatrixXcd t = random_invertible(rng, n);
  return (t + t.transpose()) / 2.0;
}

Eigen::VectorXcd random_z(Rng& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXcd z(n);
  for (int i = 0; i < n; ++i) z(i) = cplx(u(rng), u(rng));
  return z;
}

}  // namespace

TEST_CASE("inertia of diagonal Hermitian forms") {
  QuadricModel m = make_model(2, Eigen::Vector2cd(1, -1).asDiagonal(),
                              Eigen::MatrixXcd::Zero(2, 2));
  Inertia in = inertia(m.a);
  CHECK(in.positive == 1);
  CHECK(in.negative == 1);
  CHECK(in.zero == 0);

  QuadricModel m24 = model_sig_21();
  Inertia i24 = inertia(m24.a);
  CHECK(i24.positive == 2);
  CHECK(i24.negative == 1);

  QuadricModel mz = make_model(2, Eigen::MatrixXcd::Zero(2, 2), Eigen::MatrixXcd::Zero(2, 2));
  Inertia iz = inertia(mz.a);
  CHECK(iz.zero == 2);
}

TEST_CASE("inertia is invariant under congruence") {
  Rng rng(11);
  for (int rep = 0; rep < 100; ++rep) {
    int n = 2 + int(rep % 3);
    Eigen::MatrixXcd a = random_hermitian(rng, n);
    Eigen::MatrixXcd t = random_invertible(rng, n);
    Inertia i1 = matrix_inertia(a);
    Inertia i2 = matrix_inertia(Eigen::MatrixXcd(t.adjoint() * a * t));
    CHECK(i1.positive == i2.positive);
    CHECK(i1.negative == i2.negative);
    CHECK(i1.zero == i2.zero);
  }
}

TEST_CASE("real form matches A + 2 Re B pointwise") {
  Rng rng(12);
  for (int rep = 0; rep < 10; ++rep) {
    int n = 1 + (rep % 4);
    QuadricModel m = make_model(n, random_hermitian(rng, n), random_symmetric(rng, n));
    RealQuadForm c = real_form(m);
    for (int k = 0; k < 100; ++k) {
      Eigen::VectorXcd z = random_z(rng, n);
      Eigen::VectorXd x(2 * n);
      for (int i = 0; i < n; ++i) {
        x(i) = z(i).real();
        x(n + i) = z(i).imag();
      }
      CHECK(std::abs(c.value(x) - m.q_value(z)) < 1e-12);
    }
  }
}

TEST_CASE("real form worked examples") {
  // |z1|^2 + |z2|^2 -> identity on R^4
  QuadricModel sphere = make_model(2, Eigen::MatrixXcd::Identity(2, 2),
                                   Eigen::MatrixXcd::Zero(2, 2));
  CHECK((real_form(sphere).m - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);

  // n=1 completely parabolic: |z|^2 + Re z^2 -> diag(2, 0) in (x, y)
  QuadricModel parab = model_bishop_n1(0.5);
  Eigen::MatrixXd expect(2, 2);
  expect << 2, 0, 0, 0;
  CHECK((real_form(parab).m - expect).cwiseAbs().maxCoeff() < 1e-14);

  // |z1|^2 - |z2|^2 -> diag(1, -1, 1, -1) in (x1, x2, y1, y2)
  QuadricModel hyp = model_hyperbolic_11();
  Eigen::VectorXd d(4);
  d << 1, -1, 1, -1;
  CHECK((real_form(hyp).m - Eigen::MatrixXd(d.asDiagonal())).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("q-nondegeneracy") {
  CHECK(is_q_nondegenerate(model_hyperbolic_11()));
  CHECK_FALSE(is_q_nondegenerate(model_bishop_n1(0.5)));
  QuadricModel ball = make_model(2, Eigen::MatrixXcd::Identity(2, 2),
                                 Eigen::MatrixXcd::Zero(2, 2));
  CHECK(is_q_nondegenerate(ball));
}

TEST_CASE("normalize: identity cases and Takagi reduction") {
  QuadricModel ball = make_model(2, Eigen::MatrixXcd::Identity(2, 2),
                                 Eigen::MatrixXcd::Zero(2, 2));
  NormalForm nf = normalize(ball);
  REQUIRE(nf.lambdas.size() == 2);
  CHECK(std::abs(nf.lambdas[0]) < 1e-12);
  CHECK(std::abs(nf.lambdas[1]) < 1e-12);
  CHECK(nf.residual < 1e-12);

  Eigen::MatrixXcd b(2, 2);
  b << 0, 0.5, 0.5, 0;
  NormalForm nf2 = normalize(make_model(2, Eigen::MatrixXcd::Identity(2, 2), b));
  CHECK(nf2.lambdas[0] == doctest::Approx(0.5));
  CHECK(nf2.lambdas[1] == doctest::Approx(0.5));
  CHECK(nf2.residual < 1e-10);

  NormalForm nf3 = normalize(model_hyperbolic_11());
  CHECK((nf3.transform - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(nf3.lambdas.empty());
}

TEST_CASE("normalize residual on random positive definite models") {
  Rng rng(13);
  for (int rep = 0; rep < 40; ++rep) {
    int n = 2 + (rep % 4);
    Eigen::MatrixXcd g = random_invertible(rng, n);
    Eigen::MatrixXcd a = g.adjoint() * g + 0.1 * Eigen::MatrixXcd::Identity(n, n);
    QuadricModel m = make_model(n, a, random_symmetric(rng, n));
    NormalForm nf = normalize(m);
    CHECK(nf.residual < 1e-10);
    for (double l : nf.lambdas) CHECK(l >= -1e-12);
    // transformed model evaluates identically through the change of variables
    QuadricModel mt = m.transformed(nf.transform);
    Eigen::VectorXcd w = random_z(rng, n);
    CHECK(std::abs(mt.q_value(w) - m.q_value(nf.transform * w)) < 1e-9);
  }
}

TEST_CASE("normalize rejects degenerate A") {
  QuadricModel m = make_model(2, Eigen::MatrixXcd::Zero(2, 2), Eigen::MatrixXcd::Zero(2, 2));
  CHECK_THROWS_AS(normalize(m), Error);
}

TEST_CASE("block reduction of B") {
  // already diagonal: identity transform, lambda = (3, 2)
  Eigen::MatrixXcd b = Eigen::Vector2cd(3, 2).asDiagonal();
  QuadricModel m = make_model(2, Eigen::MatrixXcd::Identity(2, 2), b);
  NormalForm nf = block_reduce_b(m);
  CHECK((nf.transform - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(nf.lambdas[0] == doctest::Approx(3.0));
  CHECK(nf.lambdas[1] == doctest::Approx(2.0));

  Eigen::MatrixXcd b2(2, 2);
  b2 << 0, 1, 1, 0;
  NormalForm nf2 = block_reduce_b(make_model(2, Eigen::MatrixXcd::Identity(2, 2), b2));
  CHECK(nf2.lambdas[0] == doctest::Approx(1.0));
  CHECK(nf2.lambdas[1] == doctest::Approx(1.0));
  CHECK(nf2.residual < 1e-10);

  NormalForm nf3 = block_reduce_b(make_model(2, Eigen::MatrixXcd::Identity(2, 2),
                                             Eigen::MatrixXcd::Zero(2, 2)));
  CHECK(std::abs(nf3.lambdas[0]) < 1e-12);
  CHECK(std::abs(nf3.lambdas[1]) < 1e-12);

  CHECK_THROWS_AS(block_reduce_b(model_hyperbolic_11()), Error);  // a = 1
}

TEST_CASE("block reduction leaves the A block and kills B_12 on random models") {
  Rng rng(14);
  for (int rep = 0; rep < 30; ++rep) {
    int n = 2 + (rep % 3);
    Eigen::MatrixXcd a = random_hermitian(rng, n);
    Inertia ia = matrix_inertia(a);
    if (ia.positive < 2 || ia.zero > 0) continue;
    QuadricModel m = make_model(n, a, random_symmetric(rng, n));
    NormalForm nf = block_reduce_b(m);
    Eigen::MatrixXcd at = nf.transform.adjoint() * m.a.m * nf.transform;
    Eigen::MatrixXcd bt = nf.transform.transpose() * m.b.m * nf.transform;
    CHECK(std::abs(at(0, 0) - cplx(1.0)) < 1e-9);
    CHECK(std::abs(at(1, 1) - cplx(1.0)) < 1e-9);
    CHECK(std::abs(at(0, 1)) < 1e-9);
    CHECK(std::abs(bt(0, 1)) < 1e-9);
    CHECK(bt(0, 0).real() >= -1e-10);
    CHECK(bt(1, 1).real() >= -1e-10);
    CHECK(std::abs(bt(0, 0).imag()) < 1e-9);
    CHECK(std::abs(bt(1, 1).imag()) < 1e-9);
  }
}

TEST_CASE("extension verdicts") {
  ExtensionVerdict v24 = extension_verdict(model_sig_21());
  CHECK(v24.verdict == Verdict::extends_up);
  CHECK(v24.a_inertia.positive == 2);
  CHECK(v24.a_inertia.negative == 1);

  ExtensionVerdict v23 = extension_verdict(model_hyperbolic_11());
  CHECK(v23.verdict == Verdict::inconclusive);
  CHECK_FALSE(v23.note.empty());

  Eigen::VectorXcd d(4);
  d << 1, 1, -1, -1;
  QuadricModel both = make_model(4, Eigen::MatrixXcd(d.asDiagonal()),
                                 Eigen::MatrixXcd::Zero(4, 4));
  CHECK(extension_verdict(both).verdict == Verdict::both);

  CHECK(extension_verdict(model_parabolic_n2()).verdict == Verdict::q_degenerate);
}

TEST_CASE("flipping s swaps the verdict sides") {
  Rng rng(15);
  for (int rep = 0; rep < 40; ++rep) {
    int n = 2 + (rep % 3);
    QuadricModel m = make_model(n, random_hermitian(rng, n), random_symmetric(rng, n));
    ExtensionVerdict v = extension_verdict(m);
    ExtensionVerdict vn = extension_verdict(m.negated());
    auto flip = [](Verdict w) {
      if (w == Verdict::extends_up) return Verdict::extends_down;
      if (w == Verdict::extends_down) return Verdict::extends_up;
      return w;
    };
    CHECK(vn.verdict == flip(v.verdict));
  }
}

TEST_CASE("CR-singular locus") {
  LocusReport iso = cr_singular_locus(model_hyperbolic_11(), 1.0);
  CHECK(iso.isolated);
  CHECK(iso.kernel_dim == 0);

  LocusReport parab = cr_singular_locus(model_parabolic_n2(), 1.0);
  CHECK_FALSE(parab.isolated);
  CHECK(parab.kernel_dim == 2);
  for (const auto& v : parab.kernel_basis)
    CHECK(v.head(2).cwiseAbs().maxCoeff() < 1e-9);  // kernel lies in {x = 0}

  // s = ||z||^4 for n=1: degenerate quadric part, isolated singularity anyway;
  // the punctured-box sampling must find no gradient zeros.
  QuadricModel quartic = make_model(1, Eigen::MatrixXcd::Zero(1, 1),
                                    Eigen::MatrixXcd::Zero(1, 1));
  quartic.e = CPoly::monomial(1, {2}, {2}, 1.0);
  LocusReport q = cr_singular_locus(quartic, 1.0);
  CHECK(q.sampling_ran);
  CHECK(q.sampled_zeros.empty());
}

TEST_CASE("numeric gradient zeros find the oscillating model circles") {
  auto rho_xy = [](const Eigen::VectorXd& x) {
    Eigen::VectorXcd z(1);
    z(0) = cplx(x(0), x(1));
    return oscillating_model_rho(z);
  };
  auto zeros = numeric_gradient_zeros(rho_xy, 2, 1.3, 161);
  double r0 = 1.0 / std::sqrt(kPi / 4.0);
  bool found = false;
  for (const auto& x : zeros)
    if (std::abs(x.norm() - r0) < 5e-3) found = true;
  CHECK(found);
}

TEST_CASE("model validation catches bad E") {
  QuadricModel m = model_hyperbolic_11();
  m.e = CPoly::monomial(2, {1, 0}, {0, 0}, 1.0);  // degree 1
  CHECK_THROWS_AS(m.validate(), Error);
  m.e = CPoly::monomial(2, {2, 1}, {0, 0}, 1.0);  // not real-valued
  CHECK_THROWS_AS(m.validate(), Error);
  m.e = CPoly::monomial(2, {2, 1}, {0, 0}, 1.0) + CPoly::monomial(2, {0, 0}, {2, 1}, 1.0);
  m.validate();  // real-valued degree-3 pair is fine
}
