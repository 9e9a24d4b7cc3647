// Acceptance suite: one section per criterion, each printing a PASS/FAIL
// line with the measured numbers.  Exit code = number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>

#include "crext/extend.hpp"
#include "crext/fixtures.hpp"
#include "crext/formal.hpp"
#include "crext/model_io.hpp"
#include "crext/topology.hpp"

using namespace crext;

namespace {

int g_failures = 0;

// time_budget <= 0 means the criterion carries no runtime requirement.
double run_criterion(int index, const std::string& label,
                     const std::function<bool(std::string&)>& body, double time_budget = 0.0) {
  auto t0 = std::chrono::steady_clock::now();
  std::string details;
  bool ok = false;
  try {
    ok = body(details);
  } catch (const std::exception& e) {
    details = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (ok && time_budget > 0 && secs > time_budget) {
    ok = false;
    details += " [over the " + std::to_string(time_budget) + "s budget]";
  }
  std::printf("[%s] criterion %2d: %s (%s; %.2fs)\n", ok ? "PASS" : "FAIL", index, label.c_str(),
              details.c_str(), secs);
  std::fflush(stdout);
  if (!ok) ++g_failures;
  return secs;
}

QuadricModel random_good_quadric(Rng& rng, int n) {
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  while (true) {
    QuadricModel m;
    m.n = n;
    m.a.m = Eigen::MatrixXcd::Identity(n, n);
    for (int i = 2; i < n; ++i) m.a.m(i, i) = (u(rng) > 0) ? 1.0 : -1.0;
    Eigen::MatrixXcd b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b(i, j) = cplx(u(rng), u(rng));
    m.b.m = (b + b.transpose()) / 2.0;
    m.e = CPoly(n);
    if (inertia(real_form(m)).zero == 0 && inertia(m.a).positive >= 2) return m;
  }
}

void monos(int n, int d, std::vector<int>& cur, int pos, std::vector<std::vector<int>>& out) {
  if (pos == n - 1) {
    cur[pos] = d;
    out.push_back(cur);
    return;
  }
  for (int e = d; e >= 0; --e) {
    cur[pos] = e;
    monos(n, d - e, cur, pos + 1, out);
  }
}

SPoly random_weighted_homogeneous(Rng& rng, int n, int d) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  SPoly f(n);
  for (int k = 0; 2 * k <= d; ++k) {
    std::vector<std::vector<int>> zm;
    std::vector<int> cur(n, 0);
    monos(n, d - 2 * k, cur, 0, zm);
    for (const auto& ze : zm)
      if (coef(rng) > -0.2) f.add_term({ze, k}, cplx(coef(rng), coef(rng)));
  }
  if (f.empty()) {
    std::vector<int> ze(n, 0);
    ze[0] = d % 2;
    f.add_term({ze, d / 2}, 1.0);
  }
  return f;
}

CPoly random_non_cr(Rng& rng, const QuadricModel& m, int d) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<int> pick(0, m.n - 1);
  while (true) {
    SPoly f0 = random_weighted_homogeneous(rng, m.n, d);
    CPoly f = compose(f0, m);
    // inject zbar-monomials of the same degree
    for (int t = 0; t < 2; ++t) {
      std::vector<int> ze(m.n, 0), we(m.n, 0);
      int wbar = 1 + (t % d == 0 ? 0 : 0);
      we[pick(rng)] = wbar;
      int rest = d - wbar;
      ze[pick(rng)] += rest;
      f.add_term({ze, we}, cplx(coef(rng), coef(rng)) * 0.5);
    }
    if (!is_cr(f, m).is_cr) return f;
  }
}

struct RoundTrip {
  QuadricModel model;
  SPoly f0;
  CPoly f;
};

std::vector<RoundTrip> make_round_trips(int count, bool with_e) {
  Rng rng(with_e ? 101 : 100);
  std::vector<RoundTrip> out;
  for (int i = 0; i < count; ++i) {
    int n = 2 + (i % 2);
    int d = 1 + (i % 6);
    RoundTrip rt;
    rt.model = random_good_quadric(rng, n);
    if (with_e) {
      // real-valued cubic pair, small coefficients
      std::uniform_real_distribution<double> u(-0.2, 0.2);
      cplx c(u(rng), u(rng));
      std::vector<int> ze(n, 0), we(n, 0);
      ze[0] = 2;
      we[1 % n] = 1;
      rt.model.e = CPoly::monomial(n, ze, we, c) + CPoly::monomial(n, we, ze, std::conj(c));
    }
    rt.f0 = random_weighted_homogeneous(rng, n, d);
    QuadricModel quad = rt.model;
    quad.e = CPoly(n);
    rt.f = compose(rt.f0, quad);
    out.push_back(std::move(rt));
  }
  return out;
}

}  // namespace

int main() {
  Config cfg;

  // 1. Verdict fixtures.
  run_criterion(1, "verdict fixtures 2.3 / 2.4 / 2.2-parabolic", [&](std::string& d) {
    ExtensionVerdict v23 = extension_verdict(model_hyperbolic_11(), cfg);
    ExtensionVerdict v24 = extension_verdict(model_sig_21(), cfg);
    ExtensionVerdict v22 = extension_verdict(model_parabolic_n2(), cfg);
    LocusReport loc = cr_singular_locus(model_parabolic_n2(), 1.0, cfg);
    bool plane = loc.kernel_dim == 2;
    for (const auto& b : loc.kernel_basis) plane = plane && b.head(2).cwiseAbs().maxCoeff() < 1e-9;
    bool ok = v23.a_inertia.positive == 1 && v23.a_inertia.negative == 1 &&
              v23.q_nondegenerate && v23.verdict == Verdict::inconclusive &&
              v24.a_inertia.positive == 2 && v24.a_inertia.negative == 1 &&
              v24.q_nondegenerate && v24.verdict == Verdict::extends_up &&
              v22.verdict == Verdict::q_degenerate && plane;
    d = std::string("2.3=") + verdict_name(v23.verdict) + " 2.4=" + verdict_name(v24.verdict) +
        " 2.2=" + verdict_name(v22.verdict) + " locus-plane-dim=" + std::to_string(loc.kernel_dim);
    return ok;
  }, 1.0);

  // 2. Formal round trips.
  run_criterion(2, "formal round-trip, 100 pure + jets with E != 0", [&](std::string& d) {
    auto pure = make_round_trips(100, false);
    double worst = 0.0;
    for (const auto& rt : pure) {
      ExtendResult r = extend_homogeneous(rt.f, rt.model, cfg);
      if (r.status != ExtendStatus::ok) return false;
      worst = std::max(worst, (r.extension - rt.f0).max_abs_coeff());
    }
    auto perturbed = make_round_trips(40, true);
    double worst_jet = 0.0;
    for (const auto& rt : perturbed) {
      if (rt.f0.weighted_degree() > 5) continue;
      CPoly f_full = compose(rt.f0, rt.model);
      Jet jet = formal_jet(f_full, rt.model, 5, cfg);
      if (jet.status != ExtendStatus::ok) return false;
      worst_jet = std::max(worst_jet,
                           (jet.f_series.truncate_weighted(5) - rt.f0.truncate_weighted(5))
                               .max_abs_coeff());
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "max coeff err: pure %.2e, jet %.2e", worst, worst_jet);
    d = buf;
    return worst < 1e-9 && worst_jet < 1e-9;
  }, 30.0);

  // 3. CR-check consistency.
  run_criterion(3, "NOT_CR iff the symbolic CR check fails (50 + 50)", [&](std::string& d) {
    Rng rng(102);
    int disagreements = 0;
    for (int i = 0; i < 50; ++i) {
      QuadricModel m = random_good_quadric(rng, 2 + (i % 2));
      int deg = 1 + (i % 5);
      SPoly f0 = random_weighted_homogeneous(rng, m.n, deg);
      CPoly f = compose(f0, m);
      bool sym = is_cr(f, m, cfg).is_cr;
      bool solver = extend_homogeneous(f, m, cfg).status == ExtendStatus::ok;
      if (sym != solver || !sym) ++disagreements;

      CPoly g = random_non_cr(rng, m, 1 + (i % 5));
      bool sym2 = is_cr(g, m, cfg).is_cr;
      bool solver2 = extend_homogeneous(g, m, cfg).status == ExtendStatus::ok;
      if (sym2 != solver2 || sym2) ++disagreements;
    }
    d = "disagreements=" + std::to_string(disagreements);
    return disagreements == 0;
  });

  // 4. Chain-rule identity on the round-trip pairs.
  run_criterion(4, "chain-rule residual < 1e-9 on round-trip pairs", [&](std::string& d) {
    auto pure = make_round_trips(100, false);
    double worst = 0.0;
    for (const auto& rt : pure) {
      ChainResidual res = chain_identity_check(rt.f, rt.f0, rt.model);
      worst = std::max(worst, res.max());
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max residual %.2e", worst);
    d = buf;
    return worst < 1e-9;
  });

  // 5. Cauchy quadrature.
  run_criterion(5, "quadrature: holomorphic reproduction and residue oracle", [&](std::string& d) {
    QuadricModel m;
    m.n = 2;
    m.a.m = Eigen::MatrixXcd::Identity(2, 2);
    m.b.m = Eigen::MatrixXcd::Zero(2, 2);
    m.e = CPoly(2);
    Eigen::VectorXcd z(2);
    z << cplx(0.1, 0.2), cplx(-0.2, 0.05);
    AffineDisc disc = disc_through(z, m.rho(z) + 0.5, m, cfg);
    BoundaryData holo;
    holo.eval = [](const Eigen::VectorXcd& w) { return std::exp(2.0 * w(0)) + w(1); };
    cplx xi(0.15, -0.08);
    Eigen::VectorXcd at = disc.point_at(xi);
    CauchyResult hv = cauchy_eval(holo, disc, xi, cfg);
    double err_holo = std::abs(hv.value - (std::exp(2.0 * at(0)) + at(1)));

    AffineDisc disc0 = disc_through(Eigen::VectorXcd::Zero(2), 0.6, m, cfg);
    BoundaryData dbar;
    dbar.eval = [](const Eigen::VectorXcd& w) { return std::conj(w(0)); };
    CauchyResult rv = cauchy_eval(dbar, disc0, cplx(0.2, 0.1), cfg);
    double err_res = std::abs(rv.value);
    char buf[96];
    std::snprintf(buf, sizeof buf, "holo err %.2e, residue-oracle err %.2e", err_holo, err_res);
    d = buf;
    return err_holo < 1e-10 && err_res < 1e-10;
  });

  // 6. Disc attachment.
  run_criterion(6, "disc attachment on 200 random (model, point) pairs", [&](std::string& d) {
    Rng rng(103);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    std::uniform_real_distribution<double> lam(0.0, 0.45);
    double worst_attach = 0.0, worst_circle = 0.0, worst_ell = 0.0;
    int built = 0;
    while (built < 200) {
      int n = 2 + (built % 3);
      QuadricModel m;
      m.n = n;
      m.a.m = Eigen::MatrixXcd::Identity(n, n);
      for (int i = 2; i < n; ++i) m.a.m(i, i) = (u(rng) > 0) ? 1.0 : -1.0;
      m.b.m = Eigen::MatrixXcd::Zero(n, n);
      double l1 = lam(rng), l2 = lam(rng);
      m.b.m(0, 0) = l1;
      m.b.m(1, 1) = l2;
      m.e = CPoly(n);
      Eigen::VectorXcd z(n);
      for (int i = 0; i < n; ++i) z(i) = 0.4 * cplx(u(rng), u(rng));
      double s = m.rho(z) + 0.05 + 0.4 * std::abs(u(rng));
      AffineDisc disc;
      try {
        disc = disc_through(z, s, m, cfg);
      } catch (const Error&) {
        continue;
      }
      worst_attach = std::max(worst_attach, disc.attach_residual);
      double r = std::sqrt(disc.geom.radius_sq);
      for (cplx xi : disc.boundary_xi)
        worst_circle = std::max(worst_circle, std::abs(std::abs(xi - disc.geom.center) - r));
      auto [c1, c2] = elliptic_direction(l1, l2);
      worst_ell = std::max(worst_ell, std::abs(l1 * c1 * c1 + l2 * c2 * c2));
      worst_ell = std::max(worst_ell, std::abs(std::norm(c1) + std::norm(c2) - 1.0));
      ++built;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "attach %.2e, circle %.2e, elliptic %.2e", worst_attach,
                  worst_circle, worst_ell);
    d = buf;
    return worst_attach < 1e-8 && worst_circle < 1e-10 && worst_ell < 1e-14;
  });

  // 7. Leaf topology.
  run_criterion(7, "grid oracle vs classifier at resolution 64", [&](std::string& d) {
    int checked = 0;
    for (int k = 2; k <= 4; ++k) {
      for (int l = 0; l <= 3; ++l) {
        for (double s : {-1.0, 1.0}) {
          LeafTopology want = classify_quadric_leaf({k, l, 0}, s > 0 ? 1 : -1);
          std::vector<double> w(std::size_t(k + l), 1.0);
          for (int i = 0; i < l; ++i) w[std::size_t(k + i)] = -1.0;
          SampleOptions opt;
          opt.resolution = 64;
          LeafTopology got = sample_diag_leaf(w, s, opt, cfg);
          if (got.components != want.components ||
              got.boundary_components != want.boundary_components || got.empty != want.empty) {
            d = "mismatch at k=" + std::to_string(k) + " l=" + std::to_string(l) +
                " s=" + std::to_string(s);
            return false;
          }
          if (l == 2 && s < 0 && got.pi1_rank != 1) {
            d = "pi1 signature missed at k=" + std::to_string(k);
            return false;
          }
          ++checked;
        }
      }
    }
    SampleOptions opt;
    opt.resolution = 64;
    LeafTopology split = sample_leaf(model_split_boundary(1.0), 0.5, opt, cfg);
    d = "cases=" + std::to_string(checked) +
        ", split-boundary components=" + std::to_string(split.boundary_components);
    return split.boundary_components == 2;
  }, 120.0);

  // 8. Extension fixture (the (2,1) model).
  run_criterion(8, "numeric extension matches e^{-1/s^2}/z3 at 20 probes", [&](std::string& d) {
    QuadricModel m = model_sig_21();
    BoundaryData data = data_sig_21();
    Rng rng(104);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0, worst_cross = 0.0;
    int done = 0;
    while (done < 20) {
      double s = -(0.3 + 0.5 * (u(rng) * 0.5 + 0.5));
      Eigen::VectorXcd z(3);
      z(0) = 0.2 * cplx(u(rng), u(rng));
      z(1) = 0.2 * cplx(u(rng), u(rng));
      double need = std::sqrt(std::max(0.1, z.head(2).squaredNorm() - s + 0.05));
      z(2) = need * std::exp(cplx(0.0, kPi * u(rng)));
      if (m.rho(z) >= s - 1e-6) continue;
      LeafPoint p{z, s};
      ExtensionResult direct = extend_at_point(data, m, p, cfg, Route::direct_disc);
      ExtensionResult shrink = extend_at_point(data, m, p, cfg, Route::shrink_family);
      cplx closed = std::exp(-1.0 / (s * s)) / z(2);
      worst = std::max(worst, std::abs(direct.value - closed));
      worst_cross = std::max(worst_cross, std::abs(direct.value - shrink.value) -
                                              (direct.est_error + shrink.est_error + 1e-12));
      ++done;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "closed-form err %.2e, cross-route slack %.2e", worst,
                  worst_cross);
    d = buf;
    return worst < 1e-6 && worst_cross <= 0.0;
  });

  // 9. Non-extension fixtures.
  run_criterion(9, "divergence 2.3 / arc 8.2 / components 8.3", [&](std::string& d) {
    QuadricModel m23 = model_hyperbolic_11();
    std::vector<LeafPoint> probes23;
    for (int i = 0; i < 12; ++i) {
      Eigen::VectorXcd z = Eigen::VectorXcd::Zero(2);
      z(0) = 0.05 / std::pow(2.0, i);
      probes23.push_back({z, 0.25});
    }
    DivergenceReport r23 = verify_nonextension("2.3", m23, data_hyperbolic_11(), probes23, cfg);

    QuadricModel m82 = model_bishop_n1(0.25);
    std::vector<LeafPoint> probes82;
    for (int i = 0; i < 5; ++i) {
      double th = (0.2 + 0.15 * i) * (kPi / 2.0);
      double denom =
          std::sqrt(1.5 * std::cos(th) * std::cos(th) + 0.5 * std::sin(th) * std::sin(th));
      Eigen::VectorXcd z(1);
      z(0) = 0.9 / denom * std::exp(cplx(0.0, th));
      probes82.push_back({z, 1.0});
    }
    DivergenceReport r82 = verify_nonextension("8.2", m82, data_quadrant_bump(4.0), probes82, cfg);

    QuadricModel m83 = model_split_boundary(1.0);
    DivergenceReport r83 = verify_nonextension(
        "8.3", m83, data_sheet_indicator(), {LeafPoint{Eigen::VectorXcd::Zero(2), 0.5}}, cfg);

    char buf[128];
    std::snprintf(buf, sizeof buf, "growth %.1e, arc %.2f, comp %.2f", r23.growth_ratio,
                  r82.arc_mismatch, r83.component_mismatch);
    d = buf;
    return r23.growth_ratio >= 1e3 && r23.monotone && r82.arc_mismatch > 0.1 &&
           r83.component_mismatch > 0.4 && r83.boundary_components == 2;
  });

  // 10. Formal-vs-numeric agreement.
  run_criterion(10, "numeric F vs jet evaluation within 10 r0^(N+1)", [&](std::string& d) {
    QuadricModel m;
    m.n = 2;
    m.a.m = Eigen::MatrixXcd::Identity(2, 2);
    m.b.m = Eigen::MatrixXcd::Zero(2, 2);
    m.b.m(0, 0) = 0.25;
    m.b.m(1, 1) = 0.15;
    m.e = CPoly::monomial(2, {2, 0}, {0, 1}, cplx(0.1, 0.05)) +
          CPoly::monomial(2, {0, 1}, {2, 0}, cplx(0.1, -0.05));
    Rng rng(105);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double r0 = 0.2;
    const int order = 5;
    double bound = 10.0 * std::pow(r0, order + 1);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      SPoly f0 = random_weighted_homogeneous(rng, 2, 1 + trial % 5);
      CPoly f = compose(f0, m);
      Jet jet = formal_jet(f, m, order, cfg);
      if (jet.status != ExtendStatus::ok) return false;
      BoundaryData data;
      CPoly fc = f;
      data.eval = [fc](const Eigen::VectorXcd& z) { return fc.eval(z); };
      int done = 0;
      while (done < 4) {
        Eigen::VectorXcd z(2);
        z << 0.08 * cplx(u(rng), u(rng)), 0.08 * cplx(u(rng), u(rng));
        double s = m.rho(z) + 0.02 + 0.05 * std::abs(u(rng));
        if (std::sqrt(z.squaredNorm() + s * s) > r0) continue;
        ExtensionResult r = extend_at_point(data, m, {z, s}, cfg);
        worst = std::max(worst, std::abs(r.value - jet.f_series.eval(z, s)));
        ++done;
      }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "max |numeric - jet| %.2e vs bound %.2e", worst, bound);
    d = buf;
    return worst <= bound;
  });

  if (g_failures == 0) std::printf("all acceptance criteria passed\n");
  else std::printf("%d acceptance criteria FAILED\n", g_failures);
  return g_failures;
}
