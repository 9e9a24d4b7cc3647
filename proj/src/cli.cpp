#include "crext/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "crext/fixtures.hpp"
#include "crext/formal.hpp"
#include "crext/model_io.hpp"

namespace crext {

namespace {

using nlohmann::json;

int exit_code_for(Errc c) {
  switch (c) {
    case Errc::parse_error:
    case Errc::schema_error: return 2;
    case Errc::hypothesis_fail:
    case Errc::a_degenerate:
    case Errc::insufficient_positive:
    case Errc::verdict_forbids: return 3;
    default: return 4;
  }
}

json inertia_json(const Inertia& in) {
  return json{{"positive", in.positive}, {"negative", in.negative}, {"zero", in.zero}};
}

json complex_json(cplx c) { return json::array({c.real(), c.imag()}); }

json matrix_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

std::string parabolic_flag(double lambda, const Config& cfg) {
  double tol = std::max(cfg.zero_tol_factor, 1e-12);
  if (std::abs(lambda - 0.5) <= tol) return "PARABOLIC_BOUNDARY";
  return lambda < 0.5 ? "elliptic" : "hyperbolic";
}

json run_analyze(const QuadricModel& model, const Config& cfg) {
  json rep;
  rep["n"] = model.n;
  ExtensionVerdict v = extension_verdict(model, cfg);
  rep["a_inertia"] = inertia_json(v.a_inertia);
  rep["q_inertia"] = inertia_json(v.q_inertia);
  rep["q_nondegenerate"] = v.q_nondegenerate;
  rep["verdict"] = verdict_name(v.verdict);
  if (!v.note.empty()) rep["note"] = v.note;

  json lambdas = json::array(), flags = json::array();
  try {
    if (v.a_inertia.negative == 0 && v.a_inertia.zero == 0) {
      NormalForm nf = normalize(model, cfg);
      for (double l : nf.lambdas) {
        lambdas.push_back(l);
        flags.push_back(parabolic_flag(l, cfg));
      }
    } else if (v.a_inertia.positive >= 2) {
      NormalForm nf = block_reduce_b(model, cfg);
      for (double l : nf.lambdas) {
        lambdas.push_back(l);
        flags.push_back(parabolic_flag(l, cfg));
      }
      rep["lambda_scope"] = "first-two-coordinates block";
    }
  } catch (const Error&) {
    // no lambda report when A is degenerate
  }
  rep["lambdas"] = lambdas;
  rep["parabolic_flags"] = flags;

  LocusReport loc = cr_singular_locus(model, 1.0, cfg);
  json jl;
  jl["isolated"] = loc.isolated;
  jl["kernel_dim"] = loc.kernel_dim;
  jl["sampled_zero_count"] = int(loc.sampled_zeros.size());
  jl["sampling_ran"] = loc.sampling_ran;
  rep["cr_singular_locus"] = jl;
  return rep;
}

Config make_config(double zero_tol, double boundary_tol, double est_tol, std::uint64_t seed) {
  Config cfg;
  if (zero_tol > 0) cfg.zero_tol_factor = zero_tol;
  if (boundary_tol > 0) cfg.boundary_tol = boundary_tol;
  if (est_tol > 0) cfg.est_tol = est_tol;
  if (const char* env = std::getenv("CREXT_SEED")) {
    cfg.seed = std::strtoull(env, nullptr, 10);
  } else {
    cfg.seed = seed;
  }
  return cfg;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"CR extension toolkit for quadric models in C^n x R"};
  app.require_subcommand(1);

  std::string model_path, data_path, point_path, f_path, probe_path, example_id, only_id;
  std::string format = "json";
  double s_value = 1.0;
  int order = 5, resolution = 64;
  double box = 0.0;
  double zero_tol = 0, boundary_tol = 0, est_tol = 0;
  std::uint64_t seed = default_config().seed;
  bool stability = false;

  app.add_option("--zero-tol", zero_tol, "eigenvalue zero tolerance factor")
      ->check(CLI::PositiveNumber);
  app.add_option("--boundary-tol", boundary_tol, "disc attachment tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--est-tol", est_tol, "quadrature doubling tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "jitter seed (CREXT_SEED overrides)");

  auto* a_analyze = app.add_subcommand("analyze", "inertia, nondegeneracy, verdict, locus");
  a_analyze->add_option("--model", model_path)->required();

  auto* a_nf = app.add_subcommand("normal-form", "diagonalize A, Takagi-reduce B");
  a_nf->add_option("--model", model_path)->required();

  auto* a_fe = app.add_subcommand("formal-extend", "order-by-order extension F(z, s)");
  a_fe->add_option("--model", model_path)->required();
  a_fe->add_option("--f", f_path)->required();
  a_fe->add_option("--order", order);

  auto* a_disc = app.add_subcommand("disc", "attached affine disc through a point");
  a_disc->add_option("--model", model_path)->required();
  a_disc->add_option("--point", point_path)->required();
  a_disc->add_option("--output", format)->check(CLI::IsMember({"json", "csv"}));

  auto* a_ext = app.add_subcommand("extend-point", "numeric CR extension at a point");
  a_ext->add_option("--model", model_path)->required();
  a_ext->add_option("--data", data_path)->required();
  a_ext->add_option("--point", point_path);
  a_ext->add_option("--probe-path", probe_path);
  a_ext->add_option("--example", example_id, "counterexample id for divergence reports");

  auto* a_leaf = app.add_subcommand("leaf-topology", "classification and grid oracle");
  a_leaf->add_option("--model", model_path)->required();
  a_leaf->add_option("--s", s_value)->required();
  a_leaf->add_option("--resolution", resolution);
  a_leaf->add_option("--box", box);
  a_leaf->add_flag("--stability-check", stability);
  a_leaf->add_option("--output", format)->check(CLI::IsMember({"json", "csv"}));

  auto* a_verify = app.add_subcommand("verify-examples", "run the bundled example checks");
  a_verify->add_option("--only", only_id);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  Config cfg = make_config(zero_tol, boundary_tol, est_tol, seed);

  try {
    if (*a_analyze) {
      QuadricModel model = load_model_file(model_path);
      out << run_analyze(model, cfg).dump(2) << "\n";
      return 0;
    }

    if (*a_nf) {
      QuadricModel model = load_model_file(model_path);
      NormalForm nf = normalize(model, cfg);
      json j;
      j["transform"] = matrix_json(nf.transform);
      json ad = json::array();
      for (int i = 0; i < nf.a_diag.size(); ++i) ad.push_back(nf.a_diag(i));
      j["a_diag"] = ad;
      j["lambdas"] = nf.lambdas;
      j["residual"] = nf.residual;
      out << j.dump(2) << "\n";
      return 0;
    }

    if (*a_fe) {
      QuadricModel model = load_model_file(model_path);
      CPoly f = cpoly_from_json(parse_json_file(f_path), model.n);
      Jet jet = formal_jet(f, model, order, cfg);
      json j;
      j["order"] = jet.order;
      j["status"] = jet.status == ExtendStatus::ok ? "ok" : "NOT_CR";
      j["residual_valuation"] = jet.residual_valuation;
      if (jet.status == ExtendStatus::ok) {
        j["F"] = spoly_to_json(jet.f_series);
      } else {
        j["failed_layer"] = jet.failed_layer;
        if (jet.witness) j["witness"] = cpoly_to_json(*jet.witness);
      }
      out << j.dump(2) << "\n";
      return jet.status == ExtendStatus::ok ? 0 : 4;
    }

    if (*a_disc) {
      QuadricModel model = load_model_file(model_path);
      LeafPoint p = point_from_json(parse_json_file(point_path));
      DiscFrame frame = disc_frame(model, cfg);
      Eigen::VectorXcd w = frame.identity ? p.z : Eigen::VectorXcd(frame.t_inv * p.z);
      AffineDisc disc = disc_through(w, p.s, frame.model, cfg);
      if (format == "csv") {
        out << "angle";
        for (int i = 0; i < model.n; ++i) out << ",re_z" << (i + 1) << ",im_z" << (i + 1);
        out << ",residual\n";
        out << std::setprecision(17);
        for (std::size_t k = 0; k < disc.boundary_xi.size(); ++k) {
          double th = 2.0 * kPi * double(k) / double(disc.boundary_xi.size());
          Eigen::VectorXcd zeta = frame.t * disc.point_at(disc.boundary_xi[k]);
          out << th;
          for (int i = 0; i < model.n; ++i)
            out << "," << zeta(i).real() << "," << zeta(i).imag();
          out << "," << std::abs(p.s - model.rho(zeta)) << "\n";
        }
      } else {
        json j;
        j["attach_residual"] = disc.attach_residual;
        j["min_singularity_distance"] = disc.min_sing_dist;
        j["min_gradient"] = disc.min_grad;
        j["is_circle"] = disc.is_circle;
        j["radius_sq"] = disc.geom.radius_sq;
        j["center"] = complex_json(disc.geom.center);
        json dirj = json::array();
        Eigen::VectorXcd dir_orig = frame.t * disc.dir;
        for (int i = 0; i < model.n; ++i) dirj.push_back(complex_json(dir_orig(i)));
        j["direction"] = dirj;
        j["nodes"] = int(disc.boundary_xi.size());
        out << j.dump(2) << "\n";
      }
      return 0;
    }

    if (*a_ext) {
      QuadricModel model = load_model_file(model_path);
      BoundaryData data = load_data_file(data_path, model);
      if (!probe_path.empty()) {
        if (example_id.empty())
          throw Error(Errc::schema_error, "--probe-path requires --example");
        std::vector<LeafPoint> probes = points_from_json(parse_json_file(probe_path));
        DivergenceReport rep = verify_nonextension(example_id, model, data, probes, cfg);
        json j;
        j["example"] = rep.example_id;
        j["mechanism"] = rep.mechanism;
        j["growth_ratio"] = rep.growth_ratio;
        j["monotone"] = rep.monotone;
        j["arc_mismatch"] = rep.arc_mismatch;
        j["component_mismatch"] = rep.component_mismatch;
        j["threshold"] = rep.threshold;
        j["passed"] = rep.passed;
        json probes_j = json::array();
        for (const auto& row : rep.probes) {
          json pj;
          pj["s"] = row.p.s;
          pj["candidate_abs"] = row.candidate_abs;
          pj["data_sup_boundary"] = row.data_sup_boundary;
          pj["pole_distance"] = row.pole_distance;
          probes_j.push_back(pj);
        }
        j["probes"] = probes_j;
        out << j.dump(2) << "\n";
        return 0;
      }
      if (point_path.empty())
        throw Error(Errc::schema_error, "extend-point needs --point or --probe-path");
      LeafPoint p = point_from_json(parse_json_file(point_path));
      ExtensionResult res = extend_at_point(data, model, p, cfg);
      json j;
      j["value"] = complex_json(res.value);
      j["est_error"] = res.est_error;
      j["chain"] = res.chain;
      j["max_principle_bound"] = res.max_principle_bound;
      out << j.dump(2) << "\n";
      return 0;
    }

    if (*a_leaf) {
      QuadricModel model = load_model_file(model_path);
      SampleOptions opt;
      opt.resolution = resolution;
      opt.box_half_width = box;
      opt.stability_check = stability;
      json j;
      try {
        Inertia qi = inertia(real_form(model), cfg);
        LeafTopology cls = classify_quadric_leaf(qi, s_value > 0 ? 1 : (s_value < 0 ? -1 : 0));
        json c;
        c["empty"] = cls.empty;
        c["components"] = cls.components;
        c["boundary_components"] = cls.boundary_components;
        c["pi1_rank"] = cls.pi1_rank;
        c["generator_on_boundary"] = cls.generator_on_boundary;
        j["classifier"] = c;
      } catch (const Error& e) {
        j["classifier"] = json{{"error", e.what()}};
      }
      if (format == "csv") {
        auto rows = boundary_cells(model, s_value, opt, cfg);
        for (int i = 0; i < model.n; ++i)
          out << (i ? "," : "") << "x" << (i + 1) << ",y" << (i + 1);
        out << "\n" << std::setprecision(17);
        for (const auto& row : rows) {
          for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
          out << "\n";
        }
        return 0;
      }
      LeafTopology t = sample_leaf(model, s_value, opt, cfg);
      json o;
      o["empty"] = t.empty;
      o["components"] = t.components;
      o["boundary_components"] = t.boundary_components;
      o["pi1_rank"] = t.pi1_rank;
      o["generator_on_boundary"] = t.generator_on_boundary;
      j["oracle"] = o;
      out << j.dump(2) << "\n";
      return 0;
    }

    if (*a_verify) {
      json table = json::array();
      int failures = 0, ran = 0;
      for (const auto& fx : bundled_fixtures()) {
        if (!only_id.empty() && fx.id != only_id) continue;
        ++ran;
        FixtureOutcome outc = fx.run(cfg);
        err << (outc.passed ? "[PASS] " : "[FAIL] ") << fx.id << "  " << fx.title << "\n"
            << "       " << outc.details << "\n";
        json row;
        row["id"] = fx.id;
        row["title"] = fx.title;
        row["passed"] = outc.passed;
        row["details"] = outc.details;
        table.push_back(row);
        if (!outc.passed) ++failures;
      }
      out << table.dump(2) << "\n";
      if (ran == 0) {
        err << "no fixture matches --only " << only_id << "\n";
        return 2;
      }
      return failures == 0 ? 0 : 1;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}

}  // namespace crext
