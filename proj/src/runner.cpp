#include "ambrose/runner.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ambrose/adapted.hpp"
#include "ambrose/homogeneity.hpp"
#include "ambrose/orbit.hpp"
#include "ambrose/total_space.hpp"

namespace ambrose {

namespace {

[[noreturn]] void config_error(const std::string& what) { throw GeometryError(ErrorCode::ConfigError, what); }

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

/// Smooth test fields whose components are distinct low-frequency trigonometric
/// functions of the coordinates.
TensorEval wave_field(std::vector<Axis> axes, std::vector<int> dims, double phase) {
  return [axes, dims, phase](const Vec& x) {
    DenseTensor t(axes, dims);
    for (std::size_t i = 0; i < t.size(); ++i) {
      double s = phase + 0.37 * static_cast<double>(i);
      for (Eigen::Index mu = 0; mu < x.size(); ++mu) s += (0.3 + 0.11 * ((i + mu) % 5)) * x[mu];
      t.data()[i] = 0.5 * std::sin(s) + 0.1 * std::cos(0.5 * s + x[0]);
    }
    return t;
  };
}

BundleConnection canonical_bundle(const Fixture& f) { return BundleConnection{f.canonical, f.a, {}}; }

void require(const Fixture& f, const std::string& tag, const std::string& scenario) {
  if (!f.has(tag)) config_error("scenario " + scenario + " needs a fixture providing " + tag);
}

TripleSpec triple_spec(const Fixture& f) { return TripleSpec{f.chart, f.g, f.levi_civita, f.algebra, f.inner, f.a0}; }

VerificationReport total_space_report(const Fixture& f, const std::vector<Vec>& points, double tol, Exec exec,
                                      std::uint64_t seed) {
  const TotalSpaceModel model{f.chart, f.g, f.canonical, f.algebra, f.inner, f.a};
  TotalSpaceOptions opt;
  opt.tol = tol;
  opt.exec = exec;
  VerificationReport rep = bar_parallelism_check(model, points, opt, seed);
  const VerificationReport dist = distribution_parallel_check(model, f.a0, points, opt, seed);
  for (const auto& [name, value] : dist.residuals) {
    rep.residuals[name] = std::max(value, rep.residuals.count(name) ? rep.residuals[name] : 0.0);
  }
  for (const auto& [name, value] : dist.tolerances) rep.tolerances[name] = value;
  for (const std::string& fl : dist.flags) rep.flag(fl);
  rep.scenario = "total-space";
  rep.finalize();
  return rep;
}

VerificationReport adapt_report(const Fixture& f, const std::vector<Vec>& points, int kmax, double tol, Exec exec) {
  AdaptedSetup setup{default_section(f),
                     BundleConnection{f.levi_civita, f.a0, {}},
                     canonical_bundle(f),
                     f.g,
                     f.chart,
                     fixture_rep(f),
                     frame_inner(f.dim(), f.inner),
                     ChainOptions{},
                     kmax};
  return adapted_report(setup, points, tol, exec);
}

}  // namespace

std::vector<std::string> scenario_names() {
  return {"adapt", "check-lh-triple", "check-ls-triple", "identities", "selftest", "singer", "total-space"};
}

RunConfig parse_config(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    config_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) config_error("config must be a JSON object");
  RunConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "scenario") c.scenario = value.get<std::string>();
      else if (key == "fixture") c.fixture = value.get<std::string>();
      else if (key == "param" || key == "params") c.params = value.get<std::map<std::string, double>>();
      else if (key == "tol" || key == "tolerances") c.tol = value.get<std::map<std::string, double>>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "kmax") c.kmax = value.get<int>();
      else if (key == "out") c.out = value.get<std::string>();
      else if (key == "points") {
        if (value.is_number_integer()) {
          c.points = value.get<int>();
        } else {
          for (const auto& p : value) {
            const std::vector<double> v = p.get<std::vector<double>>();
            c.explicit_points.push_back(Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())));
          }
          c.points = static_cast<int>(c.explicit_points.size());
        }
      } else {
        config_error("unknown config key " + key);
      }
    }
  } catch (const json::exception& e) {
    config_error(std::string("bad config value: ") + e.what());
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot read config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::vector<Vec> run_points(const RunConfig& config, const Fixture& f) {
  if (!config.explicit_points.empty()) {
    for (const Vec& p : config.explicit_points) {
      if (p.size() != f.dim() || !f.chart.inside_margin(p)) config_error("sample point outside the fixture chart");
    }
    return config.explicit_points;
  }
  if (config.points < 1) config_error("sample count must be at least 1");
  return sample_points(f.chart.lo(), f.chart.hi(), f.chart.margin(), config.points, config.seed);
}

VerificationReport identity_report(const Fixture& f, const std::vector<Vec>& points, double tol, Exec exec) {
  const int n = f.dim();
  const int m = f.algebra.dim();
  const bool bundle = m > 0;
  const Chart& chart = f.chart;
  const BundleConnection b = canonical_bundle(f);

  std::vector<Axis> eta_axes{Axis::Contra, Axis::Co};
  std::vector<int> eta_dims{n, n};
  if (bundle) {
    eta_axes.push_back(Axis::Lie);
    eta_dims.push_back(m);
  }
  const TensorField eta = make_field(eta_axes, eta_dims, wave_field(eta_axes, eta_dims, 0.2));
  const TensorEval s_eval = wave_field({Axis::Contra, Axis::Co, Axis::Co}, {n, n, n}, 1.1);
  AdjointForm beta{s_eval, {}};
  BundleConnection bp{connection_sum(f.canonical, s_eval), f.a, {}};
  TensorField alpha;
  if (bundle) {
    beta.lie = wave_field({Axis::Co, Axis::Lie}, {n, m}, 2.3);
    alpha = make_field({Axis::Co, Axis::Lie}, {n, m}, beta.lie);
    bp.form = ConnectionForm{f.algebra, [a = f.a, l = beta.lie](const Vec& x) { return a(x) + l(x); }};
  }
  const ConnectionForm a = f.a, a0 = f.a0;
  const TensorField fixture_alpha =
      make_field({Axis::Co, Axis::Lie}, {n, m}, [a, a0](const Vec& x) { return a(x) - a0(x); });

  struct Row {
    double leibniz = 0, variation = 0, curv_var = 0, d_alpha = 0, bianchi = 0, torsion_split = 0;
  };
  const std::vector<Row> rows = map_indices<Row>(
      static_cast<int>(points.size()),
      [&](int i) {
        const Vec& x = points[i];
        Row row;
        row.leibniz = leibniz_check(beta, eta, b, chart, x);
        row.variation = connection_variation_check(eta, b, bp, chart, x);
        row.torsion_split = (torsion(bp.linear, chart, x) - torsion(f.canonical, chart, x) -
                             difference_torsion(s_eval(x)))
                                .max_abs();
        if (bundle) {
          row.curv_var = curvature_variation_check(f.a, alpha, chart, x);
          row.bianchi = bianchi_defect(f.a, chart, x).max_abs();
          if (f.alpha_parallel) {
            row.d_alpha = (exterior_cov_derivative(f.a, fixture_alpha, chart, x) -
                           form_of_torsion(fixture_alpha(x), torsion(f.canonical, chart, x)))
                              .max_abs();
          }
        }
        return row;
      },
      exec);

  VerificationReport rep;
  rep.scenario = "identities";
  rep.points = points;
  auto collect = [&rows](double Row::*field) {
    std::vector<double> v;
    for (const Row& r : rows) v.push_back(r.*field);
    return max_of(v);
  };
  rep.set("leibniz", collect(&Row::leibniz), tol);
  rep.set("connection_variation", collect(&Row::variation), tol);
  rep.set("torsion_difference", collect(&Row::torsion_split), tol);
  if (bundle) {
    rep.set("curvature_variation", collect(&Row::curv_var), tol);
    rep.set("bianchi", collect(&Row::bianchi), tol);
    if (f.alpha_parallel) rep.set("d_alpha_torsion", collect(&Row::d_alpha), tol);
  } else {
    rep.flag("trivial-structure-algebra");
  }
  rep.finalize();
  return rep;
}

VerificationReport selftest_report(const Fixture& f, const std::vector<Vec>& points, double tol, Exec exec) {
  const Chart& chart = f.chart;
  const int n = f.dim();
  const LinearConnection fd_lc = levi_civita(f.g, chart);
  const TensorField gfield = metric_tensor_field(f.g, chart);
  const TensorField rfield = curvature_field(f.levi_civita, chart);
  struct Row {
    double metricity = 0, lc_torsion = 0, lc_gap = 0, first_bianchi = 0;
  };
  const std::vector<Row> rows = map_indices<Row>(
      static_cast<int>(points.size()),
      [&](int i) {
        const Vec& x = points[i];
        Row row;
        row.metricity = frame_norm(covariant_derivative(f.levi_civita, gfield, chart, x), f.g, chart, x);
        row.lc_torsion = torsion(f.levi_civita, chart, x).max_abs();
        row.lc_gap = (fd_lc(x) - f.levi_civita(x)).max_abs();
        const DenseTensor r = rfield(x);
        for (int l = 0; l < n; ++l)
          for (int k = 0; k < n; ++k)
            for (int a = 0; a < n; ++a)
              for (int b = 0; b < n; ++b) {
                const double s = r.at({l, k, a, b}) + r.at({l, a, b, k}) + r.at({l, b, k, a});
                row.first_bianchi = std::max(row.first_bianchi, std::abs(s));
              }
        return row;
      },
      exec);

  VerificationReport rep = equivalence_check_c_c0(f.canonical, f.g, f.levi_civita, chart, points, {tol, exec});
  rep.scenario = "selftest";
  double metricity = 0, lct = 0, gap = 0, fb = 0;
  for (const Row& r : rows) {
    metricity = std::max(metricity, r.metricity);
    lct = std::max(lct, r.lc_torsion);
    gap = std::max(gap, r.lc_gap);
    fb = std::max(fb, r.first_bianchi);
  }
  rep.set("metricity", metricity, 1e-8);
  rep.set("levi_civita_torsion", lct, 1e-8);
  rep.set("levi_civita_vs_metric", gap, 1e-6);
  rep.set("first_bianchi", fb, 1e-7);
  if (f.algebra.dim() > 0) {
    rep.set("jacobi", f.algebra.jacobi_defect(), 1e-10);
    rep.set("inner_invariance", ad_invariance_defect(f.algebra, f.inner), 1e-10);
  }
  rep.finalize();
  return rep;
}

VerificationReport singer_report(const Fixture& f, const std::vector<Vec>& points, int kmax, double tol, Exec exec) {
  const SectionSpec sigma = default_section(f);
  const BundleConnection b0{f.levi_civita, f.a0, {}};
  const TensorRep rep_k = fixture_rep(f);
  const std::vector<ChainAtPoint> chains = map_indices<ChainAtPoint>(
      static_cast<int>(points.size()),
      [&](int i) { return adaptive_chain(sigma, b0, f.g, f.chart, rep_k, points[i], kmax); }, exec);

  VerificationReport rep;
  rep.scenario = "singer";
  rep.points = points;
  double angle = 0.0, increase = 0.0;
  int lo = 1 << 30, hi = -1;
  bool undetermined = false;
  for (const ChainAtPoint& c : chains) {
    for (double a : c.chain.nesting_angles) angle = std::max(angle, a);
    for (std::size_t k = 1; k < c.chain.dims.size(); ++k) {
      increase = std::max(increase, static_cast<double>(c.chain.dims[k] - c.chain.dims[k - 1]));
    }
    if (c.chain.ambiguous) rep.flag("ambiguous-rank");
    if (!c.chain.singer_k) {
      undetermined = true;
      continue;
    }
    lo = std::min(lo, *c.chain.singer_k);
    hi = std::max(hi, *c.chain.singer_k);
  }
  rep.set("nesting_angle", angle, 1e-6);
  rep.set("dims_increase", increase, 0.5);
  if (undetermined) {
    rep.flag("singer-undetermined");
    rep.set("singer_spread", INFINITY, 0.5);
  } else {
    rep.set("singer_spread", hi - lo, 0.5);
    const StabilizerChain& c0 = chains.front().chain;
    rep.singer_k = *c0.singer_k;
    rep.stabilizer_dims.assign(c0.dims.begin(), c0.dims.begin() + *c0.singer_k + 1);
    if (hi == lo && chains.size() > 1) {
      const int depth = lo + 1;
      OrbitOptions oo;
      oo.exec = exec;
      double worst = 0.0;
      bool prescreen = false;
      for (std::size_t i = 1; i < chains.size(); ++i) {
        const MatchResult mr = orbit_match(chains.front().tower, chains[i].tower, rep_k, depth, oo);
        worst = std::max(worst, mr.residual);
        prescreen = prescreen || mr.prescreen_failed;
      }
      if (prescreen) rep.flag("orbit-prescreen-failed");
      rep.set("orbit_residual", worst, std::min(tol, 1e-6));
    }
  }
  rep.finalize();
  return rep;
}

VerificationReport run(const RunConfig& config) {
  const std::vector<std::string> names = scenario_names();
  if (std::find(names.begin(), names.end(), config.scenario) == names.end()) {
    config_error("unknown scenario '" + config.scenario + "'");
  }
  if (config.fixture.empty()) config_error("no fixture given");
  if (config.kmax < 1 || config.kmax > 6) config_error("kmax must be in [1, 6]");
  for (const auto& [name, value] : config.tol) {
    if (!(value > 0.0) || !std::isfinite(value)) config_error("tolerance " + name + " must be positive");
  }
  const Fixture f = instantiate(config.fixture, config.params);
  const std::vector<Vec> points = run_points(config, f);
  const double tol = config.tol.count("default") ? config.tol.at("default") : 1e-5;
  const std::string& s = config.scenario;

  VerificationReport rep;
  if (s == "singer") {
    rep = singer_report(f, points, config.kmax, tol, config.exec);
  } else if (s == "check-lh-triple") {
    require(f, "triple", s);
    rep = check_lh_triple(triple_spec(f), f.canonical, f.a, points, {tol, config.exec});
  } else if (s == "check-ls-triple") {
    require(f, "triple", s);
    rep = check_ls_triple(triple_spec(f), points, {tol, config.exec});
  } else if (s == "adapt") {
    require(f, "canonical-connection", s);
    rep = adapt_report(f, points, config.kmax, tol, config.exec);
  } else if (s == "total-space") {
    require(f, "total-space", s);
    rep = total_space_report(f, points, tol, config.exec, config.seed);
  } else if (s == "identities") {
    rep = identity_report(f, points, tol, config.exec);
  } else {
    rep = selftest_report(f, points, tol, config.exec);
  }
  rep.fixture = f.name;
  rep.params = f.params;
  for (const auto& [name, value] : config.tol) {
    if (name == "default") continue;
    if (!rep.residuals.count(name)) config_error("no residual named " + name + " in scenario " + s);
    rep.tolerances[name] = value;
  }
  const bool forced_fail = std::find(rep.flags.begin(), rep.flags.end(), "singer-not-constant") != rep.flags.end();
  rep.finalize();
  if (forced_fail) rep.pass = false;
  return rep;
}

RunOutcome execute(const RunConfig& config) {
  RunOutcome out;
  try {
    const VerificationReport rep = run(config);
    out.json = to_json(rep);
    out.exit_code = rep.pass ? 0 : 1;
    return out;
  } catch (const GeometryError& e) {
    const ErrorCode c = e.code();
    if (c == ErrorCode::ConfigError || c == ErrorCode::UnknownFixture || c == ErrorCode::BadParameters) {
      out.exit_code = 2;
      out.message = e.what();
      return out;
    }
    out.message = e.what();
  } catch (const std::exception& e) {
    out.message = e.what();
  }
  VerificationReport partial;
  partial.scenario = config.scenario;
  partial.fixture = config.fixture;
  partial.params = config.params;
  partial.error = out.message;
  try {
    partial.points = run_points(config, instantiate(config.fixture, config.params));
  } catch (const std::exception&) {
  }
  partial.finalize();
  out.json = to_json(partial);
  out.exit_code = 3;
  return out;
}

}  // namespace ambrose
