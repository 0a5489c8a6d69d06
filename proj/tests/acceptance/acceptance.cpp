#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "ambrose/adapted.hpp"
#include "ambrose/fixtures.hpp"
#include "ambrose/orbit.hpp"
#include "ambrose/runner.hpp"
#include "ambrose/total_space.hpp"

using namespace ambrose;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::vector<Vec> points_of(const Fixture& f, int count = 8, std::uint64_t seed = 2024) {
  return sample_points(f.chart.lo(), f.chart.hi(), f.chart.margin(), count, seed);
}

Vec vec(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

double max_norm(const LinearConnection& conn, const TensorField& t, const Fixture& f) {
  double worst = 0.0;
  for (const Vec& x : points_of(f)) {
    worst = std::max(worst, frame_norm(covariant_derivative(conn, t, f.chart, x), f.g, f.chart, x));
  }
  return worst;
}

TripleSpec triple_of(const Fixture& f) { return {f.chart, f.g, f.levi_civita, f.algebra, f.inner, f.a0}; }

Outcome calculus_layer() {
  double flat = 0.0;
  for (const char* name : {"euclidean", "flat_torus_chart"}) {
    const Fixture f = instantiate(name);
    const LinearConnection lc = levi_civita(f.g, f.chart);
    const TensorField gt = metric_tensor_field(f.g, f.chart);
    for (const Vec& x : points_of(f)) {
      flat = std::max({flat, christoffel(f.g, f.chart, x).max_abs(), curvature(lc, f.chart, x).max_abs(),
                       torsion(lc, f.chart, x).max_abs(), covariant_derivative(lc, gt, f.chart, x).max_abs()});
    }
  }
  const Fixture s = instantiate("round_sphere2");
  const double r = lowered_curvature_field(levi_civita(s.g, s.chart), s.g, s.chart)(vec({M_PI / 2, 0.4})).at({0, 1, 0, 1});
  const Fixture h = instantiate("hyperbolic_plane");
  double k_err = 0.0;
  for (const Vec& x : points_of(h)) {
    const DenseTensor rl = lowered_curvature_field(levi_civita(h.g, h.chart), h.g, h.chart)(x);
    const Mat g = frame_metric(h.g, h.chart, x);
    k_err = std::max(k_err, std::abs(rl.at({0, 1, 0, 1}) / (g(0, 0) * g(1, 1) - g(0, 1) * g(0, 1)) + 1.0));
  }
  return {flat < 1e-10 && std::abs(r - 1.0) < 1e-7 && k_err < 1e-7,
          "flat " + sci(flat) + ", sphere R_0101 - 1 = " + sci(r - 1.0) + ", hyperbolic K + 1 = " + sci(k_err)};
}

Outcome fd_order() {
  const Chart chart(vec({-1, -1}), vec({1, 1}), 0.1);
  const Vec x = vec({0.3, -0.2}), dir = vec({1.0, 0.5});
  const std::vector<std::pair<TensorEval, double>> cases = {
      {[](const Vec& y) { return DenseTensor::scalar(std::sin(y[0]) * std::cos(y[1])); },
       std::cos(0.3) * std::cos(-0.2) - 0.5 * std::sin(0.3) * std::sin(-0.2)},
      {[](const Vec& y) { return DenseTensor::scalar(std::exp(0.5 * y[0]) * y[1] * y[1]); },
       0.5 * std::exp(0.15) * 0.04 - 0.2 * std::exp(0.15)},
      {[](const Vec& y) { return DenseTensor::scalar(1.0 / (2.0 + y[0] + y[1])); }, -1.5 / (2.1 * 2.1)},
  };
  const double step = fd_step(chart, dir);
  bool ok = true;
  std::string ratios;
  for (const auto& [f, exact] : cases) {
    const double e1 = std::abs(fd_central(f, chart, x, dir, step).data()[0] - exact);
    const double e2 = std::abs(fd_central(f, chart, x, dir, step / 2).data()[0] - exact);
    ok = ok && e1 / e2 >= 3.5 && e1 / e2 <= 4.5;
    ratios += (ratios.empty() ? "" : ", ") + std::to_string(e1 / e2).substr(0, 5);
  }
  return {ok, "ratios " + ratios};
}

Outcome identity_suite() {
  double worst = 0.0;
  bool ok = true;
  for (const char* name : {"round_sphere2", "hopf_monopole", "su2_monopole", "round_sphere3", "su2_canonical"}) {
    const Fixture f = instantiate(name);
    const VerificationReport r = identity_report(f, points_of(f), 1e-6, Exec::Parallel);
    ok = ok && r.pass;
    if (f.algebra.dim() > 0 && f.alpha_parallel) ok = ok && r.residuals.count("d_alpha_torsion") > 0;
    for (const auto& [k, v] : r.residuals) worst = std::max(worst, v);
  }
  return {ok && worst < 1e-6, "worst residual " + sci(worst)};
}

Outcome cartan_instances() {
  double sym = 0.0;
  for (const char* name : {"round_sphere2", "hyperbolic_plane"}) {
    const Fixture f = instantiate(name);
    sym = std::max(sym, max_norm(f.levi_civita, curvature_field(f.levi_civita, f.chart), f));
  }
  const Fixture b = instantiate("berger_sphere", {{"lambda", 2.0}});
  const double berger = max_norm(b.levi_civita, curvature_field(b.levi_civita, b.chart), b);
  const double dr = max_norm(b.canonical, curvature_field(b.canonical, b.chart), b);
  const double dt = max_norm(b.canonical, torsion_field(b.canonical, b.chart), b);
  return {sym < 1e-6 && berger > 1e-2 && dr < 1e-6 && dt < 1e-6,
          "symmetric " + sci(sym) + ", berger " + sci(berger) + ", canonical dR " + sci(dr) + " dT " + sci(dt)};
}

Outcome agreement() {
  int count = 0;
  bool ok = true;
  for (const std::string& name : fixture_catalog()) {
    const Fixture f = instantiate(name);
    if (!f.has("canonical-connection")) continue;
    const VerificationReport r = equivalence_check_c_c0(f.canonical, f.g, f.levi_civita, f.chart, points_of(f));
    ok = ok && r.residuals.at("agreement_defect") == 0.0;
    ++count;
  }
  return {ok && count > 0, std::to_string(count) + " fixtures agree"};
}

Outcome singer_machinery() {
  bool ok = true;
  double angle = 0.0;
  std::string dims;
  for (const char* name : {"round_sphere2", "hyperbolic_plane", "round_sphere3", "berger_sphere", "hopf_monopole",
                           "su2_monopole", "su2_canonical", "euclidean"}) {
    const Fixture f = instantiate(name);
    const VerificationReport r = singer_report(f, points_of(f), 4, 1e-5, Exec::Parallel);
    angle = std::max(angle, r.residuals.at("nesting_angle"));
    ok = ok && r.pass && r.residuals.at("dims_increase") <= 0.0 && r.residuals.at("singer_spread") == 0.0;
    if (std::string(name) == "round_sphere2") ok = ok && r.stabilizer_dims == std::vector<int>{1} && r.singer_k == 0;
    if (std::string(name) == "round_sphere3") ok = ok && !r.stabilizer_dims.empty() && r.stabilizer_dims[0] == 3;
  }
  return {ok && angle < 1e-6, "max nesting angle " + sci(angle)};
}

Outcome orbit() {
  double worst = 0.0;
  for (const char* name : {"round_sphere2", "hyperbolic_plane", "round_sphere3", "berger_sphere", "hopf_monopole",
                           "su2_monopole"}) {
    const Fixture f = instantiate(name);
    const VerificationReport r = singer_report(f, points_of(f), 4, 1e-5, Exec::Parallel);
    worst = std::max(worst, r.residuals.count("orbit_residual") ? r.residuals.at("orbit_residual") : INFINITY);
  }
  const Fixture s = instantiate("round_sphere2"), h = instantiate("hyperbolic_plane");
  const BundleConnection bs{s.levi_civita, s.a0, {}}, bh{h.levi_civita, h.a0, {}};
  const DerivativeTower ts = build_tower(default_section(s), bs, s.g, s.chart, vec({1.0, 0.2}), 1);
  const DerivativeTower th = build_tower(default_section(h), bh, h.g, h.chart, vec({0.3, 1.4}), 1);
  const MatchResult m = orbit_match(ts, th, fixture_rep(s), 1);
  return {worst < 1e-6 && !m.match && m.prescreen_failed,
          "worst match " + sci(worst) + ", sphere vs hyperbolic " + (m.match ? "Match" : "NoMatch")};
}

Outcome adapted() {
  bool ok = true;
  double worst = 0.0;
  for (double lambda : {1.0, 1.5, 2.0, 3.0}) {
    const Fixture f = instantiate("berger_sphere", {{"lambda", lambda}});
    const AdaptedSetup setup{default_section(f), BundleConnection{f.levi_civita, f.a0, {}},
                             BundleConnection{f.canonical, f.a, {}}, f.g, f.chart, fixture_rep(f),
                             frame_inner(3, f.inner)};
    const VerificationReport r = adapted_report(setup, points_of(f), 1e-5);
    ok = ok && r.pass;
    for (const auto& [k, v] : r.residuals) worst = std::max(worst, v);
  }
  return {ok && worst < 1e-5, "worst residual " + sci(worst)};
}

Outcome triples() {
  const Fixture f = instantiate("hopf_monopole");
  const VerificationReport ls = check_ls_triple(triple_of(f), points_of(f), {1e-5});
  const VerificationReport lh = check_lh_triple(triple_of(f), f.canonical, f.a, points_of(f), {1e-5});
  const Fixture b = instantiate("hopf_monopole", {{"bump", 0.5}});
  const VerificationReport bumped = check_lh_triple(triple_of(b), b.canonical, b.a, points_of(b), {1e-5});
  double worst = 0.0;
  for (const auto* r : {&ls, &lh})
    for (const auto& [k, v] : r->residuals) worst = std::max(worst, v);
  const double fourth = bumped.residuals.at("nabla_alpha");
  return {ls.pass && lh.pass && worst < 1e-5 && !bumped.pass && fourth > 1e-2,
          "homogeneous worst " + sci(worst) + ", bumped fourth residual " + sci(fourth)};
}

Outcome total_space() {
  const Fixture f = instantiate("hopf_monopole");
  const TotalSpaceModel m{f.chart, f.g, f.canonical, f.algebra, f.inner, f.a};
  TotalSpaceOptions opt;
  opt.tol = 1e-5;
  opt.torsion_tol = 1e-6;
  const VerificationReport bar = bar_parallelism_check(m, points_of(f), opt);
  const VerificationReport dist = distribution_parallel_check(m, f.a0, points_of(f), opt);
  const Fixture b = instantiate("hopf_monopole", {{"bump", 0.5}});
  const TotalSpaceModel mb{b.chart, b.g, b.canonical, b.algebra, b.inner, b.a};
  const double bumped = distribution_parallel_check(mb, b.a0, points_of(b), opt).residuals.at("a0_vertical_defect");
  const double gap = bar.residuals.at("torsion_case_vs_direct");
  const double dt = bar.residuals.at("nabla_bar_T"), dr = bar.residuals.at("nabla_bar_R");
  const double d = dist.residuals.at("a0_vertical_defect");
  return {bar.pass && dist.pass && gap < 1e-6 && dt < 1e-5 && dr < 1e-5 && d < 1e-5 && bumped > 1e-2,
          "torsion gap " + sci(gap) + ", dT " + sci(dt) + ", dR " + sci(dr) + ", distribution " + sci(d) +
              " / bumped " + sci(bumped)};
}

Outcome determinism(const std::string& cli) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "ambrose_acceptance";
  fs::create_directories(dir);
  const std::vector<std::string> configs = {
      R"({"scenario": "singer", "fixture": "su2_monopole", "points": 8})",
      R"({"scenario": "total-space", "fixture": "hopf_monopole", "points": 8, "seed": 5})",
      R"({"scenario": "adapt", "fixture": "berger_sphere", "params": {"lambda": 2}, "points": 8})",
      R"({"scenario": "check-lh-triple", "fixture": "hopf_monopole", "params": {"bump": 0.5}})",
  };
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  bool ok = !cli.empty();
  int i = 0;
  for (const std::string& c : configs) {
    const fs::path cfg = dir / ("c" + std::to_string(i) + ".json");
    std::ofstream(cfg) << c;
    std::string first;
    for (int run = 0; run < 2; ++run) {
      const fs::path out = dir / ("r" + std::to_string(i) + "_" + std::to_string(run) + ".json");
      const std::string cmd = cli + " --config " + cfg.string() + " --out " + out.string() + " 2>/dev/null";
      const int status = std::system(cmd.c_str());
      ok = ok && status != -1 && WIFEXITED(status) && WEXITSTATUS(status) <= 1;
      const std::string text = slurp(out);
      ok = ok && !text.empty();
      if (run == 0) first = text;
      else ok = ok && text == first;
    }
    ++i;
  }
  fs::remove_all(dir);
  return {ok, std::to_string(configs.size()) + " configs run twice"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"calculus layer on flat and constant-curvature fixtures", calculus_layer},
      {"second-order central differences before extrapolation", fd_order},
      {"identity suite on S^2 and SU(2) fixtures", identity_suite},
      {"locally symmetric and Ambrose-Singer instances", cartan_instances},
      {"difference and torsion parallelism systems agree", agreement},
      {"stabilizer chains and Singer invariant", singer_machinery},
      {"orbit matching across points and geometries", orbit},
      {"adapted connection on Berger spheres", adapted},
      {"triple criteria on the Hopf monopole", triples},
      {"total-space connection of the Hopf bundle", total_space},
      {"byte-identical CLI reports", [&] { return determinism(cli); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << "  (" << o.detail
              << ")" << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
