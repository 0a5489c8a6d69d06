#include "ambrose/fixtures.hpp"

#include <cmath>

#include <Eigen/Geometry>

#include "ambrose/homogeneity.hpp"

namespace ambrose {

namespace {

using Quat = Eigen::Quaterniond;

double param(const Params& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

void check_keys(const Params& p, const std::set<std::string>& allowed, const std::string& fixture) {
  for (const auto& [key, value] : p) {
    if (!allowed.count(key)) throw GeometryError(ErrorCode::BadParameters, fixture + " has no parameter " + key);
    if (!std::isfinite(value)) throw GeometryError(ErrorCode::BadParameters, fixture + "." + key + " is not finite");
  }
}

Vec vec2(double a, double b) { return (Vec(2) << a, b).finished(); }
Vec vec3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }

DenseTensor gamma_tensor(int n) { return DenseTensor({Axis::Contra, Axis::Co, Axis::Co}, {n, n, n}); }

LinearConnection constant_connection(const DenseTensor& w) {
  return LinearConnection{[w](const Vec&) { return w; }, false};
}

LinearConnection flat_connection(int n) {
  return LinearConnection{[n](const Vec&) { return gamma_tensor(n); }, true};
}

DenseTensor epsilon_structure(double scale) {
  DenseTensor c = gamma_tensor(3);
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3, d = (a + 2) % 3;
    c.at({d, a, b}) = scale;
    c.at({d, b, a}) = -scale;
  }
  return c;
}

/// Round S^2 in (theta, phi): Gamma^theta_{phi phi} = -sin cos, Gamma^phi_{theta phi} = cot.
LinearConnection sphere2_levi_civita() {
  return LinearConnection{[](const Vec& x) {
                            DenseTensor w = gamma_tensor(2);
                            const double s = std::sin(x[0]), c = std::cos(x[0]);
                            w.at({0, 1, 1}) = -s * c;
                            w.at({1, 0, 1}) = c / s;
                            w.at({1, 1, 0}) = c / s;
                            return w;
                          },
                          true};
}

Chart sphere2_chart(double edge, double margin) {
  return Chart(vec2(edge, -2.0), vec2(M_PI - edge, 2.0), margin);
}

MetricField sphere2_metric(double radius) {
  return MetricField{[radius](const Vec& x) {
    Mat g = Mat::Zero(2, 2);
    g(0, 0) = radius * radius;
    g(1, 1) = radius * radius * std::sin(x[0]) * std::sin(x[0]);
    return g;
  }};
}

void set_bundle(Fixture& f, const LieAlgebra& alg) {
  f.algebra = alg;
  f.inner = default_inner(alg);
  f.provides.insert({"connection-form", "triple"});
  if (alg.dim() > 0) f.provides.insert("total-space");
}

void set_no_bundle(Fixture& f) {
  f.algebra = LieAlgebra();
  f.inner = Mat(0, 0);
  f.a = zero_form(f.algebra, f.dim());
  f.a0 = f.a;
}

Fixture euclidean(const Params& p) {
  check_keys(p, {"n"}, "euclidean");
  const double nd = param(p, "n", 2.0);
  if (nd != std::floor(nd) || nd < 1.0 || nd > 8.0) {
    throw GeometryError(ErrorCode::BadParameters, "euclidean.n must be an integer in [1, 8]");
  }
  const int n = static_cast<int>(nd);
  Fixture f("euclidean", Chart(Vec::Constant(n, -1.0), Vec::Constant(n, 1.0), 0.1));
  f.params = {{"n", nd}};
  f.provides = {"metric", "canonical-connection"};
  f.g = MetricField{[n](const Vec&) { return Mat(Mat::Identity(n, n)); }};
  f.levi_civita = flat_connection(n);
  f.canonical = f.levi_civita;
  set_no_bundle(f);
  return f;
}

Fixture flat_torus(const Params& p) {
  check_keys(p, {}, "flat_torus_chart");
  Fixture f("flat_torus_chart", Chart(vec2(0.0, 0.0), vec2(2.0 * M_PI, 2.0 * M_PI), 0.2));
  f.provides = {"metric", "canonical-connection"};
  f.g = MetricField{[](const Vec&) { return Mat(Mat::Identity(2, 2)); }};
  f.levi_civita = flat_connection(2);
  f.canonical = f.levi_civita;
  set_no_bundle(f);
  return f;
}

Fixture round_sphere2(const Params& p) {
  check_keys(p, {"radius"}, "round_sphere2");
  const double r = param(p, "radius", 1.0);
  if (!(r > 0.0)) throw GeometryError(ErrorCode::BadParameters, "round_sphere2.radius must be positive");
  Fixture f("round_sphere2", sphere2_chart(0.3, 0.2));
  f.params = {{"radius", r}};
  f.provides = {"metric", "canonical-connection"};
  f.g = sphere2_metric(r);
  f.levi_civita = sphere2_levi_civita();
  f.canonical = f.levi_civita;
  set_no_bundle(f);
  return f;
}

Fixture hyperbolic_plane(const Params& p) {
  check_keys(p, {}, "hyperbolic_plane");
  Fixture f("hyperbolic_plane", Chart(vec2(-1.0, 0.5), vec2(1.0, 2.5), 0.1));
  f.provides = {"metric", "canonical-connection"};
  f.g = MetricField{[](const Vec& x) { return Mat(Mat::Identity(2, 2) / (x[1] * x[1])); }};
  f.levi_civita = LinearConnection{[](const Vec& x) {
                                     DenseTensor w = gamma_tensor(2);
                                     const double iy = 1.0 / x[1];
                                     w.at({0, 0, 1}) = -iy;
                                     w.at({0, 1, 0}) = -iy;
                                     w.at({1, 0, 0}) = iy;
                                     w.at({1, 1, 1}) = -iy;
                                     return w;
                                   },
                                   true};
  f.canonical = f.levi_civita;
  set_no_bundle(f);
  return f;
}

Chart su2_chart() { return Chart(vec3(-1.0, 0.2, -1.0), vec3(1.0, 1.37, 1.0), 0.1, su2_euler_frame()); }

Fixture su2_with_metric(const std::string& name, const Mat& frame_g) {
  Fixture f(name, su2_chart());
  f.provides = {"metric", "canonical-connection"};
  f.g = MetricField{[frame_g](const Vec& x) {
    const Mat w = su2_euler_coframe(x);
    return Mat(w.transpose() * frame_g * w);
  }};
  f.levi_civita = constant_connection(left_invariant_levi_civita(frame_g, epsilon_structure(2.0)));
  f.canonical = constant_connection(gamma_tensor(3));
  set_no_bundle(f);
  return f;
}

Fixture round_sphere3(const Params& p) {
  check_keys(p, {}, "round_sphere3");
  Fixture f = su2_with_metric("round_sphere3", Mat::Identity(3, 3));
  f.canonical = f.levi_civita;
  return f;
}

Fixture berger_sphere(const Params& p) {
  check_keys(p, {"lambda"}, "berger_sphere");
  const double l = param(p, "lambda", 2.0);
  if (!(l > 0.0)) throw GeometryError(ErrorCode::BadParameters, "berger_sphere.lambda must be positive");
  Mat g = Mat::Identity(3, 3);
  g(0, 0) = l * l;
  Fixture f = su2_with_metric("berger_sphere", g);
  f.params = {{"lambda", l}};
  return f;
}

Fixture su2_canonical(const Params& p) {
  check_keys(p, {}, "su2_canonical");
  Fixture f = su2_with_metric("su2_canonical", Mat::Identity(3, 3));
  set_bundle(f, lie_algebra("su(2)"));
  f.a = zero_form(f.algebra, 3);
  f.a0 = ConnectionForm{f.algebra, [](const Vec&) {
                          DenseTensor t({Axis::Co, Axis::Lie}, {3, 3});
                          for (int a = 0; a < 3; ++a) t.at({a, a}) = -1.0;
                          return t;
                        }};
  return f;
}

Fixture hopf_monopole(const Params& p) {
  check_keys(p, {"charge", "bump"}, "hopf_monopole");
  const double q = param(p, "charge", 1.0);
  const double bump = param(p, "bump", 0.0);
  Fixture f("hopf_monopole", sphere2_chart(0.2, 0.3));
  f.params = {{"charge", q}, {"bump", bump}};
  f.provides = {"metric", "canonical-connection"};
  f.g = sphere2_metric(1.0);
  f.levi_civita = sphere2_levi_civita();
  f.canonical = f.levi_civita;
  set_bundle(f, lie_algebra("u(1)"));
  f.a = ConnectionForm{f.algebra, [q](const Vec& x) {
                         DenseTensor t({Axis::Co, Axis::Lie}, {2, 1});
                         t.at({1, 0}) = 0.5 * q * (1.0 - std::cos(x[0]));
                         return t;
                       }};
  const ConnectionForm bump_form{f.algebra, [bump](const Vec& x) {
                                   DenseTensor t({Axis::Co, Axis::Lie}, {2, 1});
                                   const double d = x[0] - M_PI / 2.0;
                                   const double v = bump * std::exp(-d * d - x[1] * x[1]);
                                   t.at({0, 0}) = v;
                                   t.at({1, 0}) = v;
                                   return t;
                                 }};
  f.a0 = form_sum(f.a, bump_form, -1.0);
  f.alpha_parallel = bump == 0.0;
  f.homogeneous = bump == 0.0;
  return f;
}

Fixture su2_monopole(const Params& p) {
  check_keys(p, {}, "su2_monopole");
  Fixture f("su2_monopole", sphere2_chart(0.3, 0.2));
  f.provides = {"metric", "canonical-connection"};
  f.g = sphere2_metric(1.0);
  f.levi_civita = sphere2_levi_civita();
  f.canonical = f.levi_civita;
  set_bundle(f, lie_algebra("su(2)"));
  f.a = ConnectionForm{f.algebra, [](const Vec& x) {
                         DenseTensor t({Axis::Co, Axis::Lie}, {2, 3});
                         t.at({1, 2}) = 0.5 * std::cos(x[0]);
                         return t;
                       }};
  f.a0 = ConnectionForm{f.algebra, [](const Vec& x) {
                          DenseTensor t({Axis::Co, Axis::Lie}, {2, 3});
                          t.at({0, 1}) = 0.5;
                          t.at({1, 2}) = 0.5 * std::cos(x[0]);
                          t.at({1, 0}) = -0.5 * std::sin(x[0]);
                          return t;
                        }};
  return f;
}

Fixture trivial_bundle_flat(const Params& p) {
  check_keys(p, {"algebra"}, "trivial_bundle_flat");
  const double code = param(p, "algebra", 1.0);
  std::string name;
  if (code == 1.0) name = "u(1)";
  else if (code == 2.0) name = "su(2)";
  else if (code == 3.0) name = "so(3)";
  else throw GeometryError(ErrorCode::BadParameters, "trivial_bundle_flat.algebra must be 1, 2 or 3");
  Fixture f = euclidean({});
  f.name = "trivial_bundle_flat";
  f.params = {{"algebra", code}};
  set_bundle(f, lie_algebra(name));
  f.a = zero_form(f.algebra, 2);
  f.a0 = f.a;
  return f;
}

}  // namespace

DenseTensor left_invariant_levi_civita(const Mat& g, const DenseTensor& c) {
  const int n = static_cast<int>(g.rows());
  const Mat gi = g.inverse();
  DenseTensor k = gamma_tensor(n);
  for (int e = 0; e < n; ++e)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double s = 0.0;
        for (int d = 0; d < n; ++d) {
          s += g(e, d) * c.at({d, a, b}) - g(a, d) * c.at({d, b, e}) + g(b, d) * c.at({d, e, a});
        }
        k.at({e, a, b}) = 0.5 * s;
      }
  DenseTensor w = gamma_tensor(n);
  for (int d = 0; d < n; ++d)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double s = 0.0;
        for (int e = 0; e < n; ++e) s += gi(d, e) * k.at({e, a, b});
        w.at({d, a, b}) = s;
      }
  return w;
}

Mat su2_euler_coframe(const Vec& x) {
  const Quat ez_phi(std::cos(x[0]), 0, 0, std::sin(x[0]));
  const Quat ey(std::cos(x[1]), 0, std::sin(x[1]), 0);
  const Quat ez_psi(std::cos(x[2]), 0, 0, std::sin(x[2]));
  const Quat k(0, 0, 0, 1), j(0, 0, 1, 0);
  const Quat q = ez_phi * ey * ez_psi;
  Mat w(3, 3);
  w.col(0) = (q.conjugate() * k * q).vec();
  w.col(1) = (ez_psi.conjugate() * j * ez_psi).vec();
  w.col(2) = k.vec();
  return w;
}

FrameField su2_euler_frame() {
  const DenseTensor c = epsilon_structure(2.0);
  return FrameField{[](const Vec& x) { return Mat(su2_euler_coframe(x).inverse()); },
                    [c](const Vec&) { return c; }, false};
}

Fixture instantiate(const std::string& name, const Params& params) {
  if (name == "euclidean") return euclidean(params);
  if (name == "flat_torus_chart") return flat_torus(params);
  if (name == "round_sphere2") return round_sphere2(params);
  if (name == "hyperbolic_plane") return hyperbolic_plane(params);
  if (name == "round_sphere3") return round_sphere3(params);
  if (name == "berger_sphere") return berger_sphere(params);
  if (name == "su2_canonical") return su2_canonical(params);
  if (name == "hopf_monopole") return hopf_monopole(params);
  if (name == "su2_monopole") return su2_monopole(params);
  if (name == "trivial_bundle_flat") return trivial_bundle_flat(params);
  throw GeometryError(ErrorCode::UnknownFixture, name);
}

std::vector<std::string> fixture_catalog() {
  return {"berger_sphere", "euclidean",     "flat_torus_chart", "hopf_monopole", "hyperbolic_plane",
          "round_sphere2", "round_sphere3", "su2_canonical",    "su2_monopole",  "trivial_bundle_flat"};
}

SectionSpec default_section(const Fixture& f) { return triple_section(f.levi_civita, f.a0, f.chart); }

TensorRep fixture_rep(const Fixture& f) { return frame_rep(f.dim(), f.algebra); }

}  // namespace ambrose
