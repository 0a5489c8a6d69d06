#include "helpers.hpp"

#include <cmath>

#include "ambrose/calculus.hpp"
#include "ambrose/fixtures.hpp"
#include "ambrose/homogeneity.hpp"
#include "ambrose/report.hpp"

using namespace ambrose;

namespace {

double sectional_2d(const LinearConnection& conn, const Fixture& f, const Vec& x) {
  const DenseTensor r = lowered_curvature_field(conn, f.g, f.chart)(x);
  const Mat g = frame_metric(f.g, f.chart, x);
  return r.at({0, 1, 0, 1}) / (g(0, 0) * g(1, 1) - g(0, 1) * g(0, 1));
}

std::vector<Vec> interior(const Fixture& f, int count = 8) {
  return sample_points(f.chart.lo(), f.chart.hi(), f.chart.margin(), count, 7);
}

}  // namespace

TEST_CASE("flat fixtures: Christoffel symbols, curvature, torsion and nabla g vanish") {
  for (const char* name : {"euclidean", "flat_torus_chart"}) {
    const Fixture f = instantiate(name);
    const LinearConnection lc = levi_civita(f.g, f.chart);
    const TensorField gfield = metric_tensor_field(f.g, f.chart);
    for (const Vec& x : interior(f)) {
      CHECK(christoffel(f.g, f.chart, x).max_abs() < 1e-12);
      CHECK(curvature(lc, f.chart, x).max_abs() < 1e-10);
      CHECK(torsion(lc, f.chart, x).max_abs() < 1e-10);
      CHECK(covariant_derivative(lc, gfield, f.chart, x).max_abs() < 1e-10);
    }
  }
  const Fixture e3 = instantiate("euclidean", {{"n", 3}});
  CHECK(christoffel(e3.g, e3.chart, point({0.1, -0.2, 0.3})).max_abs() < 1e-12);
}

TEST_CASE("round sphere: lowered curvature and sectional curvature") {
  const Fixture f = instantiate("round_sphere2");
  const Vec eq = point({M_PI / 2, 0.3});
  const DenseTensor r = lowered_curvature_field(f.levi_civita, f.g, f.chart)(eq);
  CHECK(std::abs(r.at({0, 1, 0, 1}) - 1.0) < 1e-7);
  CHECK(std::abs(r.at({0, 1, 1, 0}) + 1.0) < 1e-7);
  // same value with Christoffel symbols obtained from the metric alone
  const LinearConnection fd = levi_civita(f.g, f.chart);
  CHECK(std::abs(lowered_curvature_field(fd, f.g, f.chart)(eq).at({0, 1, 0, 1}) - 1.0) < 1e-7);
  for (const Vec& x : interior(f)) CHECK(std::abs(sectional_2d(f.levi_civita, f, x) - 1.0) < 1e-7);

  const Fixture big = instantiate("round_sphere2", {{"radius", 2.0}});
  for (const Vec& x : interior(big)) CHECK(std::abs(sectional_2d(big.levi_civita, big, x) - 0.25) < 1e-7);
}

TEST_CASE("hyperbolic plane has sectional curvature -1") {
  const Fixture f = instantiate("hyperbolic_plane");
  const LinearConnection fd = levi_civita(f.g, f.chart);
  for (const Vec& x : interior(f)) {
    CHECK(std::abs(sectional_2d(f.levi_civita, f, x) + 1.0) < 1e-7);
    CHECK(std::abs(sectional_2d(fd, f, x) + 1.0) < 1e-7);
    CHECK((christoffel(f.g, f.chart, x) - f.levi_civita(x)).max_abs() < 1e-8);
  }
}

TEST_CASE("central differences are second order before extrapolation") {
  const Chart chart(point({-1, -1}), point({1, 1}), 0.1);
  const Vec x = point({0.3, -0.2});
  const Vec dir = point({1.0, 0.5});
  struct Case {
    TensorEval f;
    double exact;
  };
  const std::vector<Case> cases = {
      {[](const Vec& y) { return DenseTensor::scalar(std::sin(y[0]) * std::cos(y[1])); },
       std::cos(0.3) * std::cos(-0.2) - 0.5 * std::sin(0.3) * std::sin(-0.2)},
      {[](const Vec& y) { return DenseTensor::scalar(std::exp(0.5 * y[0]) * y[1] * y[1]); },
       0.5 * std::exp(0.15) * 0.04 + std::exp(0.15) * 2 * -0.2 * 0.5},
      {[](const Vec& y) { return DenseTensor::scalar(1.0 / (2.0 + y[0] + y[1])); }, -1.5 / (2.1 * 2.1)},
  };
  const double h = fd_step(chart, dir);
  for (const Case& c : cases) {
    const double e1 = std::abs(fd_central(c.f, chart, x, dir, h).data()[0] - c.exact);
    const double e2 = std::abs(fd_central(c.f, chart, x, dir, h / 2).data()[0] - c.exact);
    const double ratio = e1 / e2;
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
    CHECK(std::abs(fd_directional(c.f, chart, x, dir).data()[0] - c.exact) < 1e-10);
  }
}

TEST_CASE("stencil leaving the chart is reported") {
  const Chart chart(point({0, 0}), point({1, 1}), 0.1);
  const TensorField f = make_field({}, {}, [](const Vec& y) { return DenseTensor::scalar(y[0]); });
  CHECK(fails_with([&] { fd_partial(f, chart, point({1.0, 0.5}), 0); }, ErrorCode::OutOfDomain));
  CHECK(fails_with([&] { fd_directional(f.eval, chart, point({0.5, 0.5}), Vec::Zero(2)); }, ErrorCode::OutOfDomain));
  CHECK(fails_with([&] { Chart(point({0, 1}), point({1, 1}), 0.1); }, ErrorCode::BadParameters));
}

TEST_CASE("metricity and first Bianchi identity of Levi-Civita connections") {
  for (const char* name : {"round_sphere2", "hyperbolic_plane", "round_sphere3", "berger_sphere", "hopf_monopole"}) {
    const Fixture f = instantiate(name);
    const TensorField gfield = metric_tensor_field(f.g, f.chart);
    for (const Vec& x : interior(f, 4)) {
      CHECK(frame_norm(covariant_derivative(f.levi_civita, gfield, f.chart, x), f.g, f.chart, x) < 1e-8);
      const DenseTensor r = curvature(f.levi_civita, f.chart, x);
      const int n = f.dim();
      double worst = 0.0;
      for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k)
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              worst = std::max(worst, std::abs(r.at({l, k, i, j}) + r.at({l, i, j, k}) + r.at({l, j, k, i})));
      CHECK(worst < 1e-7);
    }
  }
}

TEST_CASE("Berger sphere curvature in Euler coordinates matches an explicit-metric computation") {
  // Coordinate Christoffel symbols of g = W^T diag(4, 1, 1) W computed at 40 digits
  // from the quaternion parametrization (tests/oracles/derive.py).
  const Fixture f = instantiate("berger_sphere", {{"lambda", 2.0}});
  const Vec x = point({0.3, 0.7, -0.4});
  const Chart coords = f.chart.coordinate_chart();
  const DenseTensor fd = curvature(levi_civita(f.g, coords), coords, x);
  CHECK(fd.at({0, 1, 0, 1}) == doctest::Approx(10.175197133807732).epsilon(1e-6));
  CHECK(fd.at({0, 2, 0, 2}) == doctest::Approx(-2.1751971338077324).epsilon(1e-6));
  CHECK(fd.at({1, 0, 1, 2}) == doctest::Approx(-0.3101565295228704).epsilon(1e-6));
  CHECK(fd.at({2, 1, 1, 2}) == doctest::Approx(-4.3503942676154647).epsilon(1e-6));
  CHECK(fd.at({1, 2, 0, 2}) == doctest::Approx(5.9101772233250613).epsilon(1e-6));

  // the left-invariant frame computation, moved to coordinates
  const Mat e = f.chart.frame_at(x);
  const DenseTensor moved = change_basis(curvature(f.levi_civita, f.chart, x), e.inverse(), e);
  CHECK((moved - fd).max_abs() < 1e-6);
}

TEST_CASE("Berger frame curvature: sectional curvatures lambda^2 and 4 - 3 lambda^2") {
  const Fixture f = instantiate("berger_sphere", {{"lambda", 2.0}});
  const Vec x = point({0.1, 0.8, 0.2});
  const DenseTensor r = lowered_curvature_field(f.levi_civita, f.g, f.chart)(x);
  const Mat g = frame_metric(f.g, f.chart, x);
  CHECK(r.at({0, 1, 0, 1}) / (g(0, 0) * g(1, 1)) == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(r.at({1, 2, 1, 2}) / (g(1, 1) * g(2, 2)) == doctest::Approx(-8.0).epsilon(1e-10));
}

TEST_CASE("connection coefficients survive frame -> coordinates -> frame") {
  const Fixture f = instantiate("berger_sphere");
  const LinearConnection w = f.levi_civita;
  for (const Vec& x : interior(f, 3)) {
    const DenseTensor gamma = frame_to_coordinate(w, f.chart, x);
    CHECK((coordinate_to_frame(gamma, f.chart, x) - w(x)).max_abs() < 1e-8);
  }
}

TEST_CASE("finite-difference frame brackets agree with the analytic structure constants") {
  const FrameField analytic = su2_euler_frame();
  const Chart with(point({-1, 0.2, -1}), point({1, 1.37, 1}), 0.1, analytic);
  const Chart without(point({-1, 0.2, -1}), point({1, 1.37, 1}), 0.1, FrameField{analytic.vectors, {}, false});
  const Vec x = point({0.2, 0.6, -0.3});
  CHECK((with.structure_at(x) - without.structure_at(x)).max_abs() < 1e-8);
  CHECK(with.structure_at(x).at({2, 0, 1}) == 2.0);
}

TEST_CASE("torsion splits over a connection difference") {
  const Fixture f = instantiate("round_sphere2");
  const TensorEval s = [](const Vec& y) {
    DenseTensor t({Axis::Contra, Axis::Co, Axis::Co}, {2, 2, 2});
    for (std::size_t i = 0; i < t.size(); ++i) t.data()[i] = std::sin(y[0] + 0.3 * i) * std::cos(y[1] - 0.1 * i);
    return t;
  };
  const LinearConnection other = connection_sum(f.levi_civita, s);
  for (const Vec& x : interior(f, 4)) {
    const DenseTensor lhs = torsion(other, f.chart, x) - torsion(f.levi_civita, f.chart, x);
    CHECK((lhs - difference_torsion(s(x))).max_abs() < 1e-8);
    CHECK((connection_difference(other, f.levi_civita)(x) - s(x)).max_abs() < 1e-14);
  }
}

TEST_CASE("covariant derivative needs a bundle connection for lie axes") {
  const Fixture f = instantiate("euclidean");
  const TensorField l = make_field({Axis::Lie}, {1}, [](const Vec&) { return DenseTensor({Axis::Lie}, {1}); });
  CHECK(fails_with([&] { covariant_derivative(f.levi_civita, l, f.chart, point({0, 0})); }, ErrorCode::AxisMismatch));
}
