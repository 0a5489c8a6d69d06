#include "helpers.hpp"

#include <cmath>

#include "ambrose/fixtures.hpp"
#include "ambrose/total_space.hpp"

using namespace ambrose;

namespace {

TotalSpaceModel model_of(const Fixture& f) { return {f.chart, f.g, f.canonical, f.algebra, f.inner, f.a}; }

std::vector<Vec> interior(const Fixture& f) { return sample_points(f.chart.lo(), f.chart.hi(), f.chart.margin(), 3, 9); }

}  // namespace

TEST_CASE("left-trivialized derivative of exp on su(2)") {
  // 40-digit finite differences of matrix exponentials of the adjoint representation
  Mat expected(3, 3);
  expected << 0.96758765185469343, 0.056524760956287966, 0.21028656634849564,  //
      -0.13431439650502373, 0.93517530370938686, 0.27329379693384492,        //
      -0.17139174857412776, -0.29922367545009017, 0.91572789482220292;
  const Mat d = dexp_left(lie_algebra("su(2)"), point({0.3, -0.2, 0.1}));
  CHECK((d - expected).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((dexp_left(lie_algebra("su(2)"), Vec::Zero(3)) - Mat::Identity(3, 3)).norm() < 1e-15);
  const Mat ad = ad_inverse_exp(lie_algebra("u(1)"), point({0.7}));
  CHECK(ad(0, 0) == 1.0);
}

TEST_CASE("connection metric of the Hopf bundle") {
  const Fixture f = instantiate("hopf_monopole");
  Mat expected(3, 3);
  expected << 1, 0, 0, 0, 0.8688898582579662, 0.27320193928721137, 0, 0.27320193928721137, 1;
  const Mat g = connection_metric(model_of(f), point({1.1, 0.4, 0.2}));
  CHECK((g - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("splitting and coordinate components are inverse") {
  const Fixture f = instantiate("su2_monopole");
  const TotalSpaceModel m = model_of(f);
  const Vec y = point({1.3, 0.4, 0.2, -0.1, 0.25});
  const FrameVector u{point({0.5, -1.0}), point({0.3, 0.8, -0.6})};
  const Vec c = coordinate_vector(m, y, u);
  const FrameVector back = split_vector(m, y, c);
  CHECK((back.h - u.h).norm() < 1e-13);
  CHECK((back.v - u.v).norm() < 1e-13);
  // horizontal vectors are g_A-orthogonal to vertical ones
  const Vec hv = coordinate_vector(m, y, {point({1.0, 0.5}), Vec::Zero(3)});
  const Vec vv = coordinate_vector(m, y, {Vec::Zero(2), point({0.0, 1.0, 0.0})});
  CHECK(std::abs(hv.dot(connection_metric(m, y) * vv)) < 1e-13);
  CHECK(frame_vector_norm(m, y, {Vec::Zero(2), point({0.0, 1.0, 0.0})}) == doctest::Approx(std::sqrt(8.0)));
}

TEST_CASE("horizontal torsion of the Hopf bundle is the curvature") {
  const Fixture f = instantiate("hopf_monopole");
  const TotalSpaceModel m = model_of(f);
  const auto e = [](int i) { return [i](const Vec&) { return Vec(Vec::Unit(2, i)); }; };
  const GeneratedField u = horizontal_lift(e(0)), v = horizontal_lift(e(1));
  for (const Vec& y : lift_points(m, interior(f), 4)) {
    const FrameVector table = bar_torsion(m, evaluate(u, m, y), evaluate(v, m, y), y);
    const FrameVector direct = direct_torsion(m, u, v, y);
    CHECK(table.h.norm() < 1e-10);
    CHECK(std::abs(std::abs(table.v[0]) - 0.5 * std::sin(y[0])) < 1e-10);
    CHECK((table.v - direct.v).norm() < 1e-6);
    CHECK((table.h - direct.h).norm() < 1e-6);
  }
}

TEST_CASE("generated fields: brackets of fundamental fields") {
  const Fixture f = instantiate("su2_canonical");
  const TotalSpaceModel m = model_of(f);
  const Vec y = point({0.2, 0.8, -0.1, 0.1, 0.2, -0.3});
  const FrameVector b = field_bracket(m, fundamental_field(Vec::Unit(3, 0)), fundamental_field(Vec::Unit(3, 1)), y);
  CHECK(b.h.norm() < 1e-8);
  CHECK((b.v - 2.0 * Vec::Unit(3, 2)).norm() < 1e-7);
}

TEST_CASE("total-space checks") {
  const Fixture flat = instantiate("trivial_bundle_flat", {{"algebra", 2}});
  const VerificationReport r = bar_parallelism_check(model_of(flat), interior(flat), {}, 1);
  CHECK(r.pass);
  for (const auto& [name, value] : r.residuals) {
    CAPTURE(name);
    CHECK(value < 1e-10);
  }
  const Fixture hopf = instantiate("hopf_monopole");
  CHECK(bar_parallelism_check(model_of(hopf), interior(hopf)).pass);
  CHECK(distribution_parallel_check(model_of(hopf), hopf.a0, interior(hopf)).pass);

  const Fixture bumped = instantiate("hopf_monopole", {{"bump", 0.5}});
  const VerificationReport d = distribution_parallel_check(model_of(bumped), bumped.a0, interior(bumped));
  CHECK_FALSE(d.pass);
  CHECK(d.residuals.at("a0_vertical_defect") > 0.1);
  CHECK(d.residuals.at("lift_shift") < 1e-9);
}

TEST_CASE("lift points stay inside the fiber box") {
  const Fixture f = instantiate("su2_monopole");
  const TotalSpaceModel m = model_of(f);
  const std::vector<Vec> ys = lift_points(m, interior(f), 8);
  CHECK(ys == lift_points(m, interior(f), 8));
  for (const Vec& y : ys) {
    CHECK(y.size() == 5);
    CHECK(fiber_part(m, y).cwiseAbs().maxCoeff() <= 0.5 * m.fiber_radius);
    CHECK(total_chart(m).inside(y));
  }
}
