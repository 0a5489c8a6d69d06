#include "helpers.hpp"

#include "ambrose/adapted.hpp"
#include "ambrose/fixtures.hpp"

using namespace ambrose;

namespace {

AdaptedSetup setup_of(const Fixture& f, const LinearConnection& prime) {
  return AdaptedSetup{default_section(f),
                      BundleConnection{f.levi_civita, f.a0, {}},
                      BundleConnection{prime, f.a, {}},
                      f.g,
                      f.chart,
                      fixture_rep(f),
                      frame_inner(f.dim(), f.inner)};
}

std::vector<Vec> interior(const Fixture& f) { return sample_points(f.chart.lo(), f.chart.hi(), f.chart.margin(), 4, 5); }

}  // namespace

TEST_CASE("frame inner product is block diagonal") {
  const Mat m = frame_inner(3, 5.0 * Mat::Identity(1, 1));
  CHECK(m.rows() == 4);
  CHECK((m.topLeftCorner(3, 3) - 2.0 * Mat::Identity(3, 3)).norm() < 1e-13);
  CHECK(m(3, 3) == 5.0);
  CHECK(m.topRightCorner(3, 1).norm() == 0.0);
}

TEST_CASE("Berger sphere: the projected difference keeps the tower parallel") {
  const Fixture f = instantiate("berger_sphere");
  const AdaptedSetup s = setup_of(f, f.canonical);
  const AdaptedPoint p = adapted_decomposition(s, point({0.1, 0.9, 0.2}));
  CHECK(p.chain.dims == std::vector<int>{1, 1});
  CHECK(p.endo.max_abs() > 0.1);
  const VerificationReport r = adapted_report(s, interior(f));
  CHECK(r.pass);
  CHECK(r.residuals.at("tower_parallel_0") < 1e-6);
  CHECK(r.residuals.at("difference_parallel") < 1e-6);
}

TEST_CASE("a full stabilizer projects the difference away") {
  const Fixture f = instantiate("round_sphere3");
  const AdaptedSetup s = setup_of(f, zero_connection(3));
  const Vec x = point({-0.2, 0.7, 0.4});
  const AdaptedPoint p = adapted_decomposition(s, x);
  CHECK(p.chain.dims.front() == 3);
  CHECK(p.endo.max_abs() < 1e-8);
  const BundleConnection b = adapted_connection(s);
  CHECK((b.linear(x) - f.levi_civita(x)).max_abs() < 1e-8);
  CHECK(adapted_report(s, interior(f)).pass);
}

TEST_CASE("adapted connection on the monopoles") {
  for (const char* name : {"hopf_monopole", "su2_monopole"}) {
    CAPTURE(name);
    const Fixture f = instantiate(name);
    const VerificationReport r = adapted_report(setup_of(f, f.canonical), interior(f));
    CHECK(r.pass);
    CHECK(r.flags.empty());
  }
}
