#include "helpers.hpp"

#include "ambrose/fixtures.hpp"
#include "ambrose/homogeneity.hpp"
#include "ambrose/parallel.hpp"
#include "ambrose/runner.hpp"

using namespace ambrose;

TEST_CASE("map_indices gives the same values on both paths") {
  const auto f = [](int i) { return std::sin(0.1 * i) * i; };
  CHECK(map_indices<double>(37, f, Exec::Serial) == map_indices<double>(37, f, Exec::Parallel));
  CHECK(map_indices<double>(0, f).empty());
}

TEST_CASE("the lowest failing index is rethrown on both paths") {
  const auto f = [](int i) -> int {
    if (i == 5) throw GeometryError(ErrorCode::OutOfDomain, "five");
    if (i == 9) throw GeometryError(ErrorCode::DegenerateMetric, "nine");
    return i;
  };
  for (Exec e : {Exec::Serial, Exec::Parallel}) {
    CHECK(fails_with([&] { map_indices<int>(12, f, e); }, ErrorCode::OutOfDomain));
  }
}

TEST_CASE("point-parallel kernels match the serial reference exactly") {
  set_thread_cap(2);
  const Fixture f = instantiate("su2_monopole");
  const std::vector<Vec> pts = sample_points(f.chart.lo(), f.chart.hi(), f.chart.margin(), 6, 1);
  const TripleSpec spec{f.chart, f.g, f.levi_civita, f.algebra, f.inner, f.a0};
  CHECK(to_json(check_lh_triple(spec, f.canonical, f.a, pts, {1e-5, Exec::Serial})) ==
        to_json(check_lh_triple(spec, f.canonical, f.a, pts, {1e-5, Exec::Parallel})));
  CHECK(to_json(identity_report(f, pts, 1e-6, Exec::Serial)) == to_json(identity_report(f, pts, 1e-6, Exec::Parallel)));
  CHECK(to_json(singer_report(f, pts, 4, 1e-5, Exec::Serial)) == to_json(singer_report(f, pts, 4, 1e-5, Exec::Parallel)));
}
