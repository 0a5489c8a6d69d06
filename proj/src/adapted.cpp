#include "ambrose/adapted.hpp"

#include <algorithm>
#include <cmath>

namespace ambrose {

Mat frame_inner(int n, const Mat& inner_k) {
  const Mat so = default_inner(so_algebra(n));
  const Eigen::Index a = so.rows(), b = inner_k.rows();
  Mat out = Mat::Zero(a + b, a + b);
  out.topLeftCorner(a, a) = so;
  out.bottomRightCorner(b, b) = inner_k;
  return out;
}

AdaptedPoint adapted_decomposition(const AdaptedSetup& setup, const Vec& x) {
  const Chart& chart = setup.chart;
  const int n = chart.dim();
  const ChainAtPoint cp =
      adaptive_chain(setup.sigma, setup.b0, setup.g, chart, setup.rep, x, setup.max_kmax, setup.chain);
  if (!cp.chain.singer_k) throw GeometryError(ErrorCode::DepthMismatch, "stabilizer chain did not stabilize");
  const Mat& h = cp.chain.bases[*cp.chain.singer_k + 1];
  try {
    reductive_complement(setup.rep.algebra, h, setup.inner, 1e-7, 1e-7);
  } catch (const GeometryError& e) {
    throw GeometryError(ErrorCode::NotReductive, e.what());
  }
  const Mat pk = Mat::Identity(setup.inner.rows(), setup.inner.cols()) - inner_projector(h, setup.inner);

  const OrthoFrame& f = cp.tower.frame;
  const DenseTensor s = to_frame(setup.bprime.linear(x) - setup.b0.linear(x), f);
  const bool bundle = !setup.b0.form.trivial();
  const int m = setup.b0.form.algebra.dim();
  const DenseTensor al = bundle ? to_frame(setup.bprime.form(x) - setup.b0.form(x), f) : DenseTensor();
  const std::vector<Mat> so = so_generators(n);
  const int nso = static_cast<int>(so.size());

  DenseTensor sk({Axis::Contra, Axis::Co, Axis::Co}, {n, n, n});
  DenseTensor ak = bundle ? DenseTensor({Axis::Co, Axis::Lie}, {n, m}) : DenseTensor();
  for (int mu = 0; mu < n; ++mu) {
    Mat mm(n, n);
    for (int c = 0; c < n; ++c)
      for (int b = 0; b < n; ++b) mm(c, b) = s.at({c, mu, b});
    Vec beta = Vec::Zero(nso + m);
    if (nso > 0) {
      const Vec coeff = matrix_coefficients(so, mm);
      if ((combine(so, coeff) - mm).norm() > 1e-8 * std::max(1.0, mm.norm())) {
        throw GeometryError(ErrorCode::NotMetric, "connection difference is not skew in the orthonormal frame");
      }
      beta.head(nso) = coeff;
    }
    for (int i = 0; i < m; ++i) beta[nso + i] = al.at({mu, i});
    const Vec bk = pk * beta;
    if (nso > 0) {
      const Mat mk = combine(so, bk.head(nso));
      for (int c = 0; c < n; ++c)
        for (int b = 0; b < n; ++b) sk.at({c, mu, b}) = mk(c, b);
    }
    for (int i = 0; i < m; ++i) ak.at({mu, i}) = bk[nso + i];
  }
  AdaptedPoint out;
  out.chain = cp.chain;
  out.endo = from_frame(sk, f);
  if (bundle) out.lie = from_frame(ak, f);
  return out;
}

BundleConnection adapted_connection(const AdaptedSetup& setup) {
  BundleConnection b;
  b.fiber_gens = setup.b0.fiber_gens;
  b.linear = LinearConnection{[setup](const Vec& x) {
                                return setup.b0.linear(x) + adapted_decomposition(setup, x).endo;
                              },
                              false};
  b.form.algebra = setup.b0.form.algebra;
  if (!setup.b0.form.trivial()) {
    b.form.eval = [setup](const Vec& x) { return setup.b0.form(x) + adapted_decomposition(setup, x).lie; };
  }
  return b;
}

VerificationReport adapted_report(const AdaptedSetup& setup, const std::vector<Vec>& points, double tol, Exec exec) {
  const Chart& chart = setup.chart;
  const int n = chart.dim();
  const bool bundle = !setup.b0.form.trivial();
  const int m = setup.b0.form.algebra.dim();
  const std::vector<SectionSpec> levels = tower_fields(setup.sigma, setup.b0, chart, setup.max_kmax);

  struct Row {
    std::vector<int> dims;
    int singer = -1;
    bool ambiguous = false;
    std::vector<double> tower;
    double difference = 0.0;
  };
  const std::vector<Row> rows = map_indices<Row>(
      static_cast<int>(points.size()),
      [&](int i) {
        const Vec& x = points[i];
        Row row;
        const AdaptedPoint ap = adapted_decomposition(setup, x);
        row.singer = *ap.chain.singer_k;
        row.ambiguous = ap.chain.ambiguous;
        row.dims.assign(ap.chain.dims.begin(), ap.chain.dims.begin() + row.singer + 1);
        BundleConnection b = setup.b0;
        const DenseTensor lin = setup.b0.linear(x) + ap.endo;
        b.linear = LinearConnection{[lin](const Vec&) { return lin; }, false};
        if (bundle) {
          const DenseTensor form = setup.b0.form(x) + ap.lie;
          b.form.eval = [form](const Vec&) { return form; };
        }
        for (int k = 0; k <= row.singer + 1 && k <= setup.max_kmax; ++k) {
          double worst = 0.0;
          for (const TensorField& f : levels[k]) {
            worst = std::max(worst, frame_norm(assoc_covariant_derivative(b, f, chart, x), setup.g, chart, x));
          }
          row.tower.push_back(worst);
        }
        const TensorField endo = make_field({Axis::Contra, Axis::Co, Axis::Co}, {n, n, n},
                                            [&setup](const Vec& y) { return adapted_decomposition(setup, y).endo; });
        row.difference = frame_norm(covariant_derivative(b.linear, endo, chart, x), setup.g, chart, x);
        if (bundle) {
          const TensorField lie = make_field({Axis::Co, Axis::Lie}, {n, m},
                                             [&setup](const Vec& y) { return adapted_decomposition(setup, y).lie; });
          const BundleConnection adj{b.linear, b.form, {}};
          row.difference = std::hypot(
              row.difference, frame_norm(assoc_covariant_derivative(adj, lie, chart, x), setup.g, chart, x));
        }
        return row;
      },
      exec);

  VerificationReport rep;
  rep.scenario = "adapt";
  rep.points = points;
  double diff = 0.0;
  std::vector<double> tower;
  for (const Row& row : rows) {
    diff = std::max(diff, row.difference);
    if (row.tower.size() > tower.size()) tower.resize(row.tower.size(), 0.0);
    for (std::size_t k = 0; k < row.tower.size(); ++k) tower[k] = std::max(tower[k], row.tower[k]);
    if (row.singer != rows.front().singer) rep.flag("singer-not-constant");
    if (row.ambiguous) rep.flag("ambiguous-rank");
  }
  for (std::size_t k = 0; k < tower.size(); ++k) rep.set("tower_parallel_" + std::to_string(k), tower[k], tol);
  rep.set("difference_parallel", diff, tol);
  if (!rows.empty()) {
    rep.stabilizer_dims = rows.front().dims;
    rep.singer_k = rows.front().singer;
  }
  rep.finalize();
  if (rep.flags.end() != std::find(rep.flags.begin(), rep.flags.end(), "singer-not-constant")) rep.pass = false;
  return rep;
}

}  // namespace ambrose
