#include "ambrose/homogeneity.hpp"

#include <algorithm>
#include <cmath>

namespace ambrose {

std::vector<SectionSpec> tower_fields(const SectionSpec& sigma, const BundleConnection& b0, const Chart& chart,
                                      int kmax) {
  if (kmax < 0) throw GeometryError(ErrorCode::BadParameters, "negative tower depth");
  std::vector<SectionSpec> levels{sigma};
  for (int k = 1; k <= kmax; ++k) {
    SectionSpec next;
    for (const TensorField& f : levels.back()) next.push_back(assoc_derivative_field(b0, f, chart));
    levels.push_back(std::move(next));
  }
  return levels;
}

DerivativeTower build_tower(const SectionSpec& sigma, const BundleConnection& b0, const OrthoFrame& frame,
                            const Chart& chart, int kmax) {
  DerivativeTower t;
  t.point = frame.point;
  t.kmax = kmax;
  t.frame = frame;
  for (const SectionSpec& level : tower_fields(sigma, b0, chart, kmax)) {
    std::vector<DenseTensor> entry;
    for (const TensorField& f : level) entry.push_back(to_frame(f(frame.point), frame));
    t.entries.push_back(std::move(entry));
  }
  return t;
}

DerivativeTower build_tower(const SectionSpec& sigma, const BundleConnection& b0, const MetricField& g,
                            const Chart& chart, const Vec& x, int kmax) {
  return build_tower(sigma, b0, ortho_frame(g, chart, x), chart, kmax);
}

namespace {

double tower_scale(const DerivativeTower& tower) {
  double s = 0.0;
  for (const auto& entry : tower.entries)
    for (const DenseTensor& t : entry) s = std::max(s, t.norm());
  return s;
}

}  // namespace

StabilizerChain stabilizer_chain(const DerivativeTower& tower, const TensorRep& rep, const ChainOptions& opt) {
  StabilizerChain chain;
  const double floor = opt.abs_floor * std::max(1.0, tower_scale(tower));
  std::vector<DenseTensor> stacked;
  for (std::size_t k = 0; k < tower.entries.size(); ++k) {
    stacked.insert(stacked.end(), tower.entries[k].begin(), tower.entries[k].end());
    const Nullspace ns = nullspace_svd(stacked_action_matrix(stacked, rep), opt.rel_tol, floor);
    chain.ambiguous = chain.ambiguous || ns.ambiguous;
    if (k > 0) {
      const Vec ang = containment_angles(chain.bases.back(), ns.basis);
      chain.nesting_angles.push_back(ang.size() ? ang.maxCoeff() : 0.0);
    }
    chain.bases.push_back(ns.basis);
    chain.dims.push_back(static_cast<int>(ns.basis.cols()));
  }
  for (std::size_t k = 0; k + 1 < chain.dims.size(); ++k) {
    if (chain.dims[k + 1] == chain.dims[k] && chain.nesting_angles[k] < opt.angle_tol) {
      chain.singer_k = static_cast<int>(k);
      break;
    }
  }
  chain.truncated = !chain.singer_k.has_value();
  return chain;
}

ChainAtPoint adaptive_chain(const SectionSpec& sigma, const BundleConnection& b0, const MetricField& g,
                            const Chart& chart, const TensorRep& rep, const Vec& x, int max_kmax,
                            const ChainOptions& opt) {
  const std::vector<SectionSpec> levels = tower_fields(sigma, b0, chart, max_kmax);
  ChainAtPoint out;
  out.tower.point = x;
  out.tower.frame = ortho_frame(g, chart, x);
  for (int k = 0; k <= max_kmax; ++k) {
    std::vector<DenseTensor> entry;
    for (const TensorField& f : levels[k]) entry.push_back(to_frame(f(x), out.tower.frame));
    out.tower.entries.push_back(std::move(entry));
    out.tower.kmax = k;
    if (k == 0) continue;
    out.chain = stabilizer_chain(out.tower, rep, opt);
    if (out.chain.singer_k) break;
  }
  if (max_kmax == 0) out.chain = stabilizer_chain(out.tower, rep, opt);
  return out;
}

double frame_norm(const DenseTensor& t, const MetricField& g, const Chart& chart, const Vec& x) {
  return to_frame(t, ortho_frame(g, chart, x)).norm();
}

TensorField metric_tensor_field(const MetricField& g, const Chart& chart) {
  const int n = chart.dim();
  return make_field({Axis::Co, Axis::Co}, {n, n}, [g, chart](const Vec& x) {
    const Mat gm = frame_metric(g, chart, x);
    std::vector<double> data(gm.data(), gm.data() + gm.size());
    return DenseTensor({Axis::Co, Axis::Co}, {static_cast<int>(gm.rows()), static_cast<int>(gm.cols())}, data);
  });
}

namespace {

TensorField difference_form_field(const ConnectionForm& a, const ConnectionForm& a0, int n) {
  return make_field({Axis::Co, Axis::Lie}, {n, a.algebra.dim()}, [a, a0](const Vec& x) { return a(x) - a0(x); });
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::isfinite(x) ? x : INFINITY);
  return m;
}

}  // namespace

VerificationReport check_lh_triple(const TripleSpec& spec, const LinearConnection& conn, const ConnectionForm& a,
                                   const std::vector<Vec>& points, const TripleOptions& opt) {
  const Chart& chart = spec.chart;
  const int n = chart.dim();
  const BundleConnection b{conn, a, {}};
  const TensorField r = curvature_field(conn, chart);
  const TensorField t = torsion_field(conn, chart);
  const bool bundle = !a.trivial();
  struct Row {
    double dr = 0, dt = 0, df = 0, da = 0;
  };
  const std::vector<Row> rows = map_indices<Row>(
      static_cast<int>(points.size()),
      [&](int i) {
        const Vec& x = points[i];
        Row row;
        row.dr = frame_norm(covariant_derivative(conn, r, chart, x), spec.g, chart, x);
        row.dt = frame_norm(covariant_derivative(conn, t, chart, x), spec.g, chart, x);
        if (bundle) {
          row.df = frame_norm(assoc_covariant_derivative(b, curvature_form_field(a, chart), chart, x), spec.g, chart, x);
          row.da = frame_norm(assoc_covariant_derivative(b, difference_form_field(a, spec.a0, n), chart, x), spec.g,
                              chart, x);
        }
        return row;
      },
      opt.exec);
  VerificationReport rep;
  rep.scenario = "check-lh-triple";
  rep.points = points;
  std::vector<double> dr, dt, df, da;
  for (const Row& row : rows) {
    dr.push_back(row.dr);
    dt.push_back(row.dt);
    df.push_back(row.df);
    da.push_back(row.da);
  }
  rep.set("nabla_R", max_of(dr), opt.tol);
  rep.set("nabla_T", max_of(dt), opt.tol);
  rep.set("nabla_F", max_of(df), opt.tol);
  rep.set("nabla_alpha", max_of(da), opt.tol);
  if (!bundle) rep.flag("trivial-structure-algebra");
  rep.finalize();
  return rep;
}

VerificationReport check_ls_triple(const TripleSpec& spec, const std::vector<Vec>& points, const TripleOptions& opt) {
  const Chart& chart = spec.chart;
  const BundleConnection b0{spec.levi_civita, spec.a0, {}};
  const TensorField r = curvature_field(spec.levi_civita, chart);
  const bool bundle = !spec.a0.trivial();
  struct Row {
    double dr = 0, df = 0;
  };
  const std::vector<Row> rows = map_indices<Row>(
      static_cast<int>(points.size()),
      [&](int i) {
        const Vec& x = points[i];
        Row row;
        row.dr = frame_norm(covariant_derivative(spec.levi_civita, r, chart, x), spec.g, chart, x);
        if (bundle) {
          row.df = frame_norm(assoc_covariant_derivative(b0, curvature_form_field(spec.a0, chart), chart, x), spec.g,
                              chart, x);
        }
        return row;
      },
      opt.exec);
  VerificationReport rep;
  rep.scenario = "check-ls-triple";
  rep.points = points;
  std::vector<double> dr, df;
  for (const Row& row : rows) {
    dr.push_back(row.dr);
    df.push_back(row.df);
  }
  rep.set("nabla_Rg", max_of(dr), opt.tol);
  rep.set("nabla_F0", max_of(df), opt.tol);
  if (!bundle) rep.flag("trivial-structure-algebra");
  rep.finalize();
  return rep;
}

VerificationReport equivalence_check_c_c0(const LinearConnection& conn, const MetricField& g,
                                          const LinearConnection& levi_civita, const Chart& chart,
                                          const std::vector<Vec>& points, const TripleOptions& opt,
                                          double metric_tol) {
  const int n = chart.dim();
  const TensorField gt = metric_tensor_field(g, chart);
  const TensorField rg = curvature_field(levi_civita, chart);
  const TensorField s = make_field({Axis::Contra, Axis::Co, Axis::Co}, {n, n, n},
                                   [conn, levi_civita](const Vec& x) { return conn(x) - levi_civita(x); });
  const TensorField r = curvature_field(conn, chart);
  const TensorField t = torsion_field(conn, chart);
  struct Row {
    double dg = 0, drg = 0, ds = 0, dr = 0, dt = 0;
  };
  const std::vector<Row> rows = map_indices<Row>(
      static_cast<int>(points.size()),
      [&](int i) {
        const Vec& x = points[i];
        Row row;
        row.dg = frame_norm(covariant_derivative(conn, gt, chart, x), g, chart, x);
        row.drg = frame_norm(covariant_derivative(conn, rg, chart, x), g, chart, x);
        row.ds = frame_norm(covariant_derivative(conn, s, chart, x), g, chart, x);
        row.dr = frame_norm(covariant_derivative(conn, r, chart, x), g, chart, x);
        row.dt = frame_norm(covariant_derivative(conn, t, chart, x), g, chart, x);
        return row;
      },
      opt.exec);
  std::vector<double> dg, drg, ds, dr, dt;
  for (const Row& row : rows) {
    dg.push_back(row.dg);
    drg.push_back(row.drg);
    ds.push_back(row.ds);
    dr.push_back(row.dr);
    dt.push_back(row.dt);
  }
  if (max_of(dg) > metric_tol) throw GeometryError(ErrorCode::NotMetric, "connection does not preserve the metric");
  VerificationReport rep;
  rep.scenario = "equivalence-c-c0";
  rep.points = points;
  rep.residuals["nabla_g"] = max_of(dg);
  rep.residuals["nabla_Rg"] = max_of(drg);
  rep.residuals["nabla_S"] = max_of(ds);
  rep.residuals["nabla_R"] = max_of(dr);
  rep.residuals["nabla_T"] = max_of(dt);
  rep.tolerances["nabla_g"] = metric_tol;
  rep.tolerances["system"] = opt.tol;
  const bool difference_system = max_of(drg) < opt.tol && max_of(ds) < opt.tol;
  const bool torsion_system = max_of(dr) < opt.tol && max_of(dt) < opt.tol;
  rep.flag(difference_system ? "difference-system-holds" : "difference-system-fails");
  rep.flag(torsion_system ? "torsion-system-holds" : "torsion-system-fails");
  rep.set("agreement_defect", difference_system == torsion_system ? 0.0 : 1.0, 0.5);
  rep.finalize();
  return rep;
}

SectionSpec triple_section(const LinearConnection& levi_civita, const ConnectionForm& a0, const Chart& chart) {
  SectionSpec s{curvature_field(levi_civita, chart)};
  if (!a0.trivial()) s.push_back(curvature_form_field(a0, chart));
  return s;
}

SectionSpec kiricenko_section(const LinearConnection& levi_civita, const Chart& chart,
                              const std::vector<TensorField>& extra) {
  SectionSpec s{curvature_field(levi_civita, chart)};
  s.insert(s.end(), extra.begin(), extra.end());
  return s;
}

SectionSpec opozda_section(const LinearConnection& conn0, const Chart& chart) {
  return SectionSpec{torsion_field(conn0, chart), curvature_field(conn0, chart)};
}

}  // namespace ambrose
