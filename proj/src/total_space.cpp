#include "ambrose/total_space.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ambrose {

namespace {

DenseTensor as_tensor(const Vec& v) {
  return DenseTensor({Axis::Contra}, {static_cast<int>(v.size())}, std::vector<double>(v.data(), v.data() + v.size()));
}

Vec as_vec(const DenseTensor& t) { return Eigen::Map<const Vec>(t.data().data(), static_cast<Eigen::Index>(t.size())); }

/// (A)(i, b) = a(E_b)^i
Mat form_matrix(const ConnectionForm& a, const Vec& x, int n) {
  const int m = a.algebra.dim();
  const DenseTensor ax = a(x);
  Mat out(m, n);
  for (int i = 0; i < m; ++i)
    for (int b = 0; b < n; ++b) out(i, b) = ax.at({b, i});
  return out;
}

Vec curvature_pair(const DenseTensor& f, const Vec& u, const Vec& v) {
  const int n = f.dims()[0], m = f.dims()[2];
  Vec out = Vec::Zero(m);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const double w = u[a] * v[b];
      if (w == 0.0) continue;
      for (int i = 0; i < m; ++i) out[i] += f.at({a, b, i}) * w;
    }
  return out;
}

Vec torsion_pair(const DenseTensor& t, const Vec& u, const Vec& v) {
  const int n = t.dims()[0];
  Vec out = Vec::Zero(n);
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) out[c] += t.at({c, a, b}) * u[a] * v[b];
  return out;
}

Vec curvature_apply(const DenseTensor& r, const Vec& u, const Vec& v, const Vec& w) {
  const int n = r.dims()[0];
  Vec out = Vec::Zero(n);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[l] += r.at({l, k, i, j}) * w[k] * u[i] * v[j];
  return out;
}

FrameVector operator-(const FrameVector& a, const FrameVector& b) { return FrameVector{a.h - b.h, a.v - b.v}; }

}  // namespace

Chart total_chart(const TotalSpaceModel& model) {
  const int n = model.base.dim(), m = model.algebra.dim();
  Vec lo(n + m), hi(n + m);
  lo << model.base.lo(), Vec::Constant(m, -model.fiber_radius);
  hi << model.base.hi(), Vec::Constant(m, model.fiber_radius);
  return Chart(lo, hi, model.base.margin(), model.base.step_scale());
}

Vec base_part(const TotalSpaceModel& model, const Vec& y) { return y.head(model.base.dim()); }
Vec fiber_part(const TotalSpaceModel& model, const Vec& y) { return y.tail(model.algebra.dim()); }

Mat ad_inverse_exp(const LieAlgebra& alg, const Vec& t) { return matrix_exp(Mat(-alg.ad(t))); }

Mat dexp_left(const LieAlgebra& alg, const Vec& t) {
  const int m = alg.dim();
  const Mat nad = -alg.ad(t);
  Mat term = Mat::Identity(m, m);
  Mat sum = term;
  for (int k = 1; k < 60; ++k) {
    term = nad * term / static_cast<double>(k + 1);
    sum += term;
    if (term.norm() < 1e-18) break;
  }
  return sum;
}

Vec coordinate_vector(const TotalSpaceModel& model, const Vec& y, const FrameVector& u) {
  const int n = model.base.dim(), m = model.algebra.dim();
  const Vec x = base_part(model, y), t = fiber_part(model, y);
  const Vec c = u.v - ad_inverse_exp(model.algebra, t) * (form_matrix(model.a, x, n) * u.h);
  Vec out(n + m);
  out << model.base.frame_at(x) * u.h, dexp_left(model.algebra, t).partialPivLu().solve(c);
  return out;
}

FrameVector split_vector(const TotalSpaceModel& model, const Vec& y, const Vec& coords) {
  const int n = model.base.dim();
  const Vec x = base_part(model, y), t = fiber_part(model, y);
  FrameVector out;
  out.h = model.base.frame_at(x).partialPivLu().solve(coords.head(n));
  out.v = dexp_left(model.algebra, t) * coords.tail(model.algebra.dim()) +
          ad_inverse_exp(model.algebra, t) * (form_matrix(model.a, x, n) * out.h);
  return out;
}

Mat connection_metric(const TotalSpaceModel& model, const Vec& y) {
  const int n = model.base.dim(), m = model.algebra.dim();
  const Vec x = base_part(model, y), t = fiber_part(model, y);
  const Mat e_inv = model.base.frame_at(x).inverse();
  Mat d = Mat::Zero(n + m, n + m);
  d.topLeftCorner(n, n) = e_inv;
  d.bottomLeftCorner(m, n) = ad_inverse_exp(model.algebra, t) * form_matrix(model.a, x, n) * e_inv;
  d.bottomRightCorner(m, m) = dexp_left(model.algebra, t);
  Mat blocks = Mat::Zero(n + m, n + m);
  blocks.topLeftCorner(n, n) = frame_metric(model.g, model.base, x);
  blocks.bottomRightCorner(m, m) = model.inner;
  return d.transpose() * blocks * d;
}

double frame_vector_norm(const TotalSpaceModel& model, const Vec& y, const FrameVector& u) {
  const Mat g = frame_metric(model.g, model.base, base_part(model, y));
  return std::sqrt(std::max(0.0, u.h.dot(g * u.h) + u.v.dot(model.inner * u.v)));
}

FrameVector evaluate(const GeneratedField& f, const TotalSpaceModel& model, const Vec& y) {
  return FrameVector{f.base ? f.base(base_part(model, y)) : Vec(Vec::Zero(model.base.dim())),
                     f.vertical ? f.vertical(y) : Vec(Vec::Zero(model.algebra.dim()))};
}

GeneratedField horizontal_lift(std::function<Vec(const Vec&)> base) {
  return GeneratedField{std::move(base), {}};
}

GeneratedField fundamental_field(const Vec& a) {
  return GeneratedField{{}, [a](const Vec&) { return a; }};
}

GeneratedField xi_field(const TotalSpaceModel& model, std::function<Vec(const Vec&)> nu) {
  const int n = model.base.dim();
  const LieAlgebra alg = model.algebra;
  return GeneratedField{[n](const Vec&) { return Vec(Vec::Zero(n)); },
                        [alg, nu, n](const Vec& y) {
                          return Vec(ad_inverse_exp(alg, y.tail(alg.dim())) * nu(y.head(n)));
                        }};
}

Vec horizontal_lift_shift(const ConnectionForm& a0, const ConnectionForm& a, const Vec& z, const Vec& x) {
  const int n = static_cast<int>(z.size());
  return (form_matrix(a, x, n) - form_matrix(a0, x, n)) * z;
}

namespace {

GeneratedField complete(const TotalSpaceModel& model, GeneratedField f) {
  const int n = model.base.dim(), m = model.algebra.dim();
  if (!f.base) f.base = [n](const Vec&) { return Vec(Vec::Zero(n)); };
  if (!f.vertical) f.vertical = [m](const Vec&) { return Vec(Vec::Zero(m)); };
  return f;
}

}  // namespace

FrameVector bar_connection_apply(const TotalSpaceModel& model, const FrameVector& u, const GeneratedField& w_in,
                                 const Vec& y) {
  const GeneratedField w = complete(model, w_in);
  const int n = model.base.dim();
  const Vec x = base_part(model, y);
  FrameVector out{Vec::Zero(n), Vec::Zero(model.algebra.dim())};
  const Vec xw = w.base(x);
  if (u.h.norm() > 0.0) {
    const Vec dir = model.base.frame_at(x) * u.h;
    out.h = as_vec(fd_directional([&w](const Vec& p) { return as_tensor(w.base(p)); }, model.base, x, dir));
    const DenseTensor om = model.conn(x);
    for (int c = 0; c < n; ++c)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) out.h[c] += u.h[a] * om.at({c, a, b}) * xw[b];
  }
  const Vec cu = coordinate_vector(model, y, u);
  if (cu.norm() > 0.0) {
    out.v = as_vec(fd_directional([&w](const Vec& p) { return as_tensor(w.vertical(p)); }, total_chart(model), y, cu));
  }
  out.v += model.algebra.bracket(u.v, w.vertical(y));
  return out;
}

FrameVector bar_torsion(const TotalSpaceModel& model, const FrameVector& u, const FrameVector& v, const Vec& y) {
  const Vec x = base_part(model, y), t = fiber_part(model, y);
  FrameVector out;
  out.h = torsion_pair(torsion(model.conn, model.base, x), u.h, v.h);
  out.v = ad_inverse_exp(model.algebra, t) * curvature_pair(curvature_form(model.a, model.base, x), u.h, v.h) +
          model.algebra.bracket(u.v, v.v);
  return out;
}

FrameVector bar_curvature(const TotalSpaceModel& model, const FrameVector& u, const FrameVector& v,
                          const FrameVector& w, const Vec& y) {
  const Vec x = base_part(model, y), t = fiber_part(model, y);
  FrameVector out;
  out.h = curvature_apply(curvature(model.conn, model.base, x), u.h, v.h, w.h);
  const Vec f = ad_inverse_exp(model.algebra, t) * curvature_pair(curvature_form(model.a, model.base, x), u.h, v.h);
  out.v = model.algebra.bracket(f, w.v);
  return out;
}

FrameVector field_bracket(const TotalSpaceModel& model, const GeneratedField& u_in, const GeneratedField& v_in,
                          const Vec& y) {
  const GeneratedField u = complete(model, u_in), v = complete(model, v_in);
  const Chart chart = total_chart(model);
  auto coords = [&model](const GeneratedField& f) {
    return [&model, f](const Vec& p) { return as_tensor(coordinate_vector(model, p, evaluate(f, model, p))); };
  };
  const Vec cu = coordinate_vector(model, y, evaluate(u, model, y));
  const Vec cv = coordinate_vector(model, y, evaluate(v, model, y));
  Vec br = Vec::Zero(cu.size());
  if (cu.norm() > 0.0) br += as_vec(fd_directional(coords(v), chart, y, cu));
  if (cv.norm() > 0.0) br -= as_vec(fd_directional(coords(u), chart, y, cv));
  return split_vector(model, y, br);
}

FrameVector direct_torsion(const TotalSpaceModel& model, const GeneratedField& u, const GeneratedField& v,
                           const Vec& y) {
  const FrameVector uy = evaluate(complete(model, u), model, y);
  const FrameVector vy = evaluate(complete(model, v), model, y);
  return bar_connection_apply(model, uy, v, y) - bar_connection_apply(model, vy, u, y) -
         field_bracket(model, u, v, y);
}

FrameVector bar_torsion_derivative(const TotalSpaceModel& model, const GeneratedField& z_in,
                                   const GeneratedField& u_in, const GeneratedField& v_in, const Vec& y) {
  const GeneratedField z = complete(model, z_in), u = complete(model, u_in), v = complete(model, v_in);
  const TotalSpaceModel mdl = model;
  const int n = model.base.dim();
  GeneratedField tuv;
  tuv.base = [mdl, u, v](const Vec& x) {
    return torsion_pair(torsion(mdl.conn, mdl.base, x), u.base(x), v.base(x));
  };
  tuv.vertical = [mdl, u, v, n](const Vec& p) {
    const Vec x = p.head(n), t = p.tail(mdl.algebra.dim());
    return Vec(ad_inverse_exp(mdl.algebra, t) * curvature_pair(curvature_form(mdl.a, mdl.base, x), u.base(x), v.base(x)) +
               mdl.algebra.bracket(u.vertical(p), v.vertical(p)));
  };
  const FrameVector zy = evaluate(z, model, y), uy = evaluate(u, model, y), vy = evaluate(v, model, y);
  return bar_connection_apply(model, zy, tuv, y) - bar_torsion(model, bar_connection_apply(model, zy, u, y), vy, y) -
         bar_torsion(model, uy, bar_connection_apply(model, zy, v, y), y);
}

FrameVector bar_curvature_derivative(const TotalSpaceModel& model, const GeneratedField& z_in,
                                     const GeneratedField& u_in, const GeneratedField& v_in,
                                     const GeneratedField& w_in, const Vec& y) {
  const GeneratedField z = complete(model, z_in), u = complete(model, u_in), v = complete(model, v_in),
                       w = complete(model, w_in);
  const TotalSpaceModel mdl = model;
  const int n = model.base.dim();
  GeneratedField ruvw;
  ruvw.base = [mdl, u, v, w](const Vec& x) {
    return curvature_apply(curvature(mdl.conn, mdl.base, x), u.base(x), v.base(x), w.base(x));
  };
  ruvw.vertical = [mdl, u, v, w, n](const Vec& p) {
    const Vec x = p.head(n), t = p.tail(mdl.algebra.dim());
    const Vec f =
        ad_inverse_exp(mdl.algebra, t) * curvature_pair(curvature_form(mdl.a, mdl.base, x), u.base(x), v.base(x));
    return mdl.algebra.bracket(f, w.vertical(p));
  };
  const FrameVector zy = evaluate(z, model, y), uy = evaluate(u, model, y), vy = evaluate(v, model, y),
                    wy = evaluate(w, model, y);
  return bar_connection_apply(model, zy, ruvw, y) -
         bar_curvature(model, bar_connection_apply(model, zy, u, y), vy, wy, y) -
         bar_curvature(model, uy, bar_connection_apply(model, zy, v, y), wy, y) -
         bar_curvature(model, uy, vy, bar_connection_apply(model, zy, w, y), y);
}

std::vector<GeneratedField> adapted_basis(const TotalSpaceModel& model) {
  const int n = model.base.dim(), m = model.algebra.dim();
  std::vector<GeneratedField> out;
  for (int a = 0; a < n; ++a) {
    Vec e = Vec::Zero(n);
    e[a] = 1.0;
    out.push_back(complete(model, horizontal_lift([e](const Vec&) { return e; })));
  }
  for (int i = 0; i < m; ++i) out.push_back(complete(model, fundamental_field(model.algebra.basis(i))));
  return out;
}

std::vector<GeneratedField> sample_generated_fields(const TotalSpaceModel& model) {
  const int n = model.base.dim(), m = model.algebra.dim();
  std::vector<GeneratedField> out;
  GeneratedField f1;
  f1.base = [n](const Vec& x) {
    Vec v(n);
    for (int a = 0; a < n; ++a) v[a] = std::sin(x[a] + 0.3 * a) + 0.5 * x[(a + 1) % n];
    return v;
  };
  f1.vertical = [m, n](const Vec& y) {
    Vec v(m);
    for (int i = 0; i < m; ++i) v[i] = 0.4 * std::cos(y[n + i] + y[0]) + 0.2 * y[n + (i + 1) % m] * y[i % n];
    return v;
  };
  GeneratedField f2;
  f2.base = [n](const Vec& x) {
    Vec v(n);
    for (int a = 0; a < n; ++a) v[a] = 1.0 - 0.3 * x[(a + 1) % n] * x[a] + 0.1 * a;
    return v;
  };
  f2.vertical = [m, n](const Vec& y) {
    Vec v(m);
    for (int i = 0; i < m; ++i) v[i] = 0.3 * std::sin(2.0 * y[n + i]) - 0.25 * y[(i + 1) % n] + 0.1 * i;
    return v;
  };
  out.push_back(f1);
  out.push_back(f2);
  out.push_back(complete(model, xi_field(model, [m](const Vec& x) {
    Vec v(m);
    for (int i = 0; i < m; ++i) v[i] = std::cos(x[0] * (i + 1)) + 0.2 * i;
    return v;
  })));
  return out;
}

std::vector<Vec> lift_points(const TotalSpaceModel& model, const std::vector<Vec>& base_points, std::uint64_t seed) {
  const int m = model.algebra.dim();
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Vec> out;
  for (const Vec& x : base_points) {
    Vec y(x.size() + m);
    y.head(x.size()) = x;
    for (int i = 0; i < m; ++i) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      y[x.size() + i] = (2.0 * u - 1.0) * 0.5 * model.fiber_radius;
    }
    out.push_back(y);
  }
  return out;
}

namespace {

struct Hypotheses {
  double nabla_r = 0, nabla_t = 0, nabla_f = 0;
};

Hypotheses parallel_hypotheses(const TotalSpaceModel& model, const Vec& x) {
  Hypotheses h;
  const TensorField r = curvature_field(model.conn, model.base);
  const TensorField t = torsion_field(model.conn, model.base);
  const BundleConnection b{model.conn, model.a, {}};
  h.nabla_r = to_frame(covariant_derivative(model.conn, r, model.base, x), ortho_frame(model.g, model.base, x)).norm();
  h.nabla_t = to_frame(covariant_derivative(model.conn, t, model.base, x), ortho_frame(model.g, model.base, x)).norm();
  h.nabla_f = to_frame(assoc_covariant_derivative(b, curvature_form_field(model.a, model.base), model.base, x),
                       ortho_frame(model.g, model.base, x))
                  .norm();
  return h;
}

}  // namespace

VerificationReport bar_parallelism_check(const TotalSpaceModel& model, const std::vector<Vec>& base_points,
                                         const TotalSpaceOptions& opt, std::uint64_t seed) {
  const std::vector<Vec> ys = lift_points(model, base_points, seed);
  const std::vector<GeneratedField> basis = adapted_basis(model);
  std::vector<GeneratedField> probes = sample_generated_fields(model);
  probes.push_back(basis.front());
  probes.push_back(basis.back());
  const int d = static_cast<int>(basis.size());

  struct Row {
    Hypotheses hyp;
    double torsion_gap = 0, dt = 0, dr = 0, submersion = 0;
  };
  const std::vector<Row> rows = map_indices<Row>(
      static_cast<int>(ys.size()),
      [&](int i) {
        const Vec& y = ys[i];
        Row row;
        row.hyp = parallel_hypotheses(model, base_part(model, y));
        for (std::size_t p = 0; p < probes.size(); ++p)
          for (std::size_t q = p + 1; q < probes.size(); ++q) {
            const FrameVector cs = bar_torsion(model, evaluate(probes[p], model, y), evaluate(probes[q], model, y), y);
            const FrameVector dr = direct_torsion(model, probes[p], probes[q], y);
            row.torsion_gap = std::max(row.torsion_gap, frame_vector_norm(model, y, cs - dr));
          }
        for (int z = 0; z < d; ++z)
          for (int u = 0; u < d; ++u)
            for (int v = u + 1; v < d; ++v) {
              row.dt = std::max(row.dt, frame_vector_norm(model, y, bar_torsion_derivative(model, basis[z], basis[u],
                                                                                            basis[v], y)));
              for (int w = 0; w < d; ++w) {
                row.dr = std::max(row.dr, frame_vector_norm(model, y, bar_curvature_derivative(model, basis[z],
                                                                                                basis[u], basis[v],
                                                                                                basis[w], y)));
              }
            }
        const Mat ga = connection_metric(model, y);
        const int n = model.base.dim();
        for (int a = 0; a < n; ++a) {
          const Vec ha = coordinate_vector(model, y, evaluate(basis[a], model, y));
          for (int j = n; j < d; ++j) {
            const Vec vj = coordinate_vector(model, y, evaluate(basis[j], model, y));
            row.submersion = std::max(row.submersion, std::abs(ha.dot(ga * vj)));
          }
          const double lifted = std::sqrt(ha.dot(ga * ha));
          const double base = std::sqrt(frame_metric(model.g, model.base, base_part(model, y))(a, a));
          row.submersion = std::max(row.submersion, std::abs(lifted - base));
        }
        return row;
      },
      opt.exec);

  VerificationReport rep;
  rep.scenario = "total-space";
  rep.points = ys;
  double gap = 0, dt = 0, dr = 0, sub = 0, hr = 0, ht = 0, hf = 0;
  for (const Row& row : rows) {
    gap = std::max(gap, row.torsion_gap);
    dt = std::max(dt, row.dt);
    dr = std::max(dr, row.dr);
    sub = std::max(sub, row.submersion);
    hr = std::max(hr, row.hyp.nabla_r);
    ht = std::max(ht, row.hyp.nabla_t);
    hf = std::max(hf, row.hyp.nabla_f);
  }
  rep.set("torsion_case_vs_direct", gap, opt.torsion_tol);
  rep.set("nabla_bar_T", dt, opt.tol);
  rep.set("nabla_bar_R", dr, opt.tol);
  rep.set("submersion_defect", sub, 1e-10);
  rep.residuals["hypothesis_nabla_R"] = hr;
  rep.residuals["hypothesis_nabla_T"] = ht;
  rep.residuals["hypothesis_nabla_F"] = hf;
  if (std::max({hr, ht, hf}) > opt.hypothesis_tol) rep.flag("hypotheses-failed");
  rep.finalize();
  return rep;
}

VerificationReport distribution_parallel_check(const TotalSpaceModel& model, const ConnectionForm& a0,
                                               const std::vector<Vec>& base_points, const TotalSpaceOptions& opt,
                                               std::uint64_t seed) {
  const std::vector<Vec> ys = lift_points(model, base_points, seed);
  const std::vector<GeneratedField> basis = adapted_basis(model);
  const int n = model.base.dim(), m = model.algebra.dim();
  const ConnectionForm a = model.a;
  const LieAlgebra alg = model.algebra;

  std::vector<GeneratedField> a0_lifts;
  for (int b = 0; b < n; ++b) {
    Vec e = Vec::Zero(n);
    e[b] = 1.0;
    GeneratedField f;
    f.base = [e](const Vec&) { return e; };
    f.vertical = [a0, a, alg, e, n](const Vec& y) {
      return Vec(ad_inverse_exp(alg, y.tail(alg.dim())) * horizontal_lift_shift(a0, a, e, y.head(n)));
    };
    a0_lifts.push_back(f);
  }
  const TensorField alpha = make_field({Axis::Co, Axis::Lie}, {n, m}, [a, a0](const Vec& x) { return a(x) - a0(x); });

  struct Row {
    Hypotheses hyp;
    double nabla_alpha = 0, defect = 0, shift = 0;
  };
  const std::vector<Row> rows = map_indices<Row>(
      static_cast<int>(ys.size()),
      [&](int i) {
        const Vec& y = ys[i];
        const Vec x = base_part(model, y), t = fiber_part(model, y);
        Row row;
        row.hyp = parallel_hypotheses(model, x);
        const BundleConnection b{model.conn, model.a, {}};
        row.nabla_alpha =
            to_frame(assoc_covariant_derivative(b, alpha, model.base, x), ortho_frame(model.g, model.base, x)).norm();
        const Mat adinv = ad_inverse_exp(alg, t);
        for (const GeneratedField& u : basis)
          for (const GeneratedField& z : a0_lifts) {
            const FrameVector w = bar_connection_apply(model, evaluate(u, model, y), z, y);
            const Vec vertical0 = w.v - adinv * horizontal_lift_shift(a0, a, w.h, x);
            row.defect = std::max(row.defect, std::sqrt(vertical0.dot(model.inner * vertical0)));
          }
        // The A0-lift in coordinates, built directly from a0, against the shifted A-lift.
        TotalSpaceModel model0 = model;
        model0.a = a0;
        for (int bidx = 0; bidx < n; ++bidx) {
          Vec e = Vec::Zero(n);
          e[bidx] = 1.0;
          const Vec direct = coordinate_vector(model0, y, FrameVector{e, Vec::Zero(m)});
          const Vec shifted = coordinate_vector(model, y, evaluate(a0_lifts[bidx], model, y));
          row.shift = std::max(row.shift, (direct - shifted).norm());
        }
        return row;
      },
      opt.exec);

  VerificationReport rep;
  rep.scenario = "distribution";
  rep.points = ys;
  double hr = 0, ht = 0, hf = 0, na = 0, defect = 0, shift = 0;
  for (const Row& row : rows) {
    hr = std::max(hr, row.hyp.nabla_r);
    ht = std::max(ht, row.hyp.nabla_t);
    hf = std::max(hf, row.hyp.nabla_f);
    na = std::max(na, row.nabla_alpha);
    defect = std::max(defect, row.defect);
    shift = std::max(shift, row.shift);
  }
  rep.set("a0_vertical_defect", defect, opt.tol);
  rep.set("lift_shift", shift, 1e-9);
  rep.residuals["hypothesis_nabla_R"] = hr;
  rep.residuals["hypothesis_nabla_T"] = ht;
  rep.residuals["hypothesis_nabla_F"] = hf;
  rep.residuals["hypothesis_nabla_alpha"] = na;
  if (std::max({hr, ht, hf, na}) > opt.hypothesis_tol) rep.flag("hypotheses-failed");
  rep.finalize();
  return rep;
}

}  // namespace ambrose
