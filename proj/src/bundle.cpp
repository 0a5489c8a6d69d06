#include "ambrose/bundle.hpp"

namespace ambrose {

namespace {

const std::vector<Mat>& gens_or_adjoint(const BundleConnection& b, std::vector<Mat>& storage) {
  if (!b.fiber_gens.empty()) return b.fiber_gens;
  storage = adjoint_generators(b.form.algebra);
  return storage;
}

bool has_lie_axis(const std::vector<Axis>& axes) {
  for (Axis a : axes)
    if (a == Axis::Lie) return true;
  return false;
}

double max_abs_diff(const DenseTensor& a, const DenseTensor& b) { return (a - b).max_abs(); }

}  // namespace

ConnectionForm zero_form(const LieAlgebra& alg, int n) {
  const int m = alg.dim();
  ConnectionForm a{alg, {}};
  if (m > 0) a.eval = [n, m](const Vec&) { return DenseTensor({Axis::Co, Axis::Lie}, {n, m}); };
  return a;
}

ConnectionForm form_sum(const ConnectionForm& a, const ConnectionForm& b, double scale) {
  if (a.trivial()) return a;
  return ConnectionForm{a.algebra, [a, b, scale](const Vec& x) {
                          DenseTensor s = b(x);
                          s *= scale;
                          return a(x) + s;
                        }};
}

DenseTensor curvature_form(const ConnectionForm& a, const Chart& chart, const Vec& x) {
  const int n = chart.dim();
  const int m = a.algebra.dim();
  const TensorField field = make_field({Axis::Co, Axis::Lie}, {n, m}, a.eval);
  const DenseTensor da = frame_gradient(field, chart, x);  // (c, b, i) = E_c(a_b^i)
  const DenseTensor ax = a(x);
  const DenseTensor cst = chart.structure_at(x);
  DenseTensor f({Axis::Co, Axis::Co, Axis::Lie}, {n, n, m});
  std::vector<Vec> av(n);
  for (int p = 0; p < n; ++p) {
    av[p] = Vec(m);
    for (int i = 0; i < m; ++i) av[p][i] = ax.at({p, i});
  }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const Vec br = a.algebra.bracket(av[p], av[q]);
      for (int i = 0; i < m; ++i) {
        double v = da.at({p, q, i}) - da.at({q, p, i}) + br[i];
        for (int c = 0; c < n; ++c) v -= cst.at({c, p, q}) * av[c][i];
        f.at({p, q, i}) = v;
      }
    }
  return f;
}

TensorField curvature_form_field(const ConnectionForm& a, const Chart& chart) {
  const int n = chart.dim();
  const int m = a.algebra.dim();
  return make_field({Axis::Co, Axis::Co, Axis::Lie}, {n, n, m},
                    [a, chart](const Vec& x) { return curvature_form(a, chart, x); });
}

void add_form_terms(DenseTensor& grad, const DenseTensor& form, const std::vector<Mat>& gens, const DenseTensor& t) {
  if (!has_lie_axis(t.axes())) return;
  const int n = form.dims()[0];
  const int m = form.dims()[1];
  if (static_cast<int>(gens.size()) != m) throw GeometryError(ErrorCode::RepMismatch, "form and generators differ");
  const std::size_t block = t.size();
  for (int a = 0; a < n; ++a) {
    Mat l = Mat::Zero(gens.front().rows(), gens.front().cols());
    for (int i = 0; i < m; ++i) l += form.at({a, i}) * gens[i];
    DenseTensor corr(t.axes(), t.dims());
    for (int p = 0; p < t.rank(); ++p) {
      if (t.axes()[p] != Axis::Lie) continue;
      if (t.dims()[p] != l.rows()) throw GeometryError(ErrorCode::RepMismatch, "lie axis dim != fiber dim");
      corr += apply_axis_matrix(t, p, l);
    }
    for (std::size_t i = 0; i < block; ++i) grad.data()[a * block + i] += corr.data()[i];
  }
}

DenseTensor assoc_covariant_derivative(const BundleConnection& b, const TensorField& s, const Chart& chart,
                                       const Vec& x) {
  DenseTensor grad = frame_gradient(s, chart, x);
  const DenseTensor sx = s(x);
  add_connection_terms(grad, b.linear(x), sx);
  if (has_lie_axis(s.axes)) {
    if (b.form.trivial()) throw GeometryError(ErrorCode::RepMismatch, "lie axis without a structure algebra");
    std::vector<Mat> storage;
    add_form_terms(grad, b.form(x), gens_or_adjoint(b, storage), sx);
  }
  return grad;
}

TensorField assoc_derivative_field(const BundleConnection& b, TensorField s, const Chart& chart) {
  std::vector<Axis> axes{Axis::Co};
  axes.insert(axes.end(), s.axes.begin(), s.axes.end());
  std::vector<int> dims{chart.dim()};
  dims.insert(dims.end(), s.dims.begin(), s.dims.end());
  return make_field(axes, dims, [b, s = std::move(s), chart](const Vec& x) {
    return assoc_covariant_derivative(b, s, chart, x);
  });
}

DenseTensor pair(const DenseTensor* endo, const DenseTensor* lie, const std::vector<Mat>& gens,
                 const DenseTensor& eta) {
  int n = 0;
  if (endo) n = endo->dims()[1];
  else if (lie) n = lie->dims()[0];
  else throw GeometryError(ErrorCode::AxisMismatch, "empty adjoint form");
  std::vector<DenseTensor> slices(n, DenseTensor(eta.axes(), eta.dims()));
  DenseTensor grad = stack_leading(Axis::Co, slices);
  if (endo) {
    // add_connection_terms expects (c, a, b) = S(E_a)^c_b, which is exactly the endo layout.
    add_connection_terms(grad, *endo, eta);
  }
  if (lie) add_form_terms(grad, *lie, gens, eta);
  return grad;
}

DenseTensor exterior_cov_derivative(const ConnectionForm& a, const TensorField& alpha, const Chart& chart,
                                    const Vec& x) {
  const int n = chart.dim();
  const int m = a.algebra.dim();
  const DenseTensor dal = frame_gradient(alpha, chart, x);  // (c, b, i)
  const DenseTensor al = alpha(x);
  const DenseTensor ax = a(x);
  const DenseTensor cst = chart.structure_at(x);
  auto vec_of = [m](const DenseTensor& t, int p) {
    Vec v(m);
    for (int i = 0; i < m; ++i) v[i] = t.at({p, i});
    return v;
  };
  DenseTensor out({Axis::Co, Axis::Co, Axis::Lie}, {n, n, m});
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const Vec br = a.algebra.bracket(vec_of(ax, p), vec_of(al, q)) - a.algebra.bracket(vec_of(ax, q), vec_of(al, p));
      for (int i = 0; i < m; ++i) {
        double v = dal.at({p, q, i}) - dal.at({q, p, i}) + br[i];
        for (int c = 0; c < n; ++c) v -= cst.at({c, p, q}) * al.at({c, i});
        out.at({p, q, i}) = v;
      }
    }
  return out;
}

DenseTensor form_of_torsion(const DenseTensor& alpha, const DenseTensor& torsion) {
  const int n = alpha.dims()[0];
  const int m = alpha.dims()[1];
  DenseTensor out({Axis::Co, Axis::Co, Axis::Lie}, {n, n, m});
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int i = 0; i < m; ++i) {
        double v = 0.0;
        for (int c = 0; c < n; ++c) v += torsion.at({c, p, q}) * alpha.at({c, i});
        out.at({p, q, i}) = v;
      }
  return out;
}

double curvature_variation_check(const ConnectionForm& a, const TensorField& alpha, const Chart& chart,
                                 const Vec& x) {
  const int n = chart.dim();
  const int m = a.algebra.dim();
  const ConnectionForm sum{a.algebra, [a, alpha](const Vec& y) { return a(y) + alpha(y); }};
  const DenseTensor lhs = curvature_form(sum, chart, x);
  DenseTensor rhs = curvature_form(a, chart, x) + exterior_cov_derivative(a, alpha, chart, x);
  const DenseTensor al = alpha(x);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      Vec u(m), v(m);
      for (int i = 0; i < m; ++i) {
        u[i] = al.at({p, i});
        v[i] = al.at({q, i});
      }
      const Vec br = a.algebra.bracket(u, v);
      for (int i = 0; i < m; ++i) rhs.at({p, q, i}) += br[i];
    }
  return max_abs_diff(lhs, rhs);
}

double connection_variation_check(const TensorField& eta, const BundleConnection& b, const BundleConnection& bp,
                                  const Chart& chart, const Vec& x) {
  const DenseTensor lhs = assoc_covariant_derivative(bp, eta, chart, x) - assoc_covariant_derivative(b, eta, chart, x);
  const DenseTensor endo = bp.linear(x) - b.linear(x);
  std::vector<Mat> storage;
  const std::vector<Mat>& gens = gens_or_adjoint(b, storage);
  DenseTensor rhs;
  if (!b.form.trivial() && has_lie_axis(eta.axes)) {
    const DenseTensor lie = bp.form(x) - b.form(x);
    rhs = pair(&endo, &lie, gens, eta(x));
  } else {
    rhs = pair(&endo, nullptr, gens, eta(x));
  }
  return max_abs_diff(lhs, rhs);
}

DenseTensor adjoint_form_derivative_endo(const AdjointForm& beta, const BundleConnection& b, const Chart& chart,
                                         const Vec& x) {
  const int n = chart.dim();
  const TensorField s = make_field({Axis::Contra, Axis::Co, Axis::Co}, {n, n, n}, beta.endo);
  return covariant_derivative(b.linear, s, chart, x);
}

DenseTensor adjoint_form_derivative_lie(const AdjointForm& beta, const BundleConnection& b, const Chart& chart,
                                        const Vec& x) {
  const int n = chart.dim();
  const TensorField al = make_field({Axis::Co, Axis::Lie}, {n, b.form.algebra.dim()}, beta.lie);
  const BundleConnection adj{b.linear, b.form, {}};
  return assoc_covariant_derivative(adj, al, chart, x);
}

double leibniz_check(const AdjointForm& beta, const TensorField& eta, const BundleConnection& b, const Chart& chart,
                     const Vec& x) {
  const int n = chart.dim();
  std::vector<Mat> storage;
  const std::vector<Mat> gens = gens_or_adjoint(b, storage);
  const bool use_lie = static_cast<bool>(beta.lie) && has_lie_axis(eta.axes);
  std::vector<Axis> axes{Axis::Co};
  axes.insert(axes.end(), eta.axes.begin(), eta.axes.end());
  std::vector<int> dims{n};
  dims.insert(dims.end(), eta.dims.begin(), eta.dims.end());
  const TensorField paired = make_field(axes, dims, [beta, eta, gens, use_lie](const Vec& y) {
    const DenseTensor e = beta.endo ? beta.endo(y) : DenseTensor();
    const DenseTensor l = use_lie ? beta.lie(y) : DenseTensor();
    return pair(beta.endo ? &e : nullptr, use_lie ? &l : nullptr, gens, eta(y));
  });
  const DenseTensor lhs = assoc_covariant_derivative(b, paired, chart, x);

  const DenseTensor d_eta = assoc_covariant_derivative(b, eta, chart, x);
  const DenseTensor eta_x = eta(x);
  const DenseTensor endo_x = beta.endo ? beta.endo(x) : DenseTensor();
  const DenseTensor lie_x = use_lie ? beta.lie(x) : DenseTensor();
  const DenseTensor d_endo = beta.endo ? adjoint_form_derivative_endo(beta, b, chart, x) : DenseTensor();
  const DenseTensor d_lie = use_lie ? adjoint_form_derivative_lie(beta, b, chart, x) : DenseTensor();

  std::vector<DenseTensor> slices;
  for (int c = 0; c < n; ++c) {
    const DenseTensor de = beta.endo ? leading_slice(d_endo, c) : DenseTensor();
    const DenseTensor dl = use_lie ? leading_slice(d_lie, c) : DenseTensor();
    DenseTensor term = pair(beta.endo ? &de : nullptr, use_lie ? &dl : nullptr, gens, eta_x);
    term += pair(beta.endo ? &endo_x : nullptr, use_lie ? &lie_x : nullptr, gens, leading_slice(d_eta, c));
    slices.push_back(term);
  }
  return max_abs_diff(lhs, stack_leading(Axis::Co, slices));
}

DenseTensor bianchi_defect(const ConnectionForm& a, const Chart& chart, const Vec& x) {
  const int n = chart.dim();
  const int m = a.algebra.dim();
  const TensorField f = curvature_form_field(a, chart);
  const DenseTensor df = frame_gradient(f, chart, x);  // (p, q, r, i)
  const DenseTensor fx = f(x);
  const DenseTensor ax = a(x);
  const DenseTensor cst = chart.structure_at(x);
  DenseTensor out({Axis::Co, Axis::Co, Axis::Co, Axis::Lie}, {n, n, n, m});
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r) {
        const int cyc[3][3] = {{p, q, r}, {q, r, p}, {r, p, q}};
        Vec acc = Vec::Zero(m);
        for (const auto& t : cyc) {
          Vec av(m), fv(m);
          for (int i = 0; i < m; ++i) {
            av[i] = ax.at({t[0], i});
            fv[i] = fx.at({t[1], t[2], i});
            acc[i] += df.at({t[0], t[1], t[2], i});
          }
          acc += a.algebra.bracket(av, fv);
          for (int d = 0; d < n; ++d)
            for (int i = 0; i < m; ++i) acc[i] -= cst.at({d, t[0], t[1]}) * fx.at({d, t[2], i});
        }
        for (int i = 0; i < m; ++i) out.at({p, q, r, i}) = acc[i];
      }
  return out;
}

}  // namespace ambrose
