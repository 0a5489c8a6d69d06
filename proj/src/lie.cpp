#include "ambrose/lie.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <regex>

namespace ambrose {

LieAlgebra::LieAlgebra(std::string name, std::vector<std::string> labels, std::vector<double> c)
    : name_(std::move(name)), labels_(std::move(labels)), c_(std::move(c)) {
  const int m = dim();
  if (static_cast<int>(c_.size()) != m * m * m) {
    throw GeometryError(ErrorCode::BadParameters, "structure constant count does not match dimension");
  }
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (structure(k, i, j) != -structure(k, j, i)) {
          throw GeometryError(ErrorCode::BadParameters, "structure constants not antisymmetric");
        }
      }
  if (jacobi_defect() > 1e-10) throw GeometryError(ErrorCode::BadParameters, "Jacobi identity fails");
}

Vec LieAlgebra::basis(int i) const {
  Vec e = Vec::Zero(dim());
  e[i] = 1.0;
  return e;
}

Vec LieAlgebra::bracket(const Vec& a, const Vec& b) const {
  const int m = dim();
  Vec out = Vec::Zero(m);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i) {
      if (a[i] == 0.0) continue;
      for (int j = 0; j < m; ++j) out[k] += structure(k, i, j) * a[i] * b[j];
    }
  return out;
}

Mat LieAlgebra::ad(const Vec& a) const {
  const int m = dim();
  Mat out = Mat::Zero(m, m);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) out(k, j) += a[i] * structure(k, i, j);
  return out;
}

Mat LieAlgebra::ad_basis(int i) const { return ad(basis(i)); }

double LieAlgebra::jacobi_defect() const {
  const int m = dim();
  double worst = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        const Vec a = basis(i), b = basis(j), c = basis(k);
        const Vec s = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
        worst = std::max(worst, s.cwiseAbs().maxCoeff());
      }
  return worst;
}

Vec matrix_coefficients(const std::vector<Mat>& gens, const Mat& m) {
  const int d = static_cast<int>(gens.size());
  if (d == 0) return Vec();
  const Eigen::Index sz = gens.front().size();
  Mat a(sz, d);
  for (int i = 0; i < d; ++i) a.col(i) = gens[i].reshaped();
  const Vec rhs = m.reshaped();
  return a.colPivHouseholderQr().solve(rhs);
}

Mat combine(const std::vector<Mat>& gens, const Vec& coeffs) {
  Mat out = Mat::Zero(gens.front().rows(), gens.front().cols());
  for (std::size_t i = 0; i < gens.size(); ++i) out += coeffs[static_cast<Eigen::Index>(i)] * gens[i];
  return out;
}

LieAlgebra algebra_from_matrices(std::string name, std::vector<std::string> labels, const std::vector<Mat>& gens) {
  const int m = static_cast<int>(gens.size());
  std::vector<double> c(static_cast<std::size_t>(m * m * m), 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const Mat comm = gens[i] * gens[j] - gens[j] * gens[i];
      const Vec coeff = matrix_coefficients(gens, comm);
      if ((combine(gens, coeff) - comm).norm() > 1e-10 * std::max(1.0, comm.norm())) {
        throw GeometryError(ErrorCode::BadParameters, "matrices do not span a Lie algebra");
      }
      for (int k = 0; k < m; ++k) {
        double v = coeff[k];
        if (std::abs(v - std::round(v)) < 1e-12) v = std::round(v);
        c[(k * m + i) * m + j] = v;
        c[(k * m + j) * m + i] = -v;
      }
    }
  return LieAlgebra(std::move(name), std::move(labels), std::move(c));
}

std::vector<Mat> so_generators(int n) {
  if (n < 1) throw GeometryError(ErrorCode::BadParameters, "so(n) needs n >= 1");
  std::vector<Mat> gens;
  if (n == 3) {
    for (int i = 0; i < 3; ++i) {
      Mat l = Mat::Zero(3, 3);
      const int j = (i + 1) % 3, k = (i + 2) % 3;
      l(k, j) = 1.0;
      l(j, k) = -1.0;
      gens.push_back(l);
    }
    return gens;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Mat l = Mat::Zero(n, n);
      l(j, i) = 1.0;
      l(i, j) = -1.0;
      gens.push_back(l);
    }
  return gens;
}

LieAlgebra so_algebra(int n) {
  const std::vector<Mat> gens = so_generators(n);
  std::vector<std::string> labels;
  if (n == 3) {
    labels = {"L1", "L2", "L3"};
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) labels.push_back("L" + std::to_string(i + 1) + std::to_string(j + 1));
  }
  return algebra_from_matrices("so(" + std::to_string(n) + ")", labels, gens);
}

LieAlgebra lie_algebra(const std::string& name) {
  if (name == "u(1)") return LieAlgebra("u(1)", {"i"}, {0.0});
  if (name == "su(2)") {
    std::vector<double> c(27, 0.0);
    auto set = [&c](int k, int i, int j, double v) {
      c[(k * 3 + i) * 3 + j] = v;
      c[(k * 3 + j) * 3 + i] = -v;
    };
    set(2, 0, 1, 2.0);
    set(0, 1, 2, 2.0);
    set(1, 2, 0, 2.0);
    return LieAlgebra("su(2)", {"e1", "e2", "e3"}, c);
  }
  static const std::regex so_re(R"(so\((\d+)\))");
  std::smatch match;
  if (std::regex_match(name, match, so_re)) return so_algebra(std::stoi(match[1].str()));
  throw GeometryError(ErrorCode::UnknownFixture, "unknown Lie algebra " + name);
}

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  const int ma = a.dim(), mb = b.dim(), m = ma + mb;
  std::vector<double> c(static_cast<std::size_t>(m * m * m), 0.0);
  for (int k = 0; k < ma; ++k)
    for (int i = 0; i < ma; ++i)
      for (int j = 0; j < ma; ++j) c[(k * m + i) * m + j] = a.structure(k, i, j);
  for (int k = 0; k < mb; ++k)
    for (int i = 0; i < mb; ++i)
      for (int j = 0; j < mb; ++j) c[((k + ma) * m + i + ma) * m + j + ma] = b.structure(k, i, j);
  std::vector<std::string> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  return LieAlgebra(a.name() + "+" + b.name(), labels, c);
}

std::vector<Mat> adjoint_generators(const LieAlgebra& alg) {
  std::vector<Mat> gens;
  for (int i = 0; i < alg.dim(); ++i) gens.push_back(alg.ad_basis(i));
  return gens;
}

Mat killing_form(const LieAlgebra& alg) {
  const int m = alg.dim();
  const std::vector<Mat> ad = adjoint_generators(alg);
  Mat k(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) k(i, j) = (ad[i] * ad[j]).trace();
  return k;
}

Mat default_inner(const LieAlgebra& alg) {
  const int m = alg.dim();
  if (m == 0) return Mat(0, 0);
  Mat stacked(m * m, m);
  for (int i = 0; i < m; ++i) stacked.col(i) = alg.ad_basis(i).reshaped();
  const Mat center = nullspace(stacked, 1e-12);
  Mat inner = -killing_form(alg) + center * center.transpose();
  Eigen::LLT<Mat> llt(inner);
  if (llt.info() != Eigen::Success) {
    throw GeometryError(ErrorCode::NotInvariant, "algebra has no compact-type invariant inner product");
  }
  return inner;
}

double ad_invariance_defect(const LieAlgebra& alg, const Mat& inner) {
  const int m = alg.dim();
  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    const Mat ad = alg.ad_basis(i);
    worst = std::max(worst, (ad.transpose() * inner + inner * ad).cwiseAbs().maxCoeff());
  }
  return worst;
}

double representation_defect(const LieAlgebra& alg, const std::vector<Mat>& gens) {
  const int m = alg.dim();
  if (static_cast<int>(gens.size()) != m) throw GeometryError(ErrorCode::RepMismatch, "generator count != dim");
  double worst = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const Mat lhs = combine(gens, alg.bracket(alg.basis(i), alg.basis(j)));
      const Mat rhs = gens[i] * gens[j] - gens[j] * gens[i];
      worst = std::max(worst, (lhs - rhs).norm());
    }
  return worst;
}

TensorRep frame_rep(int n, const LieAlgebra& k, std::vector<Mat> fiber_gens) {
  const LieAlgebra so = so_algebra(n);
  if (fiber_gens.empty()) fiber_gens = adjoint_generators(k);
  if (static_cast<int>(fiber_gens.size()) != k.dim()) {
    throw GeometryError(ErrorCode::RepMismatch, "fiber generators do not match the structure algebra");
  }
  const int d = k.dim() == 0 ? 0 : static_cast<int>(fiber_gens.front().rows());
  TensorRep rep;
  rep.algebra = direct_sum(so, k);
  for (const Mat& l : so_generators(n)) {
    rep.vector_gens.push_back(l);
    rep.lie_gens.push_back(Mat::Zero(d, d));
  }
  for (const Mat& g : fiber_gens) {
    rep.vector_gens.push_back(Mat::Zero(n, n));
    rep.lie_gens.push_back(g);
  }
  return rep;
}

TensorRep adjoint_rep(const TensorRep& rep) {
  TensorRep out;
  out.algebra = rep.algebra;
  out.vector_gens = rep.vector_gens;
  out.lie_gens = adjoint_generators(rep.algebra);
  return out;
}

DenseTensor tensor_action(const Vec& b, const DenseTensor& t, const TensorRep& rep) {
  if (b.size() != rep.dim()) throw GeometryError(ErrorCode::RepMismatch, "element has wrong dimension");
  const int n = rep.n();
  const int d = rep.lie_dim();
  Mat v = Mat::Zero(n, n);
  Mat l = Mat::Zero(d, d);
  for (int i = 0; i < rep.dim(); ++i) {
    if (b[i] == 0.0) continue;
    v += b[i] * rep.vector_gens[i];
    l += b[i] * rep.lie_gens[i];
  }
  const Mat vt = -v.transpose();
  DenseTensor out(t.axes(), t.dims());
  for (int p = 0; p < t.rank(); ++p) {
    const Axis a = t.axes()[p];
    const int expected = a == Axis::Lie ? d : n;
    if (t.dims()[p] != expected) throw GeometryError(ErrorCode::RepMismatch, "axis has no registered action");
    if (a == Axis::Contra) {
      out += apply_axis_matrix(t, p, v);
    } else if (a == Axis::Co) {
      out += apply_axis_matrix(t, p, vt);
    } else {
      out += apply_axis_matrix(t, p, l);
    }
  }
  return out;
}

Mat stacked_action_matrix(const std::vector<DenseTensor>& tensors, const TensorRep& rep) {
  std::size_t rows = 0;
  for (const DenseTensor& t : tensors) rows += t.size();
  Mat out = Mat::Zero(static_cast<Eigen::Index>(rows), rep.dim());
  for (int j = 0; j < rep.dim(); ++j) {
    const Vec e = rep.algebra.basis(j);
    Eigen::Index r = 0;
    for (const DenseTensor& t : tensors) {
      const DenseTensor a = tensor_action(e, t, rep);
      for (double v : a.data()) out(r++, j) = v;
    }
  }
  return out;
}

Nullspace nullspace_svd(const Mat& m, double rel_tol, double abs_floor) {
  Nullspace out;
  const Eigen::Index cols = m.cols();
  if (!m.allFinite()) throw GeometryError(ErrorCode::BadParameters, "non-finite matrix in nullspace");
  if (m.rows() == 0 || cols == 0) {
    out.basis = Mat::Identity(cols, cols);
    out.singular_values = Vec::Zero(cols);
    return out;
  }
  // Padding to at least `cols` rows keeps a full set of right singular vectors.
  Mat a = m;
  if (a.rows() < cols) {
    a.conservativeResize(cols, Eigen::NoChange);
    a.bottomRows(cols - m.rows()).setZero();
  }
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  const Vec s = svd.singularValues();
  const double smax = s.size() ? s[0] : 0.0;
  out.threshold = std::max(rel_tol * smax, abs_floor);
  out.singular_values = s;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > out.threshold) ++rank;
    if (s[i] > 0.1 * out.threshold && s[i] < 10.0 * out.threshold) out.ambiguous = true;
  }
  out.basis = svd.matrixV().rightCols(cols - rank);
  return out;
}

Mat nullspace(const Mat& m, double rel_tol) { return nullspace_svd(m, rel_tol).basis; }

Vec containment_angles(const Mat& a, const Mat& b) {
  if (b.cols() == 0) return Vec();
  const Mat resid = b - a * (a.transpose() * b);
  Eigen::JacobiSVD<Mat> svd(resid);
  Vec s = svd.singularValues();
  for (Eigen::Index i = 0; i < s.size(); ++i) s[i] = std::asin(std::min(1.0, s[i]));
  return s;
}

Vec principal_angles(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) throw GeometryError(ErrorCode::AxisMismatch, "subspaces differ in dimension");
  return containment_angles(a, b);
}

Mat inner_projector(const Mat& h, const Mat& inner) {
  const Eigen::Index m = inner.rows();
  if (h.cols() == 0) return Mat::Zero(m, m);
  const Mat gram = h.transpose() * inner * h;
  return h * gram.ldlt().solve(h.transpose() * inner);
}

double subalgebra_defect(const LieAlgebra& alg, const Mat& h) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < h.cols(); ++i)
    for (Eigen::Index j = i + 1; j < h.cols(); ++j) {
      const Vec r = alg.bracket(h.col(i), h.col(j));
      worst = std::max(worst, (r - h * (h.transpose() * r)).norm());
    }
  return worst;
}

Mat reductive_complement(const LieAlgebra& alg, const Mat& h, const Mat& inner, double subalgebra_tol,
                         double invariance_tol) {
  const int m = alg.dim();
  if (h.rows() != m) throw GeometryError(ErrorCode::AxisMismatch, "subspace lives in the wrong algebra");
  if (subalgebra_defect(alg, h) > subalgebra_tol) {
    throw GeometryError(ErrorCode::NotSubalgebra, "subspace not closed under the bracket");
  }
  if (h.cols() == 0) return Mat::Identity(m, m);
  const Mat k = nullspace(h.transpose() * inner, 1e-12);
  for (Eigen::Index i = 0; i < h.cols(); ++i)
    for (Eigen::Index j = 0; j < k.cols(); ++j) {
      const Vec r = alg.bracket(h.col(i), k.col(j));
      if ((h.transpose() * inner * r).norm() > invariance_tol) {
        throw GeometryError(ErrorCode::NotInvariant, "[h, k] leaves k");
      }
    }
  return k;
}

Mat matrix_exp(const Mat& m) { return m.exp(); }

Mat group_exp(const Vec& theta, const std::vector<Mat>& gens) { return matrix_exp(combine(gens, theta)); }

GroupElement group_identity(const TensorRep& rep) {
  return GroupElement{Mat::Identity(rep.n(), rep.n()), Mat::Identity(rep.n(), rep.n()),
                      Mat::Identity(rep.lie_dim(), rep.lie_dim())};
}

GroupElement group_exp(const Vec& theta, const TensorRep& rep) {
  const Mat v = combine(rep.vector_gens, theta);
  GroupElement g;
  g.contra = matrix_exp(v);
  g.co = matrix_exp(Mat(-v.transpose()));
  g.lie = rep.lie_dim() > 0 ? matrix_exp(combine(rep.lie_gens, theta)) : Mat(0, 0);
  return g;
}

GroupElement compose(const GroupElement& a, const GroupElement& b) {
  return GroupElement{a.contra * b.contra, a.co * b.co, a.lie * b.lie};
}

DenseTensor group_act(const GroupElement& g, const DenseTensor& t) {
  DenseTensor out = t;
  for (int p = 0; p < t.rank(); ++p) {
    switch (t.axes()[p]) {
      case Axis::Contra: out = apply_axis_matrix(out, p, g.contra); break;
      case Axis::Co: out = apply_axis_matrix(out, p, g.co); break;
      case Axis::Lie: out = apply_axis_matrix(out, p, g.lie); break;
    }
  }
  return out;
}

}  // namespace ambrose
