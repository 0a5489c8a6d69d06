#include "ambrose/orbit.hpp"

#include <cmath>
#include <random>

namespace ambrose {

namespace {

bool manifold_only(const DenseTensor& t) {
  for (Axis a : t.axes())
    if (a == Axis::Lie) return false;
  return true;
}

double pair_trace(const DenseTensor& t) {
  const int r = t.rank() / 2;
  const int n = t.dims()[0];
  std::vector<int> idx(t.rank(), 0);
  std::vector<int> half(r, 0);
  double acc = 0.0;
  while (true) {
    for (int j = 0; j < r; ++j) idx[j] = idx[j + r] = half[j];
    acc += t(idx);
    int j = r - 1;
    while (j >= 0 && ++half[j] == n) half[j--] = 0;
    if (j < 0) break;
  }
  return acc;
}

std::vector<DenseTensor> flatten(const DerivativeTower& t, int depth) {
  std::vector<DenseTensor> out;
  for (int k = 0; k <= depth; ++k) out.insert(out.end(), t.entries[k].begin(), t.entries[k].end());
  return out;
}

double sq_norm(const std::vector<DenseTensor>& ts) {
  double s = 0.0;
  for (const DenseTensor& t : ts) s += t.norm() * t.norm();
  return s;
}

Vec residual_vector(const GroupElement& g, const std::vector<DenseTensor>& s1, const std::vector<DenseTensor>& s2,
                    std::vector<DenseTensor>* moved) {
  std::size_t total = 0;
  for (const DenseTensor& t : s2) total += t.size();
  Vec r(static_cast<Eigen::Index>(total));
  Eigen::Index k = 0;
  if (moved) moved->clear();
  for (std::size_t i = 0; i < s1.size(); ++i) {
    const DenseTensor m = group_act(g, s1[i]);
    for (std::size_t j = 0; j < m.size(); ++j) r[k++] = m.data()[j] - s2[i].data()[j];
    if (moved) moved->push_back(m);
  }
  return r;
}

struct StartResult {
  double f = INFINITY;
  GroupElement g;
};

StartResult descend(GroupElement g, const std::vector<DenseTensor>& s1, const std::vector<DenseTensor>& s2,
                    const TensorRep& rep, int max_iterations, double target) {
  std::vector<DenseTensor> moved;
  Vec r = residual_vector(g, s1, s2, &moved);
  double f = r.squaredNorm();
  double lambda = -1.0;
  for (int it = 0; it < max_iterations && f > target; ++it) {
    const Mat j = stacked_action_matrix(moved, rep);
    const Mat jtj = j.transpose() * j;
    const Vec grad = j.transpose() * r;
    if (lambda < 0.0) lambda = 1e-3 * std::max(1e-12, jtj.diagonal().maxCoeff());
    bool accepted = false;
    for (int tries = 0; tries < 30 && !accepted; ++tries) {
      const Mat lhs = jtj + lambda * Mat::Identity(jtj.rows(), jtj.cols());
      const Vec delta = lhs.ldlt().solve(-grad);
      if (!delta.allFinite() || delta.norm() < 1e-15) return {f, g};
      const GroupElement cand = compose(group_exp(delta, rep), g);
      std::vector<DenseTensor> cand_moved;
      const Vec rc = residual_vector(cand, s1, s2, &cand_moved);
      const double fc = rc.squaredNorm();
      if (fc < f) {
        g = cand;
        r = rc;
        f = fc;
        moved = std::move(cand_moved);
        lambda = std::max(1e-15, lambda * 0.3);
        accepted = true;
      } else {
        lambda *= 10.0;
      }
    }
    if (!accepted) break;
  }
  return {f, g};
}

}  // namespace

std::vector<double> entry_invariants(const std::vector<DenseTensor>& entry) {
  std::vector<double> out;
  for (const DenseTensor& t : entry) {
    out.push_back(t.norm());
    if (manifold_only(t) && t.rank() >= 2 && t.rank() % 2 == 0) out.push_back(pair_trace(t));
  }
  return out;
}

double match_residual(const GroupElement& g, const DerivativeTower& t1, const DerivativeTower& t2, int depth) {
  const std::vector<DenseTensor> s1 = flatten(t1, depth), s2 = flatten(t2, depth);
  const double denom = std::sqrt(sq_norm(s2));
  const double num = residual_vector(g, s1, s2, nullptr).norm();
  return denom > 0.0 ? num / denom : num;
}

MatchResult orbit_match(const DerivativeTower& t1, const DerivativeTower& t2, const TensorRep& rep, int depth,
                        const OrbitOptions& opt) {
  if (depth < 0 || static_cast<int>(t1.entries.size()) <= depth || static_cast<int>(t2.entries.size()) <= depth) {
    throw GeometryError(ErrorCode::DepthMismatch, "tower too short for the requested depth");
  }
  MatchResult out;
  out.element = group_identity(rep);

  double scale = 0.0;
  std::vector<std::vector<double>> inv1, inv2;
  for (int k = 0; k <= depth; ++k) {
    if (t1.entries[k].size() != t2.entries[k].size()) {
      throw GeometryError(ErrorCode::DepthMismatch, "towers have different tuple lengths");
    }
    inv1.push_back(entry_invariants(t1.entries[k]));
    inv2.push_back(entry_invariants(t2.entries[k]));
    for (double v : inv1.back()) scale = std::max(scale, std::abs(v));
    for (double v : inv2.back()) scale = std::max(scale, std::abs(v));
  }
  for (int k = 0; k <= depth; ++k)
    for (std::size_t i = 0; i < inv1[k].size(); ++i) {
      if (std::abs(inv1[k][i] - inv2[k][i]) > opt.prescreen_tol * scale) {
        out.prescreen_failed = true;
      }
    }

  const std::vector<DenseTensor> s1 = flatten(t1, depth), s2 = flatten(t2, depth);
  const double norm2 = sq_norm(s2);
  const double denom = norm2 > 0.0 ? std::sqrt(norm2) : 1.0;
  if (out.prescreen_failed) {
    out.residual = residual_vector(out.element, s1, s2, nullptr).norm() / denom;
    return out;
  }

  std::mt19937_64 rng(opt.seed);
  std::vector<GroupElement> starts{group_identity(rep)};
  for (int s = 1; s < opt.starts; ++s) {
    Vec theta(rep.dim());
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
      theta[i] = (static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0) * M_PI;
    }
    starts.push_back(group_exp(theta, rep));
  }
  const double target = 1e-30 * std::max(norm2, 1e-300);
  const std::vector<StartResult> results = map_indices<StartResult>(
      static_cast<int>(starts.size()),
      [&](int s) { return descend(starts[s], s1, s2, rep, opt.max_iterations, target); }, opt.exec);
  double best = INFINITY;
  for (std::size_t s = 0; s < results.size(); ++s) {
    if (results[s].f < best) {
      best = results[s].f;
      out.element = results[s].g;
      out.best_start = static_cast<int>(s);
    }
  }
  out.residual = std::sqrt(best) / denom;
  out.match = out.residual < opt.match_tol;
  return out;
}

}  // namespace ambrose
