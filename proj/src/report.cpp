#include "ambrose/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>

namespace ambrose {

void VerificationReport::flag(const std::string& f) {
  if (std::find(flags.begin(), flags.end(), f) == flags.end()) flags.push_back(f);
}

void VerificationReport::finalize() {
  pass = !error.has_value();
  for (const auto& [name, tol] : tolerances) {
    const auto it = residuals.find(name);
    if (it == residuals.end()) continue;
    if (!(std::isfinite(it->second) && it->second < tol)) pass = false;
  }
  std::sort(flags.begin(), flags.end());
}

double round12(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string to_json(const VerificationReport& r) {
  using nlohmann::json;
  json j;
  j["scenario"] = r.scenario;
  j["fixture"] = r.fixture;
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = round12(v);
  j["params"] = params;
  json pts = json::array();
  for (const Vec& p : r.points) {
    json row = json::array();
    for (Eigen::Index i = 0; i < p.size(); ++i) row.push_back(round12(p[i]));
    pts.push_back(row);
  }
  j["points"] = pts;
  json res = json::object();
  for (const auto& [k, v] : r.residuals) res[k] = round12(v);
  j["residuals"] = res;
  json tol = json::object();
  for (const auto& [k, v] : r.tolerances) tol[k] = round12(v);
  j["tolerances"] = tol;
  j["stabilizer_dims"] = r.stabilizer_dims;
  j["singer_k"] = r.singer_k ? json(*r.singer_k) : json(nullptr);
  j["pass"] = r.pass;
  j["flags"] = r.flags;
  if (r.error) j["error"] = *r.error;
  return j.dump(2) + "\n";
}

namespace {

double radical_inverse(int base, std::uint64_t i) {
  double inv = 1.0 / base, f = inv, out = 0.0;
  while (i > 0) {
    out += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return out;
}

double uniform53(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::vector<Vec> sample_points(const Vec& lo, const Vec& hi, double margin, int count, std::uint64_t seed) {
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  const int n = static_cast<int>(lo.size());
  if (n > 12) throw std::invalid_argument("sampling supports at most 12 dimensions");
  std::mt19937_64 rng(seed);
  Vec shift(n);
  for (int d = 0; d < n; ++d) shift[d] = uniform53(rng);
  std::vector<Vec> pts;
  for (int k = 0; k < count; ++k) {
    Vec p(n);
    for (int d = 0; d < n; ++d) {
      double u = radical_inverse(primes[d], static_cast<std::uint64_t>(k + 1)) + shift[d];
      u -= std::floor(u);
      p[d] = lo[d] + margin + u * (hi[d] - lo[d] - 2.0 * margin);
    }
    pts.push_back(p);
  }
  return pts;
}

}  // namespace ambrose
