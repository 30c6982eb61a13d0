#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Geometry>
#include <Eigen/LU>

#include "nestchase/convex_ops.hpp"
#include "nestchase/errors.hpp"

namespace nestchase {
namespace {

// Orders coplanar points counter-clockwise around their mean in the plane
// spanned by (e1, e2).
std::vector<std::size_t> angular_order(const std::vector<Vector>& pts, const std::vector<std::size_t>& idx,
                                       const Vector& e1, const Vector& e2) {
  Vector mid = Vector::Zero(pts.front().size());
  for (auto i : idx) mid += pts[i];
  mid /= static_cast<double>(idx.size());
  std::vector<std::pair<double, std::size_t>> keyed;
  keyed.reserve(idx.size());
  for (auto i : idx) {
    const Vector r = pts[i] - mid;
    keyed.emplace_back(std::atan2(r.dot(e2), r.dot(e1)), i);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::size_t> out;
  out.reserve(keyed.size());
  for (const auto& [angle, i] : keyed) out.push_back(i);
  return out;
}

Vector polygon_centroid(const std::vector<Vector>& z) {
  std::vector<std::size_t> all(z.size());
  std::iota(all.begin(), all.end(), 0);
  const auto order = angular_order(z, all, Vector::Unit(2, 0), Vector::Unit(2, 1));
  double area = 0.0;
  Vector acc = Vector::Zero(2);
  const Vector& a = z[order.front()];
  for (std::size_t i = 1; i + 1 < order.size(); ++i) {
    const Vector& b = z[order[i]];
    const Vector& c = z[order[i + 1]];
    const double t = 0.5 * ((b - a)(0) * (c - a)(1) - (b - a)(1) * (c - a)(0));
    area += t;
    acc += t * (a + b + c) / 3.0;
  }
  if (!(std::abs(area) > 1e-12)) throw DegenerateError("centroid: polygon has no area");
  return acc / area;
}

Vector polyhedron_centroid(const Polytope& p, const std::vector<Vector>& z, const Vector& mean,
                           const Vector& extent) {
  // Facets come from the constraint rows, rewritten in normalized
  // coordinates z = (x - mean) / extent.
  const Vector apex = Vector::Zero(3);
  std::set<std::vector<std::size_t>> seen;
  double volume = 0.0;
  Vector acc = Vector::Zero(3);
  for (const auto& h : p.constraints()) {
    Vector n = extent.cwiseProduct(h.normal());
    double b = h.offset() - h.normal().dot(mean);
    const double len = n.norm();
    n /= len;
    b /= len;
    std::vector<std::size_t> tight;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (std::abs(n.dot(z[i]) - b) <= 1e-9 * std::max(1.0, std::abs(b))) tight.push_back(i);
    }
    if (tight.size() < 3 || !seen.insert(tight).second) continue;
    Vector e1 = (z[tight[1]] - z[tight[0]]);
    e1 -= n.dot(e1) * n;
    e1.normalize();
    const Eigen::Vector3d n3 = n;
    const Eigen::Vector3d e13 = e1;
    const Vector e2 = n3.cross(e13);
    const auto order = angular_order(z, tight, e1, e2);
    const Vector& f0 = z[order.front()];
    for (std::size_t i = 1; i + 1 < order.size(); ++i) {
      const Vector& f1 = z[order[i]];
      const Vector& f2 = z[order[i + 1]];
      Eigen::Matrix3d m;
      m.col(0) = f0 - apex;
      m.col(1) = f1 - apex;
      m.col(2) = f2 - apex;
      const double vol = std::abs(m.determinant()) / 6.0;
      volume += vol;
      acc += vol * (apex + f0 + f1 + f2) / 4.0;
    }
  }
  if (!(volume > 1e-12)) throw DegenerateError("centroid: polyhedron has no volume");
  return acc / volume;
}

CentroidEstimate exact_centroid(const Polytope& p) {
  const auto d = static_cast<Eigen::Index>(p.dimension());
  if (d > 3) throw ContractViolation("centroid: exact mode supports d <= 3");
  const auto vs = vertices(p);
  if (static_cast<Eigen::Index>(vs.size()) < d + 1) throw DegenerateError("centroid: body is not full-dimensional");

  Vector mean = Vector::Zero(d);
  Vector lo = vs.front();
  Vector hi = vs.front();
  for (const auto& v : vs) {
    mean += v;
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  mean /= static_cast<double>(vs.size());
  const Vector extent = hi - lo;
  if ((extent.array() <= 0.0).any()) throw DegenerateError("centroid: body is not full-dimensional");
  if (d == 1) return {0.5 * (lo + hi), 0.0, true};

  std::vector<Vector> z;
  z.reserve(vs.size());
  for (const auto& v : vs) z.push_back((v - mean).cwiseQuotient(extent));
  const Vector cz = d == 2 ? polygon_centroid(z) : polyhedron_centroid(p, z, mean, extent);
  return {mean + extent.cwiseProduct(cz), 0.0, true};
}

CentroidEstimate sampled_centroid(const Polytope& p, const CentroidOptions& options) {
  const auto d = static_cast<Eigen::Index>(p.dimension());
  if (p.marked_empty() || is_empty(p)) throw DegenerateError("centroid: empty body");
  if (!is_bounded(p)) throw UnboundedError("centroid: unbounded body");
  Vector lo(d), hi(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    hi(k) = support(p, Vector::Unit(d, k));
    lo(k) = -support(p, -Vector::Unit(d, k));
  }
  if (((hi - lo).array() <= 0.0).any()) throw DegenerateError("centroid: body is not full-dimensional");

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vector sum = Vector::Zero(d);
  Vector sum_sq = Vector::Zero(d);
  std::size_t accepted = 0;
  Vector x(d);
  for (std::size_t s = 0; s < options.samples; ++s) {
    for (Eigen::Index k = 0; k < d; ++k) x(k) = lo(k) + (hi(k) - lo(k)) * unit(rng);
    if (!contains(p, x, 0.0)) continue;
    ++accepted;
    sum += x;
    sum_sq += x.cwiseProduct(x);
  }
  if (accepted < 2) throw DegenerateError("centroid: no samples landed inside the body");
  const double n = static_cast<double>(accepted);
  const Vector mean = sum / n;
  const Vector var = ((sum_sq / n) - mean.cwiseProduct(mean)).cwiseMax(0.0) * (n / (n - 1.0));
  return {mean, std::sqrt(var.maxCoeff() / n), false};
}

}  // namespace

CentroidEstimate centroid(const Polytope& p, const CentroidOptions& options) {
  switch (options.mode) {
    case CentroidMode::exact:
      return exact_centroid(p);
    case CentroidMode::monte_carlo:
      return sampled_centroid(p, options);
    case CentroidMode::automatic:
      break;
  }
  if (p.dimension() >= options.sampling_from_dimension || p.dimension() > 3) return sampled_centroid(p, options);
  return exact_centroid(p);
}

}  // namespace nestchase
