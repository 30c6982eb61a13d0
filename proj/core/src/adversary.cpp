#include "nestchase/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nestchase/errors.hpp"

namespace nestchase {

Polytope NestedInstance::body(std::size_t i) const {
  if (i >= batches.size()) throw ContractViolation("instance: body index out of range");
  Polytope p(dimension);
  for (std::size_t k = 0; k <= i; ++k) p.add(batches[k]);
  return p;
}

std::vector<Polytope> NestedInstance::bodies() const {
  std::vector<Polytope> out;
  out.reserve(batches.size());
  Polytope p(dimension);
  for (const auto& batch : batches) {
    p.add(batch);
    out.push_back(p);
  }
  return out;
}

void NestedInstance::check() const {
  if (dimension == 0) throw ContractViolation("instance: dimension must be positive");
  if (static_cast<std::size_t>(start.size()) != dimension) throw ContractViolation("instance: start has wrong length");
  if (!start.allFinite()) throw ContractViolation("instance: non-finite start");
  for (const auto& batch : batches) {
    for (const auto& h : batch) {
      if (h.dimension() != dimension) throw ContractViolation("instance: halfspace has wrong length");
    }
  }
}

InstanceSource::InstanceSource(NestedInstance instance)
    : instance_(std::move(instance)), current_(std::max<std::size_t>(instance_.dimension, 1)) {
  instance_.check();
}

std::optional<Polytope> InstanceSource::next(const Vector&) {
  if (issued_ >= instance_.batches.size()) return std::nullopt;
  current_.add(instance_.batches[issued_++]);
  return current_;
}

namespace {

// The cut 2y <= slope x + intercept as a "<=" row.
Halfspace line_cut(double slope, double intercept) {
  return Halfspace(Vector{{-slope, 2.0}}, intercept);
}

bool excludes(const Halfspace& h, const Vector& x) { return relative_violation(h, x) > kInternalTol; }

}  // namespace

Section4Adversary::Section4Adversary(double alpha, std::size_t max_requests, std::size_t index_cap)
    : start_(Vector{{0.0, 1.0}}), max_requests_(max_requests), cap_(index_cap) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ContractViolation("adversary: alpha must lie in (0, 1)");
  state_.alpha = alpha;
}

Halfspace Section4Adversary::floor() { return Halfspace(Vector{{0.0, -1.0}}, 0.0); }
Halfspace Section4Adversary::left_wall() { return Halfspace(Vector{{-1.0, 0.0}}, 1.0); }
Halfspace Section4Adversary::right_wall() { return Halfspace(Vector{{1.0, 0.0}}, 1.0); }

Halfspace Section4Adversary::first_cut(double alpha) { return line_cut(1.0 - alpha, 1.0 + alpha); }

Halfspace Section4Adversary::right_cut(double alpha, std::size_t i) {
  const double hi = std::pow(alpha, 2.0 * static_cast<double>(i));
  const double lo = hi * alpha;
  return line_cut(hi - lo, hi + lo);
}

Halfspace Section4Adversary::left_cut(double alpha, std::size_t i) {
  const double lo = std::pow(alpha, 2.0 * static_cast<double>(i) + 1.0);
  const double hi = lo * alpha;
  return line_cut(hi - lo, hi + lo);
}

Polytope Section4Adversary::body(const Halfspace& cut) {
  return Polytope(2, {floor(), left_wall(), right_wall(), cut});
}

Polytope Section4Adversary::first_body(double alpha) { return body(first_cut(alpha)); }

std::optional<Polytope> Section4Adversary::next(const Vector& position) {
  if (position.size() != 2) throw ContractViolation("adversary: position must be planar");
  if (state_.t >= max_requests_) return std::nullopt;
  if (state_.t == 0) {
    state_.t = 1;
    state_.family = CutFamily::first;
    state_.index = 0;
    return first_body(state_.alpha);
  }
  // Round t+1 is even for a left cut. The first cut coincides with right
  // cut 0, and the families interleave as R_0 > L_0 > R_1 > L_1 > ...
  const bool left = (state_.t + 1) % 2 == 0;
  std::size_t from = 0;
  if (state_.family == CutFamily::left) {
    from = state_.index + 1;
  } else {
    from = state_.index;
  }
  for (std::size_t i = from; i <= cap_; ++i) {
    const Halfspace cut = left ? left_cut(state_.alpha, i) : right_cut(state_.alpha, i);
    if (!excludes(cut, position)) continue;
    state_.t += 1;
    state_.family = left ? CutFamily::left : CutFamily::right;
    state_.index = i;
    return body(cut);
  }
  return std::nullopt;
}

namespace {

Vector random_unit(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector u(static_cast<Eigen::Index>(d));
  do {
    for (Eigen::Index k = 0; k < u.size(); ++k) u(k) = normal(rng);
  } while (u.norm() < 1e-6);
  return u.normalized();
}

}  // namespace

Vector random_nested_anchor(std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  Vector p(static_cast<Eigen::Index>(d));
  for (Eigen::Index k = 0; k < p.size(); ++k) p(k) = coord(rng);
  return p;
}

NestedInstance gen_random_nested(std::size_t d, std::size_t n, std::uint64_t seed) {
  if (d == 0 || n == 0) throw ContractViolation("gen_random_nested: d and n must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::uniform_real_distribution<double> width(0.5, 2.0);
  std::uniform_real_distribution<double> away(0.5, 3.0);
  std::uniform_real_distribution<double> depth(0.4, 0.95);
  std::uniform_int_distribution<int> cuts(1, 3);
  std::normal_distribution<double> wobble(0.0, 0.3);

  const auto dd = static_cast<Eigen::Index>(d);
  Vector p(dd);
  for (Eigen::Index k = 0; k < dd; ++k) p(k) = coord(rng);
  Vector half(dd);
  for (Eigen::Index k = 0; k < dd; ++k) half(k) = width(rng);

  NestedInstance inst;
  inst.dimension = d;
  // Start outside the first box: farther from p than its half-diagonal.
  inst.start = p + random_unit(d, rng) * (half.norm() + away(rng));

  Polytope body = Polytope::box(p - half, p + half);
  inst.batches.emplace_back(body.constraints().begin(), body.constraints().end());

  for (std::size_t i = 1; i < n; ++i) {
    std::vector<Halfspace> batch;
    const int count = cuts(rng);
    for (int c = 0; c < count; ++c) {
      const Vector u = random_unit(d, rng);
      const double reach = std::max(0.0, support(body, u) - u.dot(p));
      const Vector z = p + depth(rng) * reach * u;
      Vector normal = u;
      for (Eigen::Index k = 0; k < dd; ++k) normal(k) += wobble(rng);
      if (normal.norm() < 1e-6 || normal.normalized().dot(u) < 0.1) normal = u;
      batch.emplace_back(normal, normal.dot(z));
    }
    body.add(batch);
    inst.batches.push_back(std::move(batch));
  }
  return inst;
}

NestedInstance gen_covering_lp(std::size_t d, std::size_t n, std::uint64_t seed) {
  if (d == 0 || n == 0) throw ContractViolation("gen_covering_lp: d and n must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(0.0, 1.0);
  std::uniform_real_distribution<double> demand(0.5, 2.0);
  std::bernoulli_distribution zero(0.3);
  std::uniform_int_distribution<std::size_t> pick(0, d - 1);

  NestedInstance inst;
  inst.dimension = d;
  inst.start = Vector::Zero(static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < n; ++i) {
    Vector a(static_cast<Eigen::Index>(d));
    for (Eigen::Index k = 0; k < a.size(); ++k) a(k) = zero(rng) ? 0.0 : coef(rng);
    if (!(a.maxCoeff() > 0.05)) a(static_cast<Eigen::Index>(pick(rng))) = 0.05 + coef(rng);
    inst.batches.push_back({Halfspace::at_least(a, demand(rng))});
  }
  return inst;
}

}  // namespace nestchase
