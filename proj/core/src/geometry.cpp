#include "nestchase/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/LU>

#include "nestchase/errors.hpp"
#include "nestchase/lp.hpp"

namespace nestchase {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Small systems stay on the stack.
constexpr int kMaxFixed = 8;
using SmallMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxFixed, kMaxFixed>;
using SmallVector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxFixed, 1>;

void require_dimension(const Polytope& p, const Vector& x, const char* what) {
  if (static_cast<std::size_t>(x.size()) != p.dimension()) {
    throw ContractViolation(std::string(what) + ": point has dimension " + std::to_string(x.size()) +
                            ", polytope has " + std::to_string(p.dimension()));
  }
}

double tolerance_scale(double b) { return std::max(1.0, std::abs(b)); }

std::vector<Halfspace> normalized_rows(const Polytope& p) {
  std::vector<Halfspace> rows;
  rows.reserve(p.size());
  for (const auto& h : p.constraints()) rows.push_back(h.normalized());
  return rows;
}

// max c.x over the rows flagged in `use`, via the dual
//   min b.y  s.t.  sum_i a_i y_i = c,  y >= 0.
// nullopt means the dual is infeasible: unbounded, assuming the rows have a
// common point.
struct DualResult {
  lp::Status status;
  double value;
};

DualResult maximize_over(std::span<const Halfspace> rows, const std::vector<bool>* use, const Vector& c) {
  const auto d = static_cast<Eigen::Index>(c.size());
  std::vector<std::size_t> idx;
  idx.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (use == nullptr || (*use)[i]) idx.push_back(i);
  }
  Eigen::MatrixXd a(d, static_cast<Eigen::Index>(idx.size()));
  Eigen::VectorXd cost(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) {
    a.col(static_cast<Eigen::Index>(j)) = rows[idx[j]].normal();
    cost(static_cast<Eigen::Index>(j)) = rows[idx[j]].offset();
  }
  const auto sol = lp::minimize_standard_form(a, c, cost);
  return {sol.status, sol.value};
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    if (r > 1e15) return static_cast<std::size_t>(1e15);
  }
  return static_cast<std::size_t>(std::llround(r));
}

}  // namespace

// ---------------------------------------------------------------- Halfspace

Halfspace::Halfspace(Vector normal, double offset) : normal_(std::move(normal)), offset_(offset) {
  if (normal_.size() == 0) throw ContractViolation("halfspace: empty normal");
  if (!normal_.allFinite() || !std::isfinite(offset_)) {
    throw ContractViolation("halfspace: non-finite coefficient");
  }
  if (normal_.cwiseAbs().maxCoeff() == 0.0) throw ContractViolation("halfspace: zero normal");
}

Halfspace Halfspace::normalized() const {
  const double n = normal_.norm();
  return Halfspace(normal_ / n, offset_ / n);
}

Halfspace Halfspace::at_least(Vector normal, double offset) { return Halfspace(-normal, -offset); }

// ----------------------------------------------------------------- Polytope

Polytope::Polytope(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw ContractViolation("polytope: dimension must be positive");
}

Polytope::Polytope(std::size_t dimension, std::vector<Halfspace> constraints) : Polytope(dimension) {
  for (const auto& h : constraints) {
    if (h.dimension() != dimension_) throw ContractViolation("polytope: constraint dimension mismatch");
  }
  constraints_ = std::move(constraints);
}

Polytope Polytope::box(const Vector& lo, const Vector& hi) {
  if (lo.size() != hi.size() || lo.size() == 0) throw ContractViolation("box: bad corner dimensions");
  const auto d = static_cast<std::size_t>(lo.size());
  Polytope p(d);
  for (Eigen::Index k = 0; k < lo.size(); ++k) {
    Vector e = Vector::Unit(lo.size(), k);
    p.add(Halfspace(e, hi(k)));
    p.add(Halfspace(-e, -lo(k)));
  }
  return p;
}

Polytope Polytope::cube(const Vector& center, double r) {
  const Vector offset = Vector::Constant(center.size(), r);
  return box(center - offset, center + offset);
}

Polytope Polytope::empty(std::size_t dimension) {
  Polytope p(dimension);
  p.marked_empty_ = true;
  return p;
}

void Polytope::add(Halfspace h) {
  if (h.dimension() != dimension_) throw ContractViolation("polytope: constraint dimension mismatch");
  constraints_.push_back(std::move(h));
}

void Polytope::add(std::span<const Halfspace> hs) {
  for (const auto& h : hs) add(h);
}

Polytope Polytope::intersect(const Polytope& other) const {
  if (other.dimension_ != dimension_) throw ContractViolation("intersect: dimension mismatch");
  Polytope out = *this;
  out.add(other.constraints());
  out.marked_empty_ = marked_empty_ || other.marked_empty_;
  return out;
}

// -------------------------------------------------------------------- Chart

Chart::Chart(std::size_t dropped_axis, double fixed_value, Vector origin)
    : axis_(dropped_axis), value_(fixed_value), origin_(std::move(origin)) {
  if (axis_ >= static_cast<std::size_t>(origin_.size())) throw ContractViolation("chart: axis out of range");
}

Vector Chart::embed(const Vector& y) const {
  const auto d = origin_.size();
  if (y.size() != d - 1) throw ContractViolation("chart: embed expects a (d-1)-vector");
  const auto k = static_cast<Eigen::Index>(axis_);
  Vector x(d);
  x.head(k) = y.head(k);
  x(k) = value_;
  x.tail(d - k - 1) = y.tail(d - k - 1);
  return x;
}

Vector Chart::project(const Vector& x) const {
  const auto d = origin_.size();
  if (x.size() != d) throw ContractViolation("chart: project expects a d-vector");
  const auto k = static_cast<Eigen::Index>(axis_);
  Vector y(d - 1);
  y.head(k) = x.head(k);
  y.tail(d - k - 1) = x.tail(d - k - 1);
  return y;
}

// --------------------------------------------------------------- predicates

double scaled_violation(const Polytope& p, const Vector& x) {
  require_dimension(p, x, "contains");
  if (p.marked_empty()) return kInf;
  double worst = -kInf;
  for (const auto& h : p.constraints()) {
    worst = std::max(worst, -h.slack(x) / tolerance_scale(h.offset()));
  }
  return worst;
}

double relative_violation(const Halfspace& h, const Vector& x) {
  if (static_cast<std::size_t>(x.size()) != h.dimension()) throw ContractViolation("relative_violation: dimension mismatch");
  const double excess = h.normal().dot(x) - h.offset();
  const double scale = std::abs(h.offset()) + h.normal().cwiseProduct(x).cwiseAbs().sum();
  if (scale == 0.0) return 0.0;
  return excess / scale;
}

double relative_violation(const Polytope& p, const Vector& x) {
  if (p.marked_empty()) return std::numeric_limits<double>::infinity();
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& h : p.constraints()) worst = std::max(worst, relative_violation(h, x));
  return worst;
}

bool contains(const Polytope& p, const Vector& x, double tol) {
  if (tol < 0.0) throw ContractViolation("contains: negative tolerance");
  return scaled_violation(p, x) <= tol;
}

double min_scaled_violation(const Polytope& p) {
  if (p.marked_empty()) return kInf;
  if (p.size() == 0) return -kInf;
  // Dual of  min t  s.t.  w_i (a_i.x - b_i) <= t:
  //   min sum w_i b_i y_i  s.t.  sum w_i a_i y_i = 0,  sum y_i = 1,  y >= 0.
  const auto d = static_cast<Eigen::Index>(p.dimension());
  const auto m = static_cast<Eigen::Index>(p.size());
  Eigen::MatrixXd a(d + 1, m);
  Eigen::VectorXd cost(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const auto& h = p.constraints()[static_cast<std::size_t>(j)];
    const double w = 1.0 / tolerance_scale(h.offset());
    a.col(j).head(d) = w * h.normal();
    a(d, j) = 1.0;
    cost(j) = w * h.offset();
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d + 1);
  rhs(d) = 1.0;
  const auto sol = lp::minimize_standard_form(a, rhs, cost);
  switch (sol.status) {
    case lp::Status::infeasible:
      return -kInf;
    case lp::Status::unbounded:
      // Cannot happen: sum y = 1 bounds the dual feasible set.
      throw InvariantError("min_scaled_violation: unbounded bounded dual");
    case lp::Status::optimal:
      break;
  }
  return -sol.value;
}

bool is_empty(const Polytope& p, double tol) { return min_scaled_violation(p) > tol; }

bool is_bounded(const Polytope& p) {
  if (is_empty(p)) return true;
  const auto rows = normalized_rows(p);
  const auto d = static_cast<Eigen::Index>(p.dimension());
  for (Eigen::Index k = 0; k < d; ++k) {
    for (double sign : {1.0, -1.0}) {
      const auto r = maximize_over(rows, nullptr, sign * Vector::Unit(d, k));
      if (r.status == lp::Status::infeasible) return false;
    }
  }
  return true;
}

double support(const Polytope& p, const Vector& direction) {
  require_dimension(p, direction, "support");
  if (is_empty(p)) throw InfeasibleError("support: empty polytope");
  const auto rows = normalized_rows(p);
  const auto r = maximize_over(rows, nullptr, direction);
  switch (r.status) {
    case lp::Status::infeasible:
      throw UnboundedError("support: unbounded in the given direction");
    case lp::Status::unbounded:
      throw InfeasibleError("support: polytope is empty");
    case lp::Status::optimal:
      break;
  }
  return r.value;
}

Polytope remove_redundant(const Polytope& p, double tol) {
  if (p.marked_empty() || p.size() <= 1) return p;
  const auto rows = normalized_rows(p);
  std::vector<bool> keep(rows.size(), true);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    keep[i] = false;
    const auto r = maximize_over(rows, &keep, rows[i].normal());
    const bool redundant = r.status == lp::Status::optimal &&
                           r.value <= rows[i].offset() + tol * tolerance_scale(rows[i].offset());
    keep[i] = !redundant;
  }
  std::vector<Halfspace> kept;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (keep[i]) kept.push_back(p.constraints()[i]);
  }
  return Polytope(p.dimension(), std::move(kept));
}

// --------------------------------------------------------------- vertices

std::vector<Vector> vertices(const Polytope& p, const VertexOptions& options) {
  const std::size_t d = p.dimension();
  if (d > options.max_dimension || d > static_cast<std::size_t>(kMaxFixed)) {
    throw ContractViolation("vertices: dimension " + std::to_string(d) + " exceeds the configured maximum");
  }
  if (p.marked_empty() || is_empty(p, options.tol)) return {};
  if (!is_bounded(p)) throw UnboundedError("vertices: polytope is unbounded");

  std::vector<Halfspace> rows = normalized_rows(p);
  if (binomial(rows.size(), d) > options.prune_threshold) {
    rows = normalized_rows(remove_redundant(p, options.tol));
  }
  const std::size_t m = rows.size();
  if (m < d) return {};

  std::vector<Vector> candidates;
  std::vector<std::size_t> combo(d);
  for (std::size_t i = 0; i < d; ++i) combo[i] = i;

  SmallMatrix system(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  SmallVector rhs(static_cast<Eigen::Index>(d));
  const auto feasible_on_rows = [&](const Vector& x) {
    for (const auto& h : rows) {
      if (-h.slack(x) > options.tol * tolerance_scale(h.offset())) return false;
    }
    return true;
  };

  while (true) {
    for (std::size_t r = 0; r < d; ++r) {
      system.row(static_cast<Eigen::Index>(r)) = rows[combo[r]].normal().transpose();
      rhs(static_cast<Eigen::Index>(r)) = rows[combo[r]].offset();
    }
    Eigen::FullPivLU<SmallMatrix> lu(system);
    lu.setThreshold(1e-10);
    if (lu.rank() == static_cast<Eigen::Index>(d)) {
      Vector x = lu.solve(rhs);
      if (x.allFinite() && feasible_on_rows(x) && contains(p, x, options.tol)) {
        candidates.push_back(std::move(x));
      }
    }
    // next combination
    std::size_t i = d;
    while (i > 0 && combo[i - 1] == m - d + (i - 1)) --i;
    if (i == 0) break;
    ++combo[i - 1];
    for (std::size_t j = i; j < d; ++j) combo[j] = combo[j - 1] + 1;
  }
  if (candidates.empty()) return {};

  // Per-axis deduplication scale; an absolute floor would merge genuine
  // vertices of very thin bodies.
  Vector lo = candidates.front();
  Vector hi = candidates.front();
  for (const auto& c : candidates) {
    lo = lo.cwiseMin(c);
    hi = hi.cwiseMax(c);
  }
  const Vector merge_tol = options.tol * (hi - lo);

  std::vector<Vector> out;
  for (auto& c : candidates) {
    const bool duplicate = std::any_of(out.begin(), out.end(), [&](const Vector& v) {
      return ((v - c).cwiseAbs().array() <= merge_tol.array()).all();
    });
    if (!duplicate) out.push_back(std::move(c));
  }
  return out;
}

// ------------------------------------------------------------ slice / clip

SliceResult slice(const Polytope& p, std::size_t axis, double value, const Vector& origin) {
  const std::size_t d = p.dimension();
  if (d < 2) throw ContractViolation("slice: needs dimension >= 2");
  if (axis >= d) throw ContractViolation("slice: axis out of range");
  require_dimension(p, origin, "slice");

  Chart chart(axis, value, origin);
  if (p.marked_empty()) return {Polytope::empty(d - 1), std::move(chart)};

  const auto k = static_cast<Eigen::Index>(axis);
  Polytope out(d - 1);
  bool unsatisfiable = false;
  for (const auto& h : p.constraints()) {
    const Vector& a = h.normal();
    const double b = h.offset() - a(k) * value;
    Vector reduced(static_cast<Eigen::Index>(d - 1));
    reduced.head(k) = a.head(k);
    reduced.tail(static_cast<Eigen::Index>(d) - k - 1) = a.tail(static_cast<Eigen::Index>(d) - k - 1);
    const double scale = a.cwiseAbs().maxCoeff();
    if (reduced.cwiseAbs().maxCoeff() <= 1e-12 * scale) {
      // 0 . y <= b
      if (b < -kInternalTol * tolerance_scale(h.offset())) unsatisfiable = true;
      continue;
    }
    out.add(Halfspace(std::move(reduced), b));
  }
  if (unsatisfiable) return {Polytope::empty(d - 1), std::move(chart)};
  return {std::move(out), std::move(chart)};
}

Polytope clip_box(const Polytope& p, const Vector& center, double r) {
  require_dimension(p, center, "clip_box");
  if (!(r > 0.0) || !std::isfinite(r)) throw ContractViolation("clip_box: radius must be positive and finite");
  return p.intersect(Polytope::cube(center, r));
}

bool contains_body(const Polytope& outer, const Polytope& inner, double tol) {
  if (outer.dimension() != inner.dimension()) throw ContractViolation("contains_body: dimension mismatch");
  if (inner.marked_empty() || is_empty(inner)) return true;
  if (!is_bounded(inner)) throw UnboundedError("contains_body: inner body is unbounded");
  const auto vs = vertices(inner);
  if (vs.empty()) return true;
  if (outer.marked_empty()) return false;
  for (const auto& h : outer.constraints()) {
    double best = -kInf;
    for (const auto& v : vs) best = std::max(best, h.normal().dot(v));
    if (best > h.offset() + tol) return false;
  }
  return true;
}

}  // namespace nestchase
