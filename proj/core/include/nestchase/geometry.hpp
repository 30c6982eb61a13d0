#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace nestchase {

using Vector = Eigen::VectorXd;

/// Feasibility tolerance used by algorithm logic.
inline constexpr double kInternalTol = 1e-9;
/// Looser feasibility tolerance used when asserting results.
inline constexpr double kAssertTol = 1e-7;
/// Largest dimension accepted by exhaustive vertex enumeration.
inline constexpr std::size_t kMaxVertexDimension = 6;

/// The closed halfspace {x : normal . x <= offset}.
class Halfspace {
 public:
  /// Throws ContractViolation for a zero or non-finite normal or offset.
  Halfspace(Vector normal, double offset);

  const Vector& normal() const noexcept { return normal_; }
  double offset() const noexcept { return offset_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(normal_.size()); }

  /// offset - normal . x; negative when x violates the constraint.
  double slack(const Vector& x) const { return offset_ - normal_.dot(x); }

  /// Same set, scaled so the normal has unit length.
  Halfspace normalized() const;

  /// The halfspace {x : normal . x >= offset} rewritten as a "<=" row.
  static Halfspace at_least(Vector normal, double offset);

  friend bool operator==(const Halfspace& lhs, const Halfspace& rhs) {
    return lhs.offset_ == rhs.offset_ && lhs.normal_.size() == rhs.normal_.size() &&
           lhs.normal_ == rhs.normal_;
  }

 private:
  Vector normal_;
  double offset_;
};

/// Intersection of halfspaces in an explicit ambient dimension. The region
/// may be empty or unbounded. A polytope can also carry an explicit empty
/// mark, produced when slicing turns a constraint into an unsatisfiable
/// constant inequality.
class Polytope {
 public:
  explicit Polytope(std::size_t dimension);
  Polytope(std::size_t dimension, std::vector<Halfspace> constraints);

  /// Axis-aligned box lo <= x <= hi.
  static Polytope box(const Vector& lo, const Vector& hi);
  /// Box of half-width r around center.
  static Polytope cube(const Vector& center, double r);
  /// The explicitly empty polytope.
  static Polytope empty(std::size_t dimension);

  std::size_t dimension() const noexcept { return dimension_; }
  std::span<const Halfspace> constraints() const noexcept { return constraints_; }
  std::size_t size() const noexcept { return constraints_.size(); }
  bool marked_empty() const noexcept { return marked_empty_; }

  void add(Halfspace h);
  void add(std::span<const Halfspace> hs);
  Polytope intersect(const Polytope& other) const;

 private:
  std::size_t dimension_;
  std::vector<Halfspace> constraints_;
  bool marked_empty_ = false;
};

/// Coordinate chart of the axis-aligned hyperplane {x : x[axis] = value}.
/// Axes are 0-based.
class Chart {
 public:
  Chart(std::size_t dropped_axis, double fixed_value, Vector origin);

  std::size_t dropped_axis() const noexcept { return axis_; }
  double fixed_value() const noexcept { return value_; }
  /// The phase center the hyperplane passes through.
  const Vector& origin() const noexcept { return origin_; }
  std::size_t ambient_dimension() const noexcept { return static_cast<std::size_t>(origin_.size()); }

  /// (d-1)-point to d-point; the result has x[axis] == fixed_value exactly.
  Vector embed(const Vector& y) const;
  /// d-point to (d-1)-point by deleting the dropped coordinate.
  Vector project(const Vector& x) const;

 private:
  std::size_t axis_;
  double value_;
  Vector origin_;
};

struct SliceResult {
  Polytope polytope;
  Chart chart;
};

/// a.x <= b + tol * max(1, |b|) for every constraint.
bool contains(const Polytope& p, const Vector& x, double tol = kInternalTol);

/// max_j (a_j.x - b_j) / max(1, |b_j|); -inf for a polytope without rows,
/// +inf when marked empty. contains(p, x, tol) iff this is <= tol.
double scaled_violation(const Polytope& p, const Vector& x);

/// (a.x - b) / (|b| + sum_k |a_k x_k|): violation relative to the size of
/// the terms being compared. Stays meaningful for constraints whose
/// coefficients are far below 1. Zero when every term vanishes.
double relative_violation(const Halfspace& h, const Vector& x);

/// max over rows of relative_violation; -inf for a polytope without rows.
double relative_violation(const Polytope& p, const Vector& x);

/// min over x of scaled_violation(p, x), computed by linear programming.
/// Returns -inf when the polytope has points arbitrarily deep inside.
double min_scaled_violation(const Polytope& p);

/// True when no point satisfies every constraint within tol.
bool is_empty(const Polytope& p, double tol = kInternalTol);

/// True iff the recession cone is trivial: max and min of every coordinate
/// are bounded. An empty polytope counts as bounded.
bool is_bounded(const Polytope& p);

/// max direction . x over p. Throws InfeasibleError or UnboundedError.
double support(const Polytope& p, const Vector& direction);

/// Drops constraints implied by the others (within tol). Never changes the
/// region. Identical duplicates keep exactly one copy.
Polytope remove_redundant(const Polytope& p, double tol = kInternalTol);

struct VertexOptions {
  std::size_t max_dimension = kMaxVertexDimension;
  double tol = kInternalTol;
  /// Pruning pays for itself once the number of d-subsets exceeds this.
  std::size_t prune_threshold = 4096;
};

/// All vertices of a bounded polytope, each reported once. Empty polytopes
/// give an empty list; unbounded ones throw UnboundedError. Every d-subset of
/// (non-redundant) constraints is solved; singular subsystems are skipped.
std::vector<Vector> vertices(const Polytope& p, const VertexOptions& options = {});

/// Substitutes x[axis] = value and deletes that coordinate. Constraints whose
/// normal vanishes are dropped when satisfied; an unsatisfiable one marks
/// the result empty. Requires dimension >= 2.
SliceResult slice(const Polytope& p, std::size_t axis, double value, const Vector& origin);

/// p intersected with the box |x_k - center_k| <= r.
Polytope clip_box(const Polytope& p, const Vector& center, double r);

/// outer contains inner: max a.x over inner <= b + tol for each row of outer.
/// `inner` must be bounded.
bool contains_body(const Polytope& outer, const Polytope& inner, double tol = kInternalTol);

}  // namespace nestchase
