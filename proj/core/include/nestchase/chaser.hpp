#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nestchase/convex_ops.hpp"
#include "nestchase/geometry.hpp"

namespace nestchase {

/// Points v_0, v_1, ..., v_n visited by an online algorithm.
struct Trajectory {
  std::vector<Vector> points;
  std::vector<double> step_costs;
  double total_cost = 0.0;

  Trajectory() = default;
  explicit Trajectory(Vector start) { points.push_back(std::move(start)); }

  void move_to(Vector next);
  std::size_t steps() const noexcept { return step_costs.size(); }
};

/// Cost coefficient of the bounded chaser: g(1) = 1, g(d) = 6 d^2 g(d-1).
double g_bound(int d);
/// Competitive ratio of the doubling reduction: f(d) = 4 (g(d) + 1).
double f_bound(int d);
/// 6^d (d!)^2, a weaker closed-form upper bound on g(d).
double g_closed_form(int d);

enum class ChaseEventKind { hyperplane_step, axis_switch, recenter, stage_change };

std::string_view to_string(ChaseEventKind kind);
std::optional<ChaseEventKind> parse_event_kind(std::string_view text);

struct ChaseEvent {
  std::size_t request = 0;
  ChaseEventKind kind = ChaseEventKind::hyperplane_step;
  /// Dimension of the chaser that emitted the event.
  std::size_t level = 0;
  std::optional<std::size_t> axis;
  /// Radius in effect after the event (phase radius or stage radius).
  double radius = 0.0;
};

/// One phase of a bounded chaser at its own level.
struct PhaseRecord {
  Vector center;
  double radius = 0.0;
  std::vector<std::size_t> axes;
  std::size_t first_request = 0;
  std::size_t requests = 0;
  double cost = 0.0;
  bool ended_by_recenter = false;
};

struct ChaseOptions {
  /// Validate requests (non-empty, r-bounded, nested) before serving them.
  bool strict = false;
  double tol = kInternalTol;
};

/// Smallest axis k >= min_axis whose hyperplane {x_k = s_k} meets p.
std::optional<std::size_t> select_hyperplane(const Vector& s, const Polytope& p, std::size_t min_axis,
                                             double tol = kInternalTol);

/// Minimum enclosing ball of the vertices of a bounded polytope.
Ball recenter(const Polytope& p);

/// Recursive chaser for r-bounded instances: requests inside B(start, r)
/// are served by chasing in axis-aligned hyperplanes through the phase
/// center, and a request that misses all of them triggers a move to the
/// center of its minimum enclosing ball and a new, smaller phase.
class BoundedChaser {
 public:
  BoundedChaser(Vector start, double radius, ChaseOptions options = {});
  BoundedChaser(BoundedChaser&&) noexcept;
  BoundedChaser& operator=(BoundedChaser&&) noexcept;
  ~BoundedChaser();

  /// Serves one request and returns the new position.
  Vector step(const Polytope& request);

  std::size_t dimension() const noexcept { return dim_; }
  double radius() const noexcept { return r0_; }
  const Vector& position() const noexcept { return pos_; }
  const Trajectory& trajectory() const noexcept { return trajectory_; }
  /// Events of this chaser and all of its recursive children.
  const std::vector<ChaseEvent>& events() const noexcept { return events_; }
  /// Phases at this chaser's own level.
  const std::vector<PhaseRecord>& phases() const noexcept { return phases_; }

 private:
  Vector serve(const Polytope& request, std::size_t index, std::vector<ChaseEvent>& events);
  Vector serve_interval(const Polytope& request) const;
  void open_phase(Vector center, double radius, std::size_t first_request);
  void validate(const Polytope& request);

  std::size_t dim_;
  Vector start_;
  double r0_;
  ChaseOptions options_;
  Vector pos_;

  bool phase_open_ = false;
  std::optional<std::size_t> axis_;
  std::unique_ptr<BoundedChaser> child_;
  std::optional<Chart> chart_;

  std::vector<PhaseRecord> phases_;
  std::vector<ChaseEvent> events_;
  Trajectory trajectory_;
  std::size_t served_ = 0;
  std::optional<Polytope> previous_;
};

struct StageRecord {
  int index = 0;
  /// Half-width of the clipping box B_inf(start, 2^j delta_1).
  double box_radius = 0.0;
  /// Radius handed to the bounded chaser (box half-diagonal).
  double chase_radius = 0.0;
  std::size_t first_request = 0;
};

/// Competitive chaser for arbitrary nested instances: requests are grouped
/// into stages by the doubling distance from the start, and each stage runs
/// a fresh BoundedChaser on requests clipped to the stage box.
class NestedChaser {
 public:
  explicit NestedChaser(Vector start, ChaseOptions options = {});

  Vector step(const Polytope& request);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(start_.size()); }
  const Vector& start() const noexcept { return start_; }
  const Vector& position() const noexcept { return pos_; }
  const Trajectory& trajectory() const noexcept { return trajectory_; }
  const std::vector<ChaseEvent>& events() const noexcept { return events_; }
  const std::vector<StageRecord>& stages() const noexcept { return stages_; }
  /// Distance from start to each request so far.
  const std::vector<double>& deltas() const noexcept { return deltas_; }
  std::optional<double> first_delta() const noexcept { return delta_first_; }
  /// Bounded chaser of the current stage, if a stage has begun.
  const BoundedChaser* stage_chaser() const noexcept { return bounded_ ? &*bounded_ : nullptr; }

 private:
  Vector start_;
  ChaseOptions options_;
  Vector pos_;
  Trajectory trajectory_;
  std::vector<ChaseEvent> events_;
  std::vector<StageRecord> stages_;
  std::vector<double> deltas_;
  std::optional<double> delta_first_;
  int stage_ = 0;
  std::optional<BoundedChaser> bounded_;
  std::size_t bounded_events_seen_ = 0;
  std::size_t served_ = 0;
};

Trajectory chase_bounded(const Vector& start, double radius, std::span<const Polytope> requests,
                         const ChaseOptions& options = {});

Trajectory chase_nested(const Vector& start, std::span<const Polytope> requests, const ChaseOptions& options = {});

}  // namespace nestchase
