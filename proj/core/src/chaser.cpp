#include "nestchase/chaser.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nestchase/errors.hpp"

namespace nestchase {

void Trajectory::move_to(Vector next) {
  if (points.empty()) throw ContractViolation("trajectory: no start point");
  const double cost = (next - points.back()).norm();
  points.push_back(std::move(next));
  step_costs.push_back(cost);
  total_cost += cost;
}

double g_bound(int d) {
  if (d < 1) throw ContractViolation("g_bound: d must be at least 1");
  double g = 1.0;
  for (int k = 2; k <= d; ++k) g *= 6.0 * k * k;
  return g;
}

double f_bound(int d) { return 4.0 * (g_bound(d) + 1.0); }

double g_closed_form(int d) {
  if (d < 1) throw ContractViolation("g_closed_form: d must be at least 1");
  double g = 1.0;
  for (int k = 1; k <= d; ++k) g *= 6.0 * k * k;
  return g;
}

std::string_view to_string(ChaseEventKind kind) {
  switch (kind) {
    case ChaseEventKind::hyperplane_step:
      return "hyperplane_step";
    case ChaseEventKind::axis_switch:
      return "axis_switch";
    case ChaseEventKind::recenter:
      return "recenter";
    case ChaseEventKind::stage_change:
      return "stage_change";
  }
  return "unknown";
}

std::optional<ChaseEventKind> parse_event_kind(std::string_view text) {
  for (auto k : {ChaseEventKind::hyperplane_step, ChaseEventKind::axis_switch, ChaseEventKind::recenter,
                 ChaseEventKind::stage_change}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::optional<std::size_t> select_hyperplane(const Vector& s, const Polytope& p, std::size_t min_axis, double tol) {
  if (static_cast<std::size_t>(s.size()) != p.dimension()) {
    throw ContractViolation("select_hyperplane: dimension mismatch");
  }
  if (p.dimension() < 2) throw ContractViolation("select_hyperplane: needs dimension >= 2");
  for (std::size_t k = min_axis; k < p.dimension(); ++k) {
    const auto cut = slice(p, k, s(static_cast<Eigen::Index>(k)), s);
    if (!cut.polytope.marked_empty() && !is_empty(cut.polytope, tol)) return k;
  }
  return std::nullopt;
}

Ball recenter(const Polytope& p) {
  const auto vs = vertices(p);
  if (vs.empty()) throw InfeasibleError("recenter: request is empty");
  return min_enclosing_ball(vs);
}

BoundedChaser::BoundedChaser(Vector start, double radius, ChaseOptions options)
    : dim_(static_cast<std::size_t>(start.size())),
      start_(std::move(start)),
      r0_(radius),
      options_(options),
      pos_(start_),
      trajectory_(start_) {
  if (dim_ == 0) throw ContractViolation("chaser: dimension must be positive");
  if (!start_.allFinite()) throw ContractViolation("chaser: non-finite start");
  if (!(radius >= 0.0) || !std::isfinite(radius)) throw ContractViolation("chaser: radius must be finite and >= 0");
}

BoundedChaser::BoundedChaser(BoundedChaser&&) noexcept = default;
BoundedChaser& BoundedChaser::operator=(BoundedChaser&&) noexcept = default;
BoundedChaser::~BoundedChaser() = default;

void BoundedChaser::validate(const Polytope& request) {
  const auto vs = vertices(request);
  if (vs.empty()) throw InfeasibleError("chaser: empty request");
  const double slack = options_.tol * std::max(1.0, r0_);
  for (const auto& v : vs) {
    if ((v - start_).norm() > r0_ + slack) throw ContractViolation("chaser: request is not inside B(start, r)");
  }
  if (previous_ && !contains_body(*previous_, request, slack)) {
    throw ContractViolation("chaser: request is not nested in its predecessor");
  }
  previous_ = request;
}

Vector BoundedChaser::step(const Polytope& request) {
  if (request.dimension() != dim_) throw ContractViolation("chaser: request dimension mismatch");
  if (options_.strict) validate(request);
  const std::size_t index = served_;
  Vector next = serve(request, index, events_);
  return next;
}

Vector BoundedChaser::serve_interval(const Polytope& request) const {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const auto& h : request.constraints()) {
    const double a = h.normal()(0);
    const double bound = h.offset() / a;
    if (a > 0.0) {
      hi = std::min(hi, bound);
    } else {
      lo = std::max(lo, bound);
    }
  }
  if (lo > hi) {
    const double gap = lo - hi;
    if (gap > options_.tol * std::max({1.0, std::abs(lo), std::abs(hi)})) {
      throw InfeasibleError("chaser: empty interval request");
    }
    return Vector::Constant(1, 0.5 * (lo + hi));
  }
  return Vector::Constant(1, std::clamp(pos_(0), lo, hi));
}

void BoundedChaser::open_phase(Vector center, double radius, std::size_t first_request) {
  PhaseRecord rec;
  rec.center = std::move(center);
  rec.radius = radius;
  rec.first_request = first_request;
  phases_.push_back(std::move(rec));
  phase_open_ = true;
  axis_.reset();
  child_.reset();
  chart_.reset();
}

Vector BoundedChaser::serve(const Polytope& request, std::size_t index, std::vector<ChaseEvent>& events) {
  if (request.marked_empty()) throw InfeasibleError("chaser: empty request");
  if (!phase_open_) open_phase(start_, r0_, index);
  PhaseRecord& phase = phases_.back();
  Vector next;

  if (dim_ == 1) {
    next = serve_interval(request);
  } else {
    const Vector& s = phase.center;
    bool served = false;
    if (axis_) {
      auto cut = slice(request, *axis_, s(static_cast<Eigen::Index>(*axis_)), s);
      if (!cut.polytope.marked_empty() && !is_empty(cut.polytope, options_.tol)) {
        next = chart_->embed(child_->serve(cut.polytope, index, events));
        served = true;
      }
    }
    if (!served) {
      const std::size_t from = axis_ ? *axis_ + 1 : 0;
      if (auto k = select_hyperplane(s, request, from, options_.tol)) {
        const bool first = !axis_;
        if (phase.axes.size() >= dim_) throw InvariantError("chaser: more hyperplanes than axes in one phase");
        axis_ = *k;
        chart_.emplace(*k, s(static_cast<Eigen::Index>(*k)), s);
        ChaseOptions child_options = options_;
        child_options.strict = false;
        child_ = std::make_unique<BoundedChaser>(chart_->project(s), phase.radius, child_options);
        phase.axes.push_back(*k);
        events.push_back({index, first ? ChaseEventKind::hyperplane_step : ChaseEventKind::axis_switch, dim_, *k,
                          phase.radius});
        auto cut = slice(request, *k, s(static_cast<Eigen::Index>(*k)), s);
        next = chart_->embed(child_->serve(cut.polytope, index, events));
      } else {
        const Ball ball = recenter(request);
        next = ball.center;
        events.push_back({index, ChaseEventKind::recenter, dim_, std::nullopt, ball.radius});
        phase.ended_by_recenter = true;
        phase.requests += 1;
        phase.cost += (next - pos_).norm();
        pos_ = next;
        trajectory_.move_to(next);
        ++served_;
        open_phase(ball.center, ball.radius, index + 1);
        return next;
      }
    }
  }

  phase.requests += 1;
  phase.cost += (next - pos_).norm();
  pos_ = next;
  trajectory_.move_to(next);
  ++served_;
  return next;
}

NestedChaser::NestedChaser(Vector start, ChaseOptions options)
    : start_(std::move(start)), options_(options), pos_(start_), trajectory_(start_) {
  if (start_.size() == 0) throw ContractViolation("chaser: dimension must be positive");
  if (!start_.allFinite()) throw ContractViolation("chaser: non-finite start");
}

Vector NestedChaser::step(const Polytope& request) {
  if (request.dimension() != dimension()) throw ContractViolation("chaser: request dimension mismatch");
  if (request.marked_empty() || is_empty(request, options_.tol)) throw InfeasibleError("chaser: empty request");
  const std::size_t index = served_++;

  double delta = 0.0;
  if (!contains(request, start_, options_.tol)) delta = (project(request, start_) - start_).norm();
  deltas_.push_back(delta);

  if (!delta_first_) {
    if (!(delta > 0.0)) {
      trajectory_.move_to(pos_);
      return pos_;
    }
    delta_first_ = delta;
  }

  // Stage j holds delta in [2^(j-1), 2^j) times the first positive delta.
  int j = 1;
  while (delta >= std::ldexp(*delta_first_, j)) ++j;
  j = std::max(j, stage_);
  if (j > stage_) {
    stage_ = j;
    StageRecord rec;
    rec.index = j;
    rec.box_radius = std::ldexp(*delta_first_, j);
    rec.chase_radius = rec.box_radius * std::sqrt(static_cast<double>(dimension()));
    rec.first_request = index;
    stages_.push_back(rec);
    bounded_.emplace(start_, rec.chase_radius, options_);
    bounded_events_seen_ = 0;
    events_.push_back({index, ChaseEventKind::stage_change, dimension(), std::nullopt, rec.chase_radius});
  }

  const StageRecord& stage = stages_.back();
  const Polytope clipped = clip_box(request, start_, stage.box_radius);
  if (options_.strict && vertices(clipped).empty()) throw InfeasibleError("chaser: clipped request is empty");
  pos_ = bounded_->step(clipped);
  const auto& inner = bounded_->events();
  for (; bounded_events_seen_ < inner.size(); ++bounded_events_seen_) {
    ChaseEvent e = inner[bounded_events_seen_];
    e.request += stage.first_request;
    events_.push_back(e);
  }
  trajectory_.move_to(pos_);
  return pos_;
}

Trajectory chase_bounded(const Vector& start, double radius, std::span<const Polytope> requests,
                         const ChaseOptions& options) {
  BoundedChaser chaser(start, radius, options);
  for (const auto& r : requests) chaser.step(r);
  return chaser.trajectory();
}

Trajectory chase_nested(const Vector& start, std::span<const Polytope> requests, const ChaseOptions& options) {
  NestedChaser chaser(start, options);
  for (const auto& r : requests) chaser.step(r);
  return chaser.trajectory();
}

}  // namespace nestchase
