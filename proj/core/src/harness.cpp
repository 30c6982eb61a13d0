#include "nestchase/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "nestchase/errors.hpp"

namespace nestchase {

double opt(const Vector& start, const Polytope& last) {
  if (contains(last, start, 0.0)) return 0.0;
  return (project(last, start) - start).norm();
}

double opt(const NestedInstance& instance) {
  instance.check();
  if (instance.batches.empty()) return 0.0;
  return opt(instance.start, instance.body(instance.size() - 1));
}

double competitive_ratio(double total_cost, double opt_cost) {
  if (opt_cost > 0.0) return total_cost / opt_cost;
  return total_cost > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
}

namespace {

void summarize_events(RunReport& report, std::size_t d) {
  for (const auto& e : report.events) {
    if (e.kind == ChaseEventKind::recenter) {
      ++report.recenterings;
      if (e.level == d) ++report.phases;
    } else if (e.kind == ChaseEventKind::stage_change) {
      ++report.phases;
    }
  }
}

}  // namespace

RunResult run(OnlineAlgorithm& algorithm, RequestSource& source, const std::string& instance_id,
              const RunFlags& flags) {
  const auto began = std::chrono::steady_clock::now();
  const std::size_t d = source.dimension();
  const Vector start = source.start();

  RunResult result;
  result.trajectory = Trajectory(start);
  RunReport& report = result.report;
  report.algorithm = std::string(algorithm.name());
  report.instance = instance_id;
  report.dimension = d;

  Vector pos = start;
  std::optional<Polytope> last;
  double widest = 0.0;
  try {
    while (!flags.max_requests || report.n_requests < *flags.max_requests) {
      auto request = source.next(pos);
      if (!request) break;
      Polytope served = *request;
      if (algorithm.needs_bounded_requests() && !is_bounded(*request)) {
        widest = std::max(widest, opt(start, *request));
        const double r = flags.clip_factor * widest + flags.clip_margin;
        served = clip_box(*request, start, r);
        report.clip_radius = std::max(report.clip_radius.value_or(0.0), r);
      }
      pos = algorithm.step(pos, served);
      const double violation = std::max(0.0, scaled_violation(*request, pos));
      report.max_violation = std::max(report.max_violation, violation);
      if (flags.strict && violation > kAssertTol) {
        throw InvariantError("run: algorithm left its request at step " + std::to_string(report.n_requests));
      }
      result.trajectory.move_to(pos);
      last = std::move(*request);
      ++report.n_requests;
    }
    if (last) report.opt_cost = opt(start, *last);
  } catch (const std::exception& e) {
    report.error = e.what();
    result.failure = std::current_exception();
  }

  if (const auto* chase = dynamic_cast<const ChaseAlgorithm*>(&algorithm)) {
    report.events = chase->chaser().events();
    summarize_events(report, d);
  }
  report.total_cost = result.trajectory.total_cost;
  report.ratio = competitive_ratio(report.total_cost, report.opt_cost);
  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - began).count();
  return result;
}

}  // namespace nestchase
