#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "nestchase/adversary.hpp"
#include "nestchase/baselines.hpp"
#include "nestchase/chaser.hpp"

namespace nestchase {

/// Offline optimum of a nested instance: the distance from the start to
/// the closest point of the last body.
double opt(const NestedInstance& instance);

/// Same, for a last body given directly.
double opt(const Vector& start, const Polytope& last);

/// total / opt, with 1 for 0/0 and +inf when only opt vanishes.
double competitive_ratio(double total_cost, double opt_cost);

struct RunFlags {
  /// Validate every position against its request within kAssertTol.
  bool strict = false;
  /// Stop after this many requests even if the source has more.
  std::optional<std::size_t> max_requests;
  /// Unbounded requests for baselines are clipped to the box of half-width
  /// clip_factor * (largest distance seen so far) + clip_margin.
  double clip_factor = 2.0;
  double clip_margin = 1.0;
};

struct RunReport {
  std::string algorithm;
  std::string instance;
  std::size_t dimension = 0;
  std::size_t n_requests = 0;
  double total_cost = 0.0;
  double opt_cost = 0.0;
  double ratio = 1.0;
  std::vector<ChaseEvent> events;
  std::size_t phases = 0;
  std::size_t recenterings = 0;
  double wall_time_s = 0.0;
  /// Largest scaled violation of a visited point against its request.
  double max_violation = 0.0;
  /// Largest clipping box applied to baseline requests, if any.
  std::optional<double> clip_radius;
  /// Diagnostic of an aborted run; empty on success.
  std::string error;
};

struct RunResult {
  RunReport report;
  Trajectory trajectory;
  /// The exception that aborted the run, if any.
  std::exception_ptr failure;
};

/// Feeds the source to the algorithm one request at a time and records
/// positions, costs, events and the ratio against the offline optimum.
/// Algorithm errors end the run early; the report keeps the diagnostic.
RunResult run(OnlineAlgorithm& algorithm, RequestSource& source, const std::string& instance_id,
              const RunFlags& flags = {});

}  // namespace nestchase
