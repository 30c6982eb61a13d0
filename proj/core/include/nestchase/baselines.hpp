#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "nestchase/chaser.hpp"
#include "nestchase/convex_ops.hpp"
#include "nestchase/geometry.hpp"

namespace nestchase {

/// True when x has to move to serve p: some row is violated by more than
/// tol relative to the terms of that row.
bool needs_move(const Polytope& p, const Vector& x, double tol = kInternalTol);

/// Closest point of p, or pos when pos already serves p.
Vector greedy_step(const Vector& pos, const Polytope& p);
/// Center of the minimum-volume ellipsoid around p, or pos when feasible.
Vector ellipsoid_step(const Vector& pos, const Polytope& p, const EllipsoidOptions& options = {});
/// Centroid of p, or pos when feasible.
Vector centroid_step(const Vector& pos, const Polytope& p, const CentroidOptions& options = {});

/// An online algorithm sees one request at a time and answers with a point.
class OnlineAlgorithm {
 public:
  virtual ~OnlineAlgorithm() = default;

  virtual std::string_view name() const = 0;
  /// Baselines work on vertex sets and need bounded requests.
  virtual bool needs_bounded_requests() const { return true; }
  virtual Vector step(const Vector& pos, const Polytope& request) = 0;
};

class GreedyAlgorithm final : public OnlineAlgorithm {
 public:
  std::string_view name() const override { return "greedy"; }
  bool needs_bounded_requests() const override { return false; }
  Vector step(const Vector& pos, const Polytope& request) override { return greedy_step(pos, request); }
};

class EllipsoidAlgorithm final : public OnlineAlgorithm {
 public:
  explicit EllipsoidAlgorithm(EllipsoidOptions options = {}) : options_(options) {}
  std::string_view name() const override { return "ellipsoid"; }
  Vector step(const Vector& pos, const Polytope& request) override {
    return ellipsoid_step(pos, request, options_);
  }

 private:
  EllipsoidOptions options_;
};

class CentroidAlgorithm final : public OnlineAlgorithm {
 public:
  explicit CentroidAlgorithm(CentroidOptions options = {}) : options_(options) {}
  std::string_view name() const override { return "centroid"; }
  Vector step(const Vector& pos, const Polytope& request) override {
    return centroid_step(pos, request, options_);
  }

 private:
  CentroidOptions options_;
};

/// The doubling chaser behind the common interface. It keeps its own
/// position, so the pos argument is only checked for consistency.
class ChaseAlgorithm final : public OnlineAlgorithm {
 public:
  ChaseAlgorithm(Vector start, ChaseOptions options = {}) : chaser_(std::move(start), options) {}
  std::string_view name() const override { return "chase"; }
  bool needs_bounded_requests() const override { return false; }
  Vector step(const Vector& pos, const Polytope& request) override;

  const NestedChaser& chaser() const noexcept { return chaser_; }

 private:
  NestedChaser chaser_;
};

struct AlgorithmOptions {
  ChaseOptions chase;
  EllipsoidOptions ellipsoid;
  CentroidOptions centroid;
};

/// Builds a registered algorithm by name. Throws ContractViolation for an
/// unknown name.
std::unique_ptr<OnlineAlgorithm> make_algorithm(std::string_view name, const Vector& start,
                                                const AlgorithmOptions& options = {});

/// Registered names in a fixed order.
const std::vector<std::string>& algorithm_names();

}  // namespace nestchase
