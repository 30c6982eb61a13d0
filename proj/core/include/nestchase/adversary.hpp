#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "nestchase/geometry.hpp"

namespace nestchase {

/// A start point and a stream of halfspace batches. Body i is the
/// intersection of batches 0..i, so bodies are nested by construction.
struct NestedInstance {
  std::size_t dimension = 0;
  Vector start;
  std::vector<std::vector<Halfspace>> batches;

  std::size_t size() const noexcept { return batches.size(); }
  /// Cumulative body after batch i (0-based).
  Polytope body(std::size_t i) const;
  std::vector<Polytope> bodies() const;
  /// Throws ContractViolation on inconsistent dimensions.
  void check() const;

  friend bool operator==(const NestedInstance& lhs, const NestedInstance& rhs) {
    return lhs.dimension == rhs.dimension && lhs.start.size() == rhs.start.size() && lhs.start == rhs.start &&
           lhs.batches == rhs.batches;
  }
};

/// Supplies requests one round at a time. Adaptive sources look at the
/// algorithm's current position; fixed instances ignore it.
class RequestSource {
 public:
  virtual ~RequestSource() = default;

  virtual std::size_t dimension() const = 0;
  virtual const Vector& start() const = 0;
  /// The next request, or nullopt when the stream is over.
  virtual std::optional<Polytope> next(const Vector& position) = 0;
};

/// Replays a fixed NestedInstance as cumulative bodies.
class InstanceSource final : public RequestSource {
 public:
  explicit InstanceSource(NestedInstance instance);

  std::size_t dimension() const override { return instance_.dimension; }
  const Vector& start() const override { return instance_.start; }
  std::optional<Polytope> next(const Vector& position) override;

  const NestedInstance& instance() const noexcept { return instance_; }

 private:
  NestedInstance instance_;
  Polytope current_;
  std::size_t issued_ = 0;
};

enum class CutFamily { first, right, left };

struct AdversaryState {
  double alpha = 0.5;
  /// Requests issued so far; the next one is request t + 1.
  std::size_t t = 0;
  /// Family and index of the last cut issued.
  std::optional<CutFamily> family;
  std::size_t index = 0;
};

/// Adaptive planar adversary that makes the ellipsoid and centroid
/// baselines oscillate. Every body is {y >= 0, -1 <= x <= 1} cut by one
/// more line; the origin stays feasible throughout. Even rounds use the
/// left family, odd rounds the right family, each time the smallest index
/// that excludes the current position and keeps the bodies nested.
class Section4Adversary final : public RequestSource {
 public:
  static constexpr std::size_t kDefaultIndexCap = 60;

  explicit Section4Adversary(double alpha = 0.5,
                             std::size_t max_requests = std::numeric_limits<std::size_t>::max(),
                             std::size_t index_cap = kDefaultIndexCap);

  std::size_t dimension() const override { return 2; }
  const Vector& start() const override { return start_; }
  std::optional<Polytope> next(const Vector& position) override;

  const AdversaryState& state() const noexcept { return state_; }
  std::size_t index_cap() const noexcept { return cap_; }

  /// y >= 0.
  static Halfspace floor();
  /// x >= -1.
  static Halfspace left_wall();
  /// x <= 1.
  static Halfspace right_wall();
  /// 2y <= (1 - alpha) x + (1 + alpha).
  static Halfspace first_cut(double alpha);
  /// Line through (1, alpha^2i) and (-1, alpha^(2i+1)).
  static Halfspace right_cut(double alpha, std::size_t i);
  /// Line through (-1, alpha^(2i+1)) and (1, alpha^(2i+2)).
  static Halfspace left_cut(double alpha, std::size_t i);
  /// The walls intersected with one cut.
  static Polytope body(const Halfspace& cut);
  /// The first request.
  static Polytope first_body(double alpha);

 private:
  Vector start_;
  std::size_t max_requests_;
  std::size_t cap_;
  AdversaryState state_;
};

/// Nested polytopes shrinking towards a hidden point. Batch 0 is a box
/// around the point; each later batch adds one to three cuts that keep it.
NestedInstance gen_random_nested(std::size_t d, std::size_t n, std::uint64_t seed);

/// The hidden point gen_random_nested keeps feasible for a given seed.
Vector random_nested_anchor(std::size_t d, std::uint64_t seed);

/// Online covering constraints a.x >= b with a >= 0 and b > 0, starting at
/// the origin. The bodies are unbounded.
NestedInstance gen_covering_lp(std::size_t d, std::size_t n, std::uint64_t seed);

}  // namespace nestchase
