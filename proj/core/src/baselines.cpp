#include "nestchase/baselines.hpp"

#include <algorithm>

#include "nestchase/errors.hpp"

namespace nestchase {

bool needs_move(const Polytope& p, const Vector& x, double tol) {
  if (static_cast<std::size_t>(x.size()) != p.dimension()) throw ContractViolation("baseline: dimension mismatch");
  return relative_violation(p, x) > tol;
}

Vector greedy_step(const Vector& pos, const Polytope& p) {
  if (p.marked_empty() || is_empty(p)) throw InfeasibleError("greedy: empty request");
  if (!needs_move(p, pos)) return pos;
  return project(p, pos);
}

Vector ellipsoid_step(const Vector& pos, const Polytope& p, const EllipsoidOptions& options) {
  if (!needs_move(p, pos)) return pos;
  const auto vs = vertices(p);
  if (vs.empty()) throw InfeasibleError("ellipsoid: empty request");
  return min_volume_enclosing_ellipsoid(vs, options).center;
}

Vector centroid_step(const Vector& pos, const Polytope& p, const CentroidOptions& options) {
  if (!needs_move(p, pos)) return pos;
  return centroid(p, options).point;
}

Vector ChaseAlgorithm::step(const Vector& pos, const Polytope& request) {
  if ((pos - chaser_.position()).norm() > kInternalTol * std::max(1.0, pos.norm())) {
    throw ContractViolation("chase: caller position differs from the chaser's own");
  }
  return chaser_.step(request);
}

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{"greedy", "ellipsoid", "centroid", "chase"};
  return names;
}

std::unique_ptr<OnlineAlgorithm> make_algorithm(std::string_view name, const Vector& start,
                                                const AlgorithmOptions& options) {
  if (name == "greedy") return std::make_unique<GreedyAlgorithm>();
  if (name == "ellipsoid") return std::make_unique<EllipsoidAlgorithm>(options.ellipsoid);
  if (name == "centroid") return std::make_unique<CentroidAlgorithm>(options.centroid);
  if (name == "chase") return std::make_unique<ChaseAlgorithm>(start, options.chase);
  throw ContractViolation("unknown algorithm: " + std::string(name));
}

}  // namespace nestchase
