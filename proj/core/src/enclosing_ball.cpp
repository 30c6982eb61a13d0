#include <algorithm>
#include <list>
#include <random>
#include <vector>

#include <Eigen/QR>

#include "nestchase/convex_ops.hpp"
#include "nestchase/errors.hpp"

namespace nestchase {

bool Ball::contains(const Vector& x, double rel_tol) const {
  return (x - center).norm() <= radius * (1.0 + rel_tol);
}

namespace {

// Smallest ball with every support point on its boundary, found in the
// affine hull of the support.
Ball circumball(const std::vector<const Vector*>& support, Eigen::Index d) {
  if (support.empty()) return {Vector::Zero(d), -1.0};
  const Vector& p0 = *support.front();
  const auto k = static_cast<Eigen::Index>(support.size()) - 1;
  if (k == 0) return {p0, 0.0};

  Eigen::MatrixXd q(d, k);
  for (Eigen::Index j = 0; j < k; ++j) q.col(j) = *support[static_cast<std::size_t>(j + 1)] - p0;
  const Eigen::MatrixXd gram = q.transpose() * q;
  const Eigen::VectorXd rhs = 0.5 * gram.diagonal();
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(gram);
  cod.setThreshold(1e-13);
  const Vector center = p0 + q * cod.solve(rhs);
  double r = 0.0;
  for (const Vector* s : support) r = std::max(r, (*s - center).norm());
  return {center, r};
}

class MoveToFront {
 public:
  MoveToFront(std::list<Vector> points, Eigen::Index d) : points_(std::move(points)), d_(d) {}

  Ball solve() {
    std::vector<const Vector*> support;
    return recurse(points_.end(), support);
  }

 private:
  bool inside(const Ball& b, const Vector& x) const {
    if (b.radius < 0.0) return false;
    return (x - b.center).squaredNorm() <= b.radius * b.radius * (1.0 + 1e-12) + 1e-300;
  }

  Ball recurse(std::list<Vector>::iterator end, std::vector<const Vector*>& support) {
    Ball ball = circumball(support, d_);
    if (static_cast<Eigen::Index>(support.size()) == d_ + 1) return ball;
    for (auto it = points_.begin(); it != end;) {
      auto current = it++;
      if (inside(ball, *current)) continue;
      support.push_back(&*current);
      ball = recurse(current, support);
      support.pop_back();
      points_.splice(points_.begin(), points_, current);
    }
    return ball;
  }

  std::list<Vector> points_;
  Eigen::Index d_;
};

}  // namespace

Ball min_enclosing_ball(std::span<const Vector> points) {
  if (points.empty()) throw ContractViolation("min_enclosing_ball: empty point list");
  const auto d = points.front().size();
  for (const auto& p : points) {
    if (p.size() != d) throw ContractViolation("min_enclosing_ball: mixed dimensions");
    if (!p.allFinite()) throw ContractViolation("min_enclosing_ball: non-finite point");
  }

  std::vector<Vector> shuffled(points.begin(), points.end());
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);

  MoveToFront solver(std::list<Vector>(shuffled.begin(), shuffled.end()), d);
  Ball ball = solver.solve();
  double r = 0.0;
  for (const auto& p : points) r = std::max(r, (p - ball.center).norm());
  ball.radius = r;
  return ball;
}

}  // namespace nestchase
