#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/LU>
#include <Eigen/QR>

#include "nestchase/convex_ops.hpp"
#include "nestchase/errors.hpp"

namespace nestchase {
namespace {

constexpr double kCertifyFeasTol = 1e-12;

struct UnitRows {
  Eigen::MatrixXd normals;  // d x m, unit columns
  Eigen::VectorXd offsets;
};

UnitRows unit_rows(const Polytope& p) {
  const auto d = static_cast<Eigen::Index>(p.dimension());
  const auto m = static_cast<Eigen::Index>(p.size());
  UnitRows r{Eigen::MatrixXd(d, m), Eigen::VectorXd(m)};
  for (Eigen::Index j = 0; j < m; ++j) {
    const auto& h = p.constraints()[static_cast<std::size_t>(j)];
    const double n = h.normal().norm();
    r.normals.col(j) = h.normal() / n;
    r.offsets(j) = h.offset() / n;
  }
  return r;
}

// Least-distance point from v on the affine set {a_i.z = b_i, i in active}.
// Grows and shrinks the active set until the KKT conditions hold or the
// attempt budget runs out.
std::optional<Vector> certify(const Polytope& p, const UnitRows& rows, const Vector& v, const Vector& x,
                              double scale) {
  const auto m = rows.normals.cols();
  const auto d = rows.normals.rows();
  std::vector<Eigen::Index> active;
  const Eigen::VectorXd slack_x = rows.offsets - rows.normals.transpose() * x;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (slack_x(i) <= 1e-6 * scale) active.push_back(i);
  }

  const Eigen::Index budget = 4 * d + 2 * static_cast<Eigen::Index>(active.size()) + 8;
  for (Eigen::Index attempt = 0; attempt < budget; ++attempt) {
    Vector z = v;
    if (!active.empty()) {
      const auto k = static_cast<Eigen::Index>(active.size());
      Eigen::MatrixXd n(d, k);
      Eigen::VectorXd b(k);
      for (Eigen::Index j = 0; j < k; ++j) {
        n.col(j) = rows.normals.col(active[static_cast<std::size_t>(j)]);
        b(j) = rows.offsets(active[static_cast<std::size_t>(j)]);
      }
      const Eigen::MatrixXd gram = n.transpose() * n;
      const Eigen::VectorXd rhs = n.transpose() * v - b;
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(gram);
      cod.setThreshold(1e-12);
      const Eigen::VectorXd lambda = cod.solve(rhs);
      z = v - n * lambda;
      if ((n.transpose() * z - b).cwiseAbs().maxCoeff() > 1e-9 * scale) return std::nullopt;
      Eigen::Index worst = 0;
      const double most_negative = lambda.minCoeff(&worst);
      if (most_negative < -1e-12 * scale) {
        active.erase(active.begin() + worst);
        continue;
      }
    }
    const Eigen::VectorXd slack = rows.offsets - rows.normals.transpose() * z;
    Eigen::Index worst = 0;
    const double min_slack = slack.minCoeff(&worst);
    if (min_slack < -kCertifyFeasTol * std::max(1.0, std::abs(rows.offsets(worst)))) {
      if (std::find(active.begin(), active.end(), worst) != active.end()) return std::nullopt;
      active.push_back(worst);
      continue;
    }
    if (!contains(p, z, kCertifyFeasTol)) return std::nullopt;
    return z;
  }
  return std::nullopt;
}

// Dual active-set method for min |x - v|^2 subject to the unit rows, with
// identity Hessian. Starts from v and repeatedly adds the most violated row,
// moving along the projection of its normal onto the null space of the
// active normals and dropping rows whose multipliers would turn negative.
// Exact up to round-off and finite in practice; nullopt on numerical
// trouble so the caller can fall back to cyclic projections.
std::optional<Vector> active_set_projection(const UnitRows& rows, const Vector& v, std::size_t max_steps) {
  const auto m = rows.normals.cols();
  const auto d = rows.normals.rows();
  Vector x = v;
  std::vector<Eigen::Index> active;
  std::vector<double> mult;

  auto violation = [&](Eigen::Index i) { return rows.normals.col(i).dot(x) - rows.offsets(i); };

  std::size_t steps = 0;
  for (;;) {
    Eigen::Index add = -1;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double excess = violation(i) / std::max(1.0, std::abs(rows.offsets(i)));
      if (excess > kCertifyFeasTol && excess > worst) {
        worst = excess;
        add = i;
      }
    }
    if (add < 0) return x;
    if (std::find(active.begin(), active.end(), add) != active.end()) return std::nullopt;

    const Vector np = rows.normals.col(add);
    double added_mult = 0.0;
    for (;;) {
      if (++steps > max_steps) return std::nullopt;
      const auto k = static_cast<Eigen::Index>(active.size());
      Vector z = -np;
      Eigen::VectorXd r(k);
      if (k > 0) {
        Eigen::MatrixXd n(d, k);
        for (Eigen::Index j = 0; j < k; ++j) n.col(j) = rows.normals.col(active[static_cast<std::size_t>(j)]);
        const Eigen::MatrixXd gram = n.transpose() * n;
        Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
        if (lu.rank() < k) return std::nullopt;
        r = lu.solve(n.transpose() * np);
        z += n * r;
      }
      const double zz = z.squaredNorm();
      const bool dependent = zz <= 1e-14;

      double partial = std::numeric_limits<double>::infinity();
      Eigen::Index drop = -1;
      for (Eigen::Index j = 0; j < k; ++j) {
        if (r(j) > 1e-14) {
          const double t = mult[static_cast<std::size_t>(j)] / r(j);
          if (t < partial) {
            partial = t;
            drop = j;
          }
        }
      }
      const double full = dependent ? std::numeric_limits<double>::infinity() : std::max(0.0, violation(add)) / zz;
      const double t = std::min(partial, full);
      // A dependent normal with nothing to release means the rows share no
      // point, which the emptiness test already ruled out.
      if (!std::isfinite(t)) return std::nullopt;

      if (!dependent) x += t * z;
      for (Eigen::Index j = 0; j < k; ++j) mult[static_cast<std::size_t>(j)] -= t * r(j);
      added_mult += t;

      if (t == full) {
        active.push_back(add);
        mult.push_back(added_mult);
        break;
      }
      active.erase(active.begin() + drop);
      mult.erase(mult.begin() + drop);
    }
  }
}

}  // namespace

Vector project(const Polytope& p, const Vector& v, const ProjectOptions& options) {
  if (static_cast<std::size_t>(v.size()) != p.dimension()) {
    throw ContractViolation("project: dimension mismatch");
  }
  if (!v.allFinite()) throw ContractViolation("project: non-finite point");
  if (p.marked_empty() || is_empty(p)) throw InfeasibleError("project: polytope is empty");
  if (contains(p, v, 0.0)) return v;

  const UnitRows rows = unit_rows(p);
  const auto m = rows.normals.cols();
  if (options.active_set) {
    const std::size_t budget = 50 * (static_cast<std::size_t>(m) + p.dimension()) + 100;
    if (auto exact = active_set_projection(rows, v, budget); exact && contains(p, *exact, kInternalTol)) {
      return *exact;
    }
  }
  const double scale = std::max(1.0, v.norm());
  const double stop = options.tol * scale;
  const std::size_t certify_every = std::max<std::size_t>(1, options.certify_every);

  Vector x = v;
  Eigen::MatrixXd increments = Eigen::MatrixXd::Zero(v.size(), m);
  Vector y(v.size());
  double change = 0.0;
  for (std::size_t sweep = 1; sweep <= options.max_iterations; ++sweep) {
    const Vector previous = x;
    for (Eigen::Index i = 0; i < m; ++i) {
      y = x + increments.col(i);
      const double violation = rows.normals.col(i).dot(y) - rows.offsets(i);
      if (violation > 0.0) {
        x = y - violation * rows.normals.col(i);
      } else {
        x = y;
      }
      increments.col(i) = y - x;
    }
    change = (x - previous).norm();
    const bool settled = change < stop;
    if (settled || sweep % certify_every == 0) {
      if (auto exact = certify(p, rows, v, x, scale)) return *exact;
    }
    if (settled && contains(p, x, kInternalTol)) return x;
  }
  throw ConvergenceError("project: Dykstra iteration cap reached", x, change);
}

}  // namespace nestchase
