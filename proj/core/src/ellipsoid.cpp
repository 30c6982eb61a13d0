#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "nestchase/convex_ops.hpp"
#include "nestchase/errors.hpp"

namespace nestchase {

double Ellipsoid::level(const Vector& x) const {
  const Vector r = x - center;
  return r.dot(shape * r);
}

namespace {

// Weighted moment step of the barycentric ascent: returns the leverage
// M_i = q_i^T X(u)^-1 q_i of the lifted points.
Eigen::VectorXd leverages(const Eigen::MatrixXd& lifted, const Eigen::VectorXd& u) {
  const Eigen::MatrixXd x = lifted * u.asDiagonal() * lifted.transpose();
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(x);
  const Eigen::MatrixXd solved = ldlt.solve(lifted);
  return (lifted.array() * solved.array()).colwise().sum().transpose();
}

}  // namespace

Ellipsoid min_volume_enclosing_ellipsoid(std::span<const Vector> points, const EllipsoidOptions& options) {
  if (points.empty()) throw ContractViolation("mvee: empty point list");
  if (!(options.eps > 0.0)) throw ContractViolation("mvee: eps must be positive");
  const auto d = points.front().size();
  const auto n = static_cast<Eigen::Index>(points.size());
  for (const auto& p : points) {
    if (p.size() != d) throw ContractViolation("mvee: mixed dimensions");
  }
  if (n < d + 1) throw DegenerateError("mvee: fewer than d+1 points");

  // The ellipsoid map commutes with affine maps, so solve in coordinates
  // where the cloud is centered and whitened. This keeps very flat bodies
  // well conditioned.
  Eigen::MatrixXd raw(d, n);
  for (Eigen::Index i = 0; i < n; ++i) raw.col(i) = points[static_cast<std::size_t>(i)];
  const Vector mean = raw.rowwise().mean();
  const Vector extent = raw.rowwise().maxCoeff() - raw.rowwise().minCoeff();
  if ((extent.array() <= 0.0).any()) throw DegenerateError("mvee: points lie in an axis-aligned hyperplane");
  const Eigen::MatrixXd scaled = extent.cwiseInverse().asDiagonal() * (raw.colwise() - mean);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeFullU);
  const Vector sigma = svd.singularValues();
  if (sigma(d - 1) <= 1e-10 * sigma(0)) throw DegenerateError("mvee: points do not span R^d");
  const Eigen::MatrixXd to_work =
      sigma.cwiseInverse().asDiagonal() * svd.matrixU().transpose() * extent.cwiseInverse().asDiagonal();
  const Eigen::MatrixXd q = to_work * (raw.colwise() - mean);

  Eigen::MatrixXd lifted(d + 1, n);
  lifted.topRows(d) = q;
  lifted.row(d).setOnes();

  const double dd = static_cast<double>(d);
  const double target = options.eps * dd / (dd + 1.0);
  Eigen::VectorXd u = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  bool converged = false;
  double gap = 0.0;
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    const Eigen::VectorXd m = leverages(lifted, u);
    Eigen::Index up = 0;
    const double m_up = m.maxCoeff(&up);
    Eigen::Index down = -1;
    double m_down = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (u(i) > 0.0 && (down < 0 || m(i) < m_down)) {
        down = i;
        m_down = m(i);
      }
    }
    const double eps_up = m_up / (dd + 1.0) - 1.0;
    const double eps_down = 1.0 - m_down / (dd + 1.0);
    gap = std::max(eps_up, eps_down);
    if (gap <= target) {
      converged = true;
      break;
    }
    if (eps_up > eps_down) {
      const double step = (m_up - (dd + 1.0)) / ((dd + 1.0) * (m_up - 1.0));
      u *= 1.0 - step;
      u(up) += step;
    } else {
      const double limit = u(down) / (1.0 - u(down));
      const double step = std::min((dd + 1.0 - m_down) / ((dd + 1.0) * (m_down - 1.0)), limit);
      u *= 1.0 + step;
      u(down) = step >= limit ? 0.0 : u(down) - step;
    }
  }
  if (!converged) {
    throw ConvergenceError("mvee: iteration cap reached", q * u, gap);
  }

  const Vector c_work = q * u;
  const Eigen::MatrixXd centered = q.colwise() - c_work;
  const Eigen::MatrixXd sigma_work = centered * u.asDiagonal() * centered.transpose();
  Eigen::MatrixXd shape_work = sigma_work.inverse() / dd;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    worst = std::max(worst, centered.col(i).dot(shape_work * centered.col(i)));
  }
  if (worst > 1.0 + options.eps) shape_work *= (1.0 + options.eps) / worst;

  Ellipsoid e;
  e.center = mean + to_work.inverse() * c_work;
  e.shape = to_work.transpose() * shape_work * to_work;
  e.shape = 0.5 * (e.shape + e.shape.transpose());
  return e;
}

}  // namespace nestchase
