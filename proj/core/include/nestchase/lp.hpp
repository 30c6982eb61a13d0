#pragma once

#include <Eigen/Core>

namespace nestchase::lp {

enum class Status { optimal, infeasible, unbounded };

struct Solution {
  Status status = Status::infeasible;
  double value = 0.0;
  Eigen::VectorXd y;  // primal point of the standard form, when optimal
};

/// Dense two-phase tableau simplex for
///
///   minimize cost . y  subject to  A y = rhs,  y >= 0.
///
/// Intended for few rows (the dual of a low-dimensional LP) and up to a few
/// hundred columns. Dantzig pricing, falling back to Bland's rule after a
/// run of degenerate pivots.
Solution minimize_standard_form(const Eigen::MatrixXd& a, const Eigen::VectorXd& rhs,
                                const Eigen::VectorXd& cost);

}  // namespace nestchase::lp
