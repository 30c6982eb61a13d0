#include "nestchase/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "nestchase/errors.hpp"

namespace nestchase::lp {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-11;
constexpr double kPhaseOneTol = 1e-9;

// Tableau layout: rows [0, m) are constraints, row m holds reduced costs.
// Column `width - 1` is the right-hand side.
class Tableau {
 public:
  Tableau(const Eigen::MatrixXd& a, const Eigen::VectorXd& rhs)
      : rows_(a.rows()), structural_(a.cols()), width_(a.cols() + a.rows() + 1),
        t_(Eigen::MatrixXd::Zero(a.rows() + 1, a.cols() + a.rows() + 1)),
        basis_(static_cast<std::size_t>(a.rows())), active_(static_cast<std::size_t>(a.rows()), true) {
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const double sign = rhs(i) < 0.0 ? -1.0 : 1.0;
      t_.row(i).head(structural_) = sign * a.row(i);
      t_(i, structural_ + i) = 1.0;
      t_(i, width_ - 1) = sign * rhs(i);
      basis_[static_cast<std::size_t>(i)] = structural_ + i;
    }
  }

  // Phase one: minimize the sum of artificials.
  double phase_one() {
    t_.row(rows_).setZero();
    for (Eigen::Index i = 0; i < rows_; ++i) {
      t_.row(rows_).head(structural_) -= t_.row(i).head(structural_);
      t_(rows_, width_ - 1) -= t_(i, width_ - 1);
    }
    iterate(width_ - 1, true);
    return -t_(rows_, width_ - 1);
  }

  // Pivots remaining artificials out of the basis; rows with no structural
  // entry are linearly dependent and get deactivated.
  void expel_artificials() {
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < structural_) continue;
      Eigen::Index col = -1;
      double best = kPivotTol;
      for (Eigen::Index j = 0; j < structural_; ++j) {
        if (std::abs(t_(i, j)) > best) {
          best = std::abs(t_(i, j));
          col = j;
        }
      }
      if (col >= 0) {
        pivot(i, col);
      } else {
        active_[static_cast<std::size_t>(i)] = false;
      }
    }
  }

  // Phase two with the given cost; returns false when unbounded.
  bool phase_two(const Eigen::VectorXd& cost) {
    t_.row(rows_).setZero();
    t_.row(rows_).head(structural_) = cost.transpose();
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (!active_[static_cast<std::size_t>(i)]) continue;
      const Eigen::Index b = basis_[static_cast<std::size_t>(i)];
      if (b < structural_) {
        const double cb = cost(b);
        if (cb != 0.0) t_.row(rows_) -= cb * t_.row(i);
      }
    }
    return iterate(structural_, false);
  }

  double objective() const { return -t_(rows_, width_ - 1); }

  Eigen::VectorXd point() const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(structural_);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const Eigen::Index b = basis_[static_cast<std::size_t>(i)];
      if (active_[static_cast<std::size_t>(i)] && b < structural_) y(b) = t_(i, width_ - 1);
    }
    return y;
  }

 private:
  // Runs pivots over entering candidates [0, limit). Returns false when an
  // improving column has no positive entry (unbounded). Phase one is bounded
  // below by zero, so such a column there is round-off and is skipped until
  // the next pivot.
  bool iterate(Eigen::Index limit, bool bounded_below) {
    const Eigen::Index max_pivots = 50 * (width_ + rows_) + 1000;
    Eigen::Index degenerate_run = 0;
    std::vector<bool> skipped(static_cast<std::size_t>(limit), false);
    for (Eigen::Index it = 0; it < max_pivots; ++it) {
      const bool bland = degenerate_run > rows_ + 10;
      Eigen::Index enter = -1;
      double most_negative = -kCostTol;
      for (Eigen::Index j = 0; j < limit; ++j) {
        if (skipped[static_cast<std::size_t>(j)] || is_basic(j)) continue;
        const double r = t_(rows_, j);
        if (r < most_negative) {
          enter = j;
          if (bland) break;
          most_negative = r;
        }
      }
      if (enter < 0) return true;

      Eigen::Index leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < rows_; ++i) {
        if (!active_[static_cast<std::size_t>(i)]) continue;
        const double e = t_(i, enter);
        if (e <= kPivotTol) continue;
        const double ratio = t_(i, width_ - 1) / e;
        if (ratio < best_ratio - 1e-14 ||
            (ratio <= best_ratio + 1e-14 && leave >= 0 &&
             basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          best_ratio = ratio;
          leave = i;
        }
      }
      if (leave < 0) {
        if (!bounded_below) return false;
        skipped[static_cast<std::size_t>(enter)] = true;
        continue;
      }
      std::fill(skipped.begin(), skipped.end(), false);
      degenerate_run = best_ratio <= 1e-14 ? degenerate_run + 1 : 0;
      pivot(leave, enter);
    }
    throw InvariantError("simplex: pivot limit exceeded");
  }

  bool is_basic(Eigen::Index col) const {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (active_[i] && basis_[i] == col) return true;
    }
    return false;
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    t_.row(row) /= t_(row, col);
    for (Eigen::Index i = 0; i <= rows_; ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f != 0.0) t_.row(i) -= f * t_.row(row);
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  Eigen::Index rows_;
  Eigen::Index structural_;
  Eigen::Index width_;
  Eigen::MatrixXd t_;
  std::vector<Eigen::Index> basis_;
  std::vector<bool> active_;
};

}  // namespace

Solution minimize_standard_form(const Eigen::MatrixXd& a, const Eigen::VectorXd& rhs,
                                const Eigen::VectorXd& cost) {
  if (a.rows() != rhs.size() || a.cols() != cost.size()) {
    throw ContractViolation("simplex: inconsistent problem dimensions");
  }
  Tableau tableau(a, rhs);
  const double scale = std::max(1.0, rhs.cwiseAbs().sum());
  if (tableau.phase_one() > kPhaseOneTol * scale) return {Status::infeasible, 0.0, {}};
  tableau.expel_artificials();
  if (!tableau.phase_two(cost)) return {Status::unbounded, -std::numeric_limits<double>::infinity(), {}};
  return {Status::optimal, tableau.objective(), tableau.point()};
}

}  // namespace nestchase::lp
