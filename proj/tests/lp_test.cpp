#include <gtest/gtest.h>

#include "nestchase/errors.hpp"
#include "nestchase/lp.hpp"

namespace {

using nestchase::lp::minimize_standard_form;
using nestchase::lp::Status;

TEST(StandardFormLp, SolvesSmallProgram) {
  // min -x - y  s.t. x + s1 = 2, y + s2 = 3
  Eigen::MatrixXd a(2, 4);
  a << 1, 0, 1, 0, 0, 1, 0, 1;
  const Eigen::VectorXd rhs = Eigen::Vector2d(2, 3);
  Eigen::VectorXd cost(4);
  cost << -1, -1, 0, 0;
  const auto sol = minimize_standard_form(a, rhs, cost);
  ASSERT_EQ(sol.status, Status::optimal);
  EXPECT_NEAR(sol.value, -5.0, 1e-12);
  EXPECT_NEAR(sol.y(0), 2.0, 1e-12);
  EXPECT_NEAR(sol.y(1), 3.0, 1e-12);
}

TEST(StandardFormLp, DetectsInfeasibility) {
  // x + y = -1 with x, y >= 0
  Eigen::MatrixXd a(1, 2);
  a << 1, 1;
  const auto sol = minimize_standard_form(a, Eigen::VectorXd::Constant(1, -1.0), Eigen::Vector2d(1, 1));
  EXPECT_EQ(sol.status, Status::infeasible);
}

TEST(StandardFormLp, DetectsUnboundedness) {
  // min -x s.t. x - y = 1
  Eigen::MatrixXd a(1, 2);
  a << 1, -1;
  const auto sol = minimize_standard_form(a, Eigen::VectorXd::Constant(1, 1.0), Eigen::Vector2d(-1, 0));
  EXPECT_EQ(sol.status, Status::unbounded);
}

TEST(StandardFormLp, HandlesRedundantEqualities) {
  Eigen::MatrixXd a(2, 2);
  a << 1, 1, 2, 2;
  const auto sol = minimize_standard_form(a, Eigen::Vector2d(1, 2), Eigen::Vector2d(1, 3));
  ASSERT_EQ(sol.status, Status::optimal);
  EXPECT_NEAR(sol.value, 1.0, 1e-12);
}

TEST(StandardFormLp, SurvivesDegenerateVertex) {
  // Many constraints through one point: min -y over x+y<=1, -x+y<=1, y<=1
  // written as equalities with slacks; several bases share the optimum.
  Eigen::MatrixXd a(3, 5);
  a << 1, 1, 1, 0, 0, -1, 1, 0, 1, 0, 0, 1, 0, 0, 1;
  Eigen::VectorXd cost(5);
  cost << 0, -1, 0, 0, 0;
  // x is free in the original; split x = x+ only (x >= 0 here).
  const auto sol = minimize_standard_form(a, Eigen::Vector3d(1, 1, 1), cost);
  ASSERT_EQ(sol.status, Status::optimal);
  EXPECT_NEAR(sol.value, -1.0, 1e-12);
}

}  // namespace
