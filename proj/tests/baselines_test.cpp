#include <gtest/gtest.h>

#include <cmath>

#include "nestchase/adversary.hpp"
#include "nestchase/baselines.hpp"
#include "nestchase/errors.hpp"

namespace {

using namespace nestchase;

const Polytope& first_body() {
  static const Polytope p = Section4Adversary::first_body(0.5);
  return p;
}

TEST(Greedy, StaysWhenFeasibleAndProjectsOtherwise) {
  const Vector inside{{0.0, 0.1}};
  EXPECT_EQ(greedy_step(inside, first_body()), inside);
  const Vector x = greedy_step(Vector{{0.0, 1.0}}, first_body());
  EXPECT_TRUE(contains(first_body(), x, kAssertTol));
  EXPECT_LT(x(1), 1.0);
  EXPECT_THROW(greedy_step(Vector::Zero(2), Polytope::empty(2)), InfeasibleError);
}

TEST(Greedy, MatchesTheChaserOnIntervals) {
  const auto inst = gen_random_nested(1, 20, 3);
  Vector pos = inst.start;
  NestedChaser chaser(inst.start);
  for (const auto& b : inst.bodies()) {
    pos = greedy_step(pos, b);
    EXPECT_NEAR(pos(0), chaser.step(b)(0), 1e-12);
  }
}

TEST(Ellipsoid, MovesToTheEllipsoidCenter) {
  const Vector inside{{0.0, 0.1}};
  EXPECT_EQ(ellipsoid_step(inside, first_body()), inside);
  const Vector c = ellipsoid_step(Vector{{0.0, 1.0}}, first_body());
  EXPECT_NEAR(c(0), 0.24568, 1e-3);
  EXPECT_NEAR(c(1), 0.40571, 1e-3);
}

TEST(Ellipsoid, RightCutsKeepTheSameHorizontalCenter) {
  const double c = ellipsoid_step(Vector{{0.0, 1.0}}, first_body())(0);
  for (std::size_t i = 1; i <= 5; ++i) {
    const auto body = Section4Adversary::body(Section4Adversary::right_cut(0.5, i));
    EXPECT_NEAR(ellipsoid_step(Vector{{0.0, 1.0}}, body)(0), c, 1e-3);
    const auto left = Section4Adversary::body(Section4Adversary::left_cut(0.5, i));
    EXPECT_NEAR(ellipsoid_step(Vector{{0.0, 1.0}}, left)(0), -c, 1e-3);
  }
}

TEST(Ellipsoid, ScalingEquivariance) {
  const Vector c = ellipsoid_step(Vector{{0.0, 1.0}}, first_body());
  const double lambda = 0.125;
  Polytope squashed(2);
  for (const auto& h : first_body().constraints()) {
    squashed.add(Halfspace(Vector{{h.normal()(0), h.normal()(1) / lambda}}, h.offset()));
  }
  const Vector cs = ellipsoid_step(Vector{{0.0, 1.0}}, squashed);
  EXPECT_NEAR(cs(0), c(0), 1e-5);
  EXPECT_NEAR(cs(1), c(1) * lambda, 1e-5);
}

TEST(Centroid, MovesToTheCentroid) {
  const Vector inside{{0.0, 0.1}};
  EXPECT_EQ(centroid_step(inside, first_body()), inside);
  const Vector c = centroid_step(Vector{{0.0, 1.0}}, first_body());
  EXPECT_NEAR(c(0), 1.0 / 9.0, 1e-9);
  EXPECT_NEAR(c(1), 7.0 / 18.0, 1e-9);
}

TEST(Laziness, TinyCoefficientsAreJudgedRelatively) {
  // 2y <= eps (x + 3), deep in the flat end of the adversary family.
  const double eps = 1e-14;
  const Polytope p(2, {Halfspace(Vector{{-eps, 2.0}}, 3 * eps)});
  EXPECT_TRUE(needs_move(p, Vector{{0.0, 2 * eps}}));
  EXPECT_FALSE(needs_move(p, Vector{{0.0, eps}}));
}

TEST(Registry, BuildsEveryName) {
  for (const auto& name : algorithm_names()) {
    auto alg = make_algorithm(name, Vector::Zero(2));
    EXPECT_EQ(alg->name(), name);
  }
  EXPECT_THROW(make_algorithm("work-function", Vector::Zero(2)), ContractViolation);
}

TEST(Registry, ChaseTracksItsOwnPosition) {
  auto alg = make_algorithm("chase", Vector::Zero(2));
  EXPECT_FALSE(alg->needs_bounded_requests());
  const Vector x = alg->step(Vector::Zero(2), Polytope::cube(Vector{{3.0, 0.0}}, 1.0));
  EXPECT_THROW(alg->step(x + Vector::Ones(2), Polytope::cube(Vector{{3.0, 0.0}}, 1.0)), ContractViolation);
}

}  // namespace
