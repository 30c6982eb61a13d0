#include <gtest/gtest.h>

#include <cmath>

#include "nestchase/adversary.hpp"
#include "nestchase/errors.hpp"
#include "nestchase/geometry.hpp"
#include "support/oracles.hpp"
#include "support/random_bodies.hpp"

namespace {

using namespace nestchase;
using nestchase::testing::pairwise_vertices;
using nestchase::testing::random_polytope;
using nestchase::testing::Rng;
using nestchase::testing::same_point_set;

Polytope unit_box(std::size_t d) { return Polytope::cube(Vector::Zero(static_cast<Eigen::Index>(d)), 1.0); }

TEST(Halfspace, RejectsZeroNormal) {
  EXPECT_THROW(Halfspace(Vector::Zero(2), 1.0), ContractViolation);
  EXPECT_THROW(Halfspace(Vector{{1.0, NAN}}, 1.0), ContractViolation);
}

TEST(Halfspace, AtLeastFlipsSign) {
  const auto h = Halfspace::at_least(Vector{{1.0, 0.0}}, 1.0);
  EXPECT_EQ(h.normal(), Vector({{-1.0, 0.0}}));
  EXPECT_EQ(h.offset(), -1.0);
}

TEST(Contains, UnitBox) {
  const auto box = unit_box(2);
  EXPECT_TRUE(contains(box, Vector::Zero(2), 0.0));
  EXPECT_FALSE(contains(box, Vector{{1.0 + 1e-3, 0.0}}, 1e-9));
  EXPECT_THROW(contains(box, Vector::Zero(3)), ContractViolation);
}

TEST(Contains, OriginInFirstAdversaryBody) {
  EXPECT_TRUE(contains(Section4Adversary::first_body(0.5), Vector::Zero(2), 0.0));
}

TEST(Emptiness, DetectsDisjointHalfspaces) {
  Polytope p(2, {Halfspace(Vector{{1.0, 0.0}}, 0.0), Halfspace::at_least(Vector{{1.0, 0.0}}, 1.0)});
  EXPECT_TRUE(is_empty(p));
  EXPECT_FALSE(is_empty(unit_box(3)));
  EXPECT_FALSE(is_empty(Polytope(2)));
  // A single point is not empty.
  Polytope point(1, {Halfspace(Vector{{1.0}}, 2.0), Halfspace::at_least(Vector{{1.0}}, 2.0)});
  EXPECT_FALSE(is_empty(point));
}

TEST(Vertices, UnitBox) {
  const auto vs = vertices(unit_box(2));
  EXPECT_TRUE(same_point_set(vs, {Vector{{1.0, 1.0}}, Vector{{1.0, -1.0}}, Vector{{-1.0, 1.0}}, Vector{{-1.0, -1.0}}},
                             1e-12));
}

TEST(Vertices, FirstAdversaryBodyWithoutTilt) {
  // With alpha = 0 the cut is 2y <= x + 1: a triangle.
  const Polytope p(2, {Section4Adversary::floor(), Section4Adversary::left_wall(), Section4Adversary::right_wall(),
                       Halfspace(Vector{{-1.0, 2.0}}, 1.0)});
  EXPECT_TRUE(same_point_set(vertices(p), {Vector{{1.0, 0.0}}, Vector{{1.0, 1.0}}, Vector{{-1.0, 0.0}}}, 1e-12));
}

TEST(Vertices, MatchPairwiseOracleOnRandomPolygons) {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Polytope p = random_polytope(2, 6, nestchase::testing::random_point(2, -2, 2, rng), 1.0, rng);
    EXPECT_TRUE(same_point_set(vertices(p), pairwise_vertices(p), 1e-8)) << "trial " << trial;
  }
}

TEST(Vertices, AreFeasibleAndDistinct) {
  Rng rng(12);
  for (std::size_t d = 1; d <= 4; ++d) {
    for (int trial = 0; trial < 20; ++trial) {
      const Polytope p = random_polytope(d, 3 * d, Vector::Zero(static_cast<Eigen::Index>(d)), 1.0, rng);
      const auto vs = vertices(p);
      ASSERT_GE(vs.size(), d + 1);
      for (std::size_t i = 0; i < vs.size(); ++i) {
        EXPECT_TRUE(contains(p, vs[i], kAssertTol));
        for (std::size_t j = i + 1; j < vs.size(); ++j) EXPECT_GT((vs[i] - vs[j]).norm(), 1e-9);
      }
    }
  }
}

TEST(Vertices, DegenerateApexReportedOnce) {
  // Square pyramid: four facets meet at the apex.
  Polytope p(3);
  p.add(Halfspace::at_least(Vector{{0.0, 0.0, 1.0}}, 0.0));
  for (double sx : {-1.0, 1.0}) {
    p.add(Halfspace(Vector{{sx, 0.0, 1.0}}, 1.0));
    p.add(Halfspace(Vector{{0.0, sx, 1.0}}, 1.0));
  }
  EXPECT_EQ(vertices(p).size(), 5u);
}

TEST(Vertices, EmptyAndUnbounded) {
  Polytope empty(2, {Halfspace(Vector{{1.0, 0.0}}, -1.0), Halfspace(Vector{{-1.0, 0.0}}, -1.0)});
  EXPECT_TRUE(vertices(empty).empty());
  EXPECT_TRUE(vertices(Polytope::empty(2)).empty());
  EXPECT_THROW(vertices(Polytope(2, {Halfspace::at_least(Vector{{1.0, 0.0}}, 1.0)})), UnboundedError);
  EXPECT_THROW(vertices(unit_box(7)), ContractViolation);
}

TEST(Vertices, PruningKeepsTheSameAnswer) {
  Rng rng(13);
  const Polytope p = random_polytope(3, 40, Vector::Zero(3), 1.0, rng);
  VertexOptions eager;
  eager.prune_threshold = 0;
  VertexOptions never;
  never.prune_threshold = static_cast<std::size_t>(-1);
  EXPECT_TRUE(same_point_set(vertices(p, eager), vertices(p, never), 1e-9));
}

TEST(IsBounded, Examples) {
  EXPECT_FALSE(is_bounded(Polytope(2, {Halfspace::at_least(Vector{{1.0, 0.0}}, 1.0)})));
  EXPECT_TRUE(is_bounded(unit_box(2)));
  EXPECT_TRUE(is_bounded(Section4Adversary::first_body(0.5)));
  Polytope empty(1, {Halfspace(Vector{{1.0}}, -1.0), Halfspace(Vector{{-1.0}}, -1.0)});
  EXPECT_TRUE(is_bounded(empty));
}

TEST(Support, BoxAndErrors) {
  EXPECT_NEAR(support(unit_box(3), Vector{{1.0, 1.0, -1.0}}), 3.0, 1e-12);
  EXPECT_THROW(support(Polytope(1), Vector{{1.0}}), UnboundedError);
}

TEST(RemoveRedundant, DropsImpliedRows) {
  Polytope p = unit_box(2);
  p.add(Halfspace(Vector{{1.0, 1.0}}, 5.0));
  p.add(Halfspace(Vector{{1.0, 0.0}}, 1.0));
  const auto q = remove_redundant(p);
  EXPECT_EQ(q.size(), 4u);
  EXPECT_TRUE(same_point_set(vertices(p), vertices(q), 1e-12));
}

TEST(Slice, UnitBoxAtZero) {
  const auto cut = slice(unit_box(2), 0, 0.0, Vector::Zero(2));
  ASSERT_EQ(cut.polytope.dimension(), 1u);
  EXPECT_TRUE(same_point_set(vertices(cut.polytope), {Vector{{-1.0}}, Vector{{1.0}}}, 1e-12));
}

TEST(Slice, SubstitutesFixedCoordinate) {
  const Polytope p(2, {Halfspace(Vector{{1.0, 1.0}}, 1.0)});
  const auto cut = slice(p, 0, 0.5, Vector{{0.5, 0.0}});
  ASSERT_EQ(cut.polytope.size(), 1u);
  const auto& h = cut.polytope.constraints()[0];
  EXPECT_NEAR(h.offset() / h.normal()(0), 0.5, 1e-15);
}

TEST(Slice, AdversaryBodyOnTheFloor) {
  const auto cut = slice(Section4Adversary::first_body(0.5), 1, 0.0, Vector::Zero(2));
  EXPECT_TRUE(same_point_set(vertices(cut.polytope), {Vector{{-1.0}}, Vector{{1.0}}}, 1e-12));
}

TEST(Slice, UnsatisfiableConstantRowMarksEmpty) {
  // x <= -1 sliced at x = 0 leaves 0 <= -1.
  const Polytope p(2, {Halfspace(Vector{{1.0, 0.0}}, -1.0)});
  const auto cut = slice(p, 0, 0.0, Vector::Zero(2));
  EXPECT_TRUE(cut.polytope.marked_empty());
  EXPECT_TRUE(is_empty(cut.polytope));
}

TEST(Slice, EmbeddedVerticesStayFeasibleAndOnTheHyperplane) {
  Rng rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    const Polytope p = random_polytope(3, 8, Vector::Zero(3), 1.0, rng);
    const std::size_t axis = static_cast<std::size_t>(trial % 3);
    const double value = std::uniform_real_distribution<double>(-0.5, 0.5)(rng);
    const auto cut = slice(p, axis, value, Vector::Zero(3));
    for (const auto& y : vertices(cut.polytope)) {
      const Vector x = cut.chart.embed(y);
      EXPECT_EQ(x(static_cast<Eigen::Index>(axis)), value);
      EXPECT_TRUE(contains(p, x, kAssertTol));
      EXPECT_EQ(cut.chart.project(x), y);
    }
  }
}

TEST(ClipBox, BoundsAHalfspace) {
  const auto p = clip_box(Polytope(2, {Halfspace::at_least(Vector{{1.0, 0.0}}, 1.0)}), Vector::Zero(2), 2.0);
  EXPECT_TRUE(is_bounded(p));
  EXPECT_TRUE(same_point_set(vertices(p), {Vector{{1.0, 2.0}}, Vector{{1.0, -2.0}}, Vector{{2.0, 2.0}}, Vector{{2.0, -2.0}}},
                             1e-12));
  EXPECT_TRUE(vertices(clip_box(Polytope::empty(2), Vector::Zero(2), 1.0)).empty());
  EXPECT_THROW(clip_box(Polytope(2), Vector::Zero(2), 0.0), ContractViolation);
}

TEST(ClipBox, StaysInsideTheCircumscribedBall) {
  Rng rng(15);
  for (std::size_t d = 1; d <= 4; ++d) {
    for (int trial = 0; trial < 10; ++trial) {
      const Vector c = nestchase::testing::random_point(d, -1, 1, rng);
      const double r = 0.5 + trial * 0.1;
      const Polytope p =
          clip_box(random_polytope(d, 2 * d, nestchase::testing::random_point(d, -1, 1, rng), 1.0, rng), c, r);
      for (const auto& v : vertices(p)) EXPECT_LE((v - c).norm(), r * std::sqrt(double(d)) * (1 + 1e-12));
    }
  }
}

TEST(ContainsBody, Boxes) {
  EXPECT_TRUE(contains_body(unit_box(2), Polytope::cube(Vector::Zero(2), 0.5)));
  EXPECT_FALSE(contains_body(Polytope::cube(Vector::Zero(2), 0.5), unit_box(2)));
  EXPECT_THROW(contains_body(unit_box(2), Polytope(2)), UnboundedError);
}

TEST(ContainsBody, PartialOrderOnRandomChains) {
  Rng rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    const Polytope a = random_polytope(2, 5, Vector::Zero(2), 1.0, rng);
    Polytope b = a;
    b.add(Halfspace(nestchase::testing::random_unit(2, rng), 0.3));
    Polytope c = b;
    c.add(Halfspace(nestchase::testing::random_unit(2, rng), 0.2));
    EXPECT_TRUE(contains_body(a, a));
    EXPECT_TRUE(contains_body(a, b));
    EXPECT_TRUE(contains_body(b, c));
    EXPECT_TRUE(contains_body(a, c));
  }
}

TEST(ContainsBody, AdversaryStreamIsNested) {
  Section4Adversary adv(0.5);
  Vector pos{{0.0, 1.0}};
  std::optional<Polytope> prev;
  for (int t = 0; t < 10; ++t) {
    auto next = adv.next(pos);
    ASSERT_TRUE(next);
    if (prev) EXPECT_TRUE(contains_body(*prev, *next, 1e-9)) << "t=" << t;
    // Sit on the left or the right end of the top edge to force a cut.
    pos = Vector{{t % 2 == 0 ? 0.9 : -0.9, support(*next, Vector{{0.0, 1.0}}) * 0.999}};
    prev = *next;
  }
}

}  // namespace
