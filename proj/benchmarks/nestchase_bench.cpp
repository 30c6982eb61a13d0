#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "nestchase/adversary.hpp"
#include "nestchase/chaser.hpp"
#include "nestchase/convex_ops.hpp"
#include "nestchase/geometry.hpp"

namespace {

using namespace nestchase;

// Unit box cut by m random tangent halfspaces of the ball of radius 0.9.
Polytope random_body(int d, int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Polytope p = Polytope::cube(Vector::Zero(d), 1.0);
  for (int i = 0; i < m; ++i) {
    Vector a(d);
    for (int k = 0; k < d; ++k) a(k) = normal(rng);
    a.normalize();
    p.add(Halfspace(a, 0.9));
  }
  return p;
}

void BM_Vertices(benchmark::State& state) {
  const Polytope p = random_body(static_cast<int>(state.range(0)), 12, 1);
  for (auto _ : state) benchmark::DoNotOptimize(vertices(p));
}
BENCHMARK(BM_Vertices)->DenseRange(2, 5);

void BM_Project(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const Polytope p = random_body(d, 12, 2);
  const Vector v = Vector::Constant(d, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(project(p, v));
}
BENCHMARK(BM_Project)->DenseRange(2, 5);

void BM_EnclosingBall(benchmark::State& state) {
  const auto pts = vertices(random_body(static_cast<int>(state.range(0)), 12, 3));
  for (auto _ : state) benchmark::DoNotOptimize(min_enclosing_ball(pts));
}
BENCHMARK(BM_EnclosingBall)->DenseRange(2, 5);

void BM_Ellipsoid(benchmark::State& state) {
  const auto pts = vertices(random_body(static_cast<int>(state.range(0)), 12, 4));
  for (auto _ : state) benchmark::DoNotOptimize(min_volume_enclosing_ellipsoid(pts));
}
BENCHMARK(BM_Ellipsoid)->DenseRange(2, 5);

void BM_ChaseNested(benchmark::State& state) {
  const auto inst = gen_random_nested(static_cast<std::size_t>(state.range(0)), 40, 5);
  const auto bodies = inst.bodies();
  for (auto _ : state) benchmark::DoNotOptimize(chase_nested(inst.start, bodies));
}
BENCHMARK(BM_ChaseNested)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
