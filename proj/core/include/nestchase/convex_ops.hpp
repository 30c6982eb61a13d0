#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "nestchase/geometry.hpp"

namespace nestchase {

struct Ball {
  Vector center;
  double radius = 0.0;

  /// ||x - center|| <= radius * (1 + rel_tol).
  bool contains(const Vector& x, double rel_tol = 1e-9) const;
};

/// {x : (x - center)^T shape (x - center) <= 1}, shape symmetric positive definite.
struct Ellipsoid {
  Vector center;
  Eigen::MatrixXd shape;

  double level(const Vector& x) const;
};

// ------------------------------------------------------------- projection

struct ProjectOptions {
  /// Try the active-set method first; off runs only the cyclic fallback.
  bool active_set = true;
  /// Cap on fallback Dykstra sweeps over the constraint list.
  std::size_t max_iterations = 100'000;
  /// Stop when a sweep moves the iterate less than tol * max(1, ||v||).
  double tol = 1e-10;
  /// Sweeps between attempts to certify the current active set.
  std::size_t certify_every = 8;
};

/// Euclidean projection of v onto p. The main path is a dual active-set
/// method (add the most violated row, move within the active face, release
/// rows whose multipliers would go negative), which is exact up to
/// round-off. If it stalls numerically, Dykstra's cyclic projections take
/// over; their near-active rows are periodically solved as an
/// equality-constrained least-distance problem and the result is returned
/// once it passes the KKT test.
///
/// Throws InfeasibleError for an empty polytope and ConvergenceError when
/// the fallback reaches its sweep cap.
Vector project(const Polytope& p, const Vector& v, const ProjectOptions& options = {});

// ----------------------------------------------------------- enclosing ball

/// Smallest ball containing `points` (Welzl's move-to-front recursion).
/// Throws ContractViolation for an empty list.
Ball min_enclosing_ball(std::span<const Vector> points);

// ------------------------------------------------------ enclosing ellipsoid

struct EllipsoidOptions {
  double eps = 1e-7;
  std::size_t max_iterations = 100'000;
};

/// (1+eps)-approximate minimum-volume enclosing ellipsoid by barycentric
/// coordinate ascent with away steps. Every point satisfies
/// level(x) <= 1 + eps. Throws DegenerateError when the points do not
/// affinely span R^d.
Ellipsoid min_volume_enclosing_ellipsoid(std::span<const Vector> points,
                                         const EllipsoidOptions& options = {});

// ---------------------------------------------------------------- centroid

enum class CentroidMode { automatic, exact, monte_carlo };

struct CentroidOptions {
  CentroidMode mode = CentroidMode::automatic;
  /// automatic mode samples from this dimension on.
  std::size_t sampling_from_dimension = 4;
  std::size_t samples = 200'000;
  std::uint64_t seed = 0x5eed;
};

struct CentroidEstimate {
  Vector point;
  /// Largest per-coordinate standard error; zero in exact mode.
  double standard_error = 0.0;
  bool exact = true;
};

/// Center of mass of a bounded, full-dimensional polytope. Exact mode
/// (d <= 3) decomposes the body into simplices; Monte Carlo mode uses
/// rejection sampling in the vertex bounding box.
CentroidEstimate centroid(const Polytope& p, const CentroidOptions& options = {});

}  // namespace nestchase
