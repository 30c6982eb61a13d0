#pragma once

#include <vector>

#include "nestchase/convex_ops.hpp"
#include "nestchase/geometry.hpp"

namespace nestchase::testing {

/// Vertices of a planar polytope from every pair of constraint lines,
/// solved by Cramer's rule and kept when feasible within tol.
std::vector<Vector> pairwise_vertices(const Polytope& p, double tol = 1e-9);

/// Closest point by brute force over faces: for every subset of at most d
/// constraints held tight, project onto their affine hull and keep the
/// nearest candidate that is feasible. Exponential; for d <= 3.
Vector project_by_faces(const Polytope& p, const Vector& v);

/// Smallest enclosing ball over every support subset of size 1..d+1.
Ball ball_by_subsets(const std::vector<Vector>& points);

/// True when a and b hold the same points up to tol, in any order.
bool same_point_set(std::vector<Vector> a, std::vector<Vector> b, double tol);

}  // namespace nestchase::testing
