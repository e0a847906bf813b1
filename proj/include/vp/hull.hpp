#pragma once

#include <vector>

#include "vp/linalg.hpp"

namespace vp {

// Facet-defining halfspace <normal, x> <= 1 together with the extreme points.
// Valid for inputs whose convex hull contains the origin in its interior.
struct HullResult {
    std::vector<Vec> vertices;
    std::vector<Vec> facet_normals;
};

// General halfspace <normal, x> <= offset.
struct Halfspace {
    Vec normal;
    double offset = 1.0;
};

// Convex hull of a full-dimensional point set in any position
// (no origin-interior requirement). Output ordering is deterministic.
struct PolyData {
    std::vector<Vec> vertices;
    std::vector<Halfspace> facets;
};
PolyData hull_general(const std::vector<Vec>& points);

// Spec'd hull: requires origin in the interior; facets normalized to offset 1.
// Throws input_error naming the rank when the points do not span, and
// capability_error above the desk-scale enumeration budget.
HullResult hull(const std::vector<Vec>& points);

// Vertices of the polytope {x : <normals[i], x> <= offsets[i]}; the system
// must be bounded. Deterministic (lexicographically sorted) output.
std::vector<Vec> enumerate_vertices(const std::vector<Vec>& normals, const Vec& offsets);

using Simplex = std::vector<Vec>; // dim+1 points

// Fan triangulation from the lexicographically smallest vertex, with facets
// triangulated recursively. `facet_normals` use the offset-1 convention.
std::vector<Simplex> triangulate_vrep(const std::vector<Vec>& vertices,
                                      const std::vector<Vec>& facet_normals);
std::vector<Simplex> triangulate_convex(const std::vector<Vec>& points);

double simplex_volume(const Simplex& s);
double simplices_volume(const std::vector<Simplex>& parts);

// Exact integral of |<u, y>| over a triangulated body (simplices are split
// along the hyperplane <u, y> = 0 where needed).
double integrate_abs_linear(const std::vector<Simplex>& parts, const Vec& u);

// Exact matrix of second moments M_ij = integral of x_i x_j over the body.
Mat second_moment_matrix(const std::vector<Simplex>& parts);

// Zonotope combinatorics for sum_i [-g_i, g_i].
// Unit facet normals, one representative per +- pair.
std::vector<Vec> zonotope_facet_directions(const std::vector<Vec>& generators);
// All distinct sign-pattern endpoints sum_i (+-1) g_i (the vertex candidates);
// capped at 20 generators.
std::vector<Vec> zonotope_vertex_candidates(const std::vector<Vec>& generators);

} // namespace vp
