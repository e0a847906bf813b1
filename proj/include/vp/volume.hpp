#pragma once

#include <cstdint>
#include <functional>

#include "vp/body.hpp"
#include "vp/hull.hpp"
#include "vp/report.hpp"

namespace vp {

// Volume of the n-dimensional Euclidean unit ball.
double ball_volume(int n);
// Surface measure of S^{n-1}; equals n * ball_volume(n). The two constants
// are deliberately exposed under distinct names.
double sphere_measure(int n);

// Exact volume via the structural rules (ball, interval, products, l1 sums,
// zonotope determinant formula, polytope triangulation, |det| scaling).
// Throws capability_error when no exact path applies.
double volume(const ConvexBody& k);

// Exact triangulation of a polytopal body (vpolytope, hpolytope, zonotope).
std::vector<Simplex> body_triangulation(const ConvexBody& k);

// Rejection sampling over the bounding cube [-r, r]^n,
// r = max_i support(K, e_i). Deterministic for a given seed.
McEstimate volume_mc(const ConvexBody& k, std::uint64_t samples, std::uint64_t seed);

// Monte Carlo integral of f over K (same bounding-cube rejection scheme).
McEstimate mc_integral(const ConvexBody& k, const std::function<double(const Vec&)>& f,
                       std::uint64_t samples, std::uint64_t seed);

// vol(K*) estimated by the sphere integral of support(K, theta)^(-n),
// scaled by ball_volume(n).
McEstimate polar_volume_sphere(const ConvexBody& k, std::uint64_t sphere_samples,
                               std::uint64_t seed);

// Parallel-section profile g(t) = (n-1)-volume of K cut by <direction,y> = t.
struct SectionProfile {
    Vec direction;              // unit vector
    std::vector<double> ts;     // symmetric grid on [-a, a], odd length
    std::vector<double> g;
    std::vector<double> g_err;  // per-point standard errors (0 on exact paths)
    bool exact = false;
};

// `samples` counts membership draws per grid point on the Monte Carlo path;
// closed forms are used for the ball and for interval-axis sections of
// l1/linf sums.
SectionProfile section_profile(const ConvexBody& k, const Vec& direction, int grid_points,
                               std::uint64_t samples, std::uint64_t seed);

// Midpoint concavity of g^(1/(n-1)) across consecutive grid triples, with
// 3-sigma slack on Monte Carlo profiles.
CheckReport brunn_concavity_check(const SectionProfile& profile, int n);

// Orthogonal projection onto direction^perp, expressed in an orthonormal
// basis of that hyperplane. Zonotopes project to zonotopes, vpolytopes to
// hulls of projected vertices; other variants are a capability error.
ConvexBody projection(const ConvexBody& k, const Vec& direction);

// K cut by the coordinate hyperplane {x_axis = 0}, expressed in the
// remaining coordinates. Structural for balls and l1/linf sums, facet
// restriction for polytopal bodies.
ConvexBody coordinate_section(const ConvexBody& k, int axis);

// Composite Simpson on a uniform grid (odd point count).
double simpson(const std::vector<double>& values, double step);

} // namespace vp
