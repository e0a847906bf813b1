#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "vp/body.hpp"
#include "vp/report.hpp"

namespace vp {

// Volume product P(K) = vol(K) * vol(K*), exact paths.
double mahler(const ConvexBody& k);
// Monte Carlo product with propagated standard error.
McEstimate mahler_mc(const ConvexBody& k, std::uint64_t samples, std::uint64_t seed);
// Layered estimate: exact where possible, rejection sampling for the body,
// and the sphere integral of support^(-n) for the polar when no explicit
// polar realization exists (zonotopes past the 20-generator cap).
McEstimate mahler_estimate(const ConvexBody& k, std::uint64_t samples, std::uint64_t seed);

// Upper bound P(K) <= ball_volume(n)^2 and lower bound P(K) >= 4^n/n!.
// The lower report carries the flag "conjectural bound" for bodies outside
// the zonotope/unconditional classes, where the bound is only sampled.
struct SantaloReport {
    CheckReport upper;
    CheckReport lower;
};
SantaloReport santalo_check(const ConvexBody& k);

// |P(TK) - P(K)| and |P(K) - P(K*)|, both relative; 1e-6 on exact paths,
// 4 sigma when volumes fall back to Monte Carlo.
CheckReport mahler_invariance_check(const ConvexBody& k, const Mat& t, std::uint64_t seed);

// Averaged identity for a zonotope A with generating measure mu:
//   (n+1)|A| Int_mu Int_{A*} |<x,y>| dy dmu = 2|A*| Int_mu |P_perp A| dmu.
// Exact route (triangulated inner integrals); the _mc variant estimates both
// sides with a shared seed and passes within 4 sigma.
CheckReport projection_identity_check(const ConvexBody& z);
CheckReport projection_identity_check_mc(const ConvexBody& z, std::uint64_t samples,
                                         std::uint64_t seed);

// Picks the atom direction x0 for which the per-atom inequality
//   (n+1)|A| Int_{A*}|<x0,y>| dy >= 2|A*| |P_{x0 perp} A|
// is widest; the averaged identity guarantees one exists.
std::pair<Vec, CheckReport> projection_direction_witness(const ConvexBody& z);

// Moment inequality for functions with f^(1/p) concave on their support:
//   Int t f(t) dt <= (p+1)/(p+2) (Int f dt)^2,  f(0) = 1.
// Hypothesis violations raise precondition_error naming the grid triple.
CheckReport concave_moment_check(const std::function<double(double)>& f, double p,
                                 double t_max, int quad_points);

// Slice moment bound for a symmetric body B and unit x:
//   Int_B |<x,y>| dy <= n/(2(n+1)) |B|^2 / |B(x)|,  B(x) the central section.
// Exact where the body admits closed-form sections or a triangulation;
// Monte Carlo otherwise. The report's equality flag marks the cone cases.
CheckReport slice_moment_check(const ConvexBody& b, const Vec& x, std::uint64_t samples,
                               std::uint64_t seed);
// Same bound, Monte Carlo on every ingredient (cross-check for the exact route).
CheckReport slice_moment_check_mc(const ConvexBody& b, const Vec& x, std::uint64_t samples,
                                  std::uint64_t seed);

// Central-section volume |K ∩ x^perp| for polytopal bodies and axis sections
// of the structural catalog; exact.
double central_section_volume(const ConvexBody& k, const Vec& x);

// Full lower-bound recursion for a zonotope: peel one dimension per step via
// the witness direction, check P(Z_k) >= (4/k) P(Z_{k-1}) for every link and
// P(Z) >= 4^n/n! at the end.
CheckReport zonoid_chain_check(const ConvexBody& z, std::uint64_t seed);

} // namespace vp
