#pragma once

#include <cstdint>

#include "vp/body.hpp"
#include "vp/report.hpp"

namespace vp {

// Polar body K* = { y : <x,y> <= 1 for all x in K }, computed structurally:
//   ball -> ball, interval(a) -> interval(1/a),
//   vpolytope(V) -> hpolytope(V), hpolytope(U) -> vpolytope(enumerated),
//   zonotope -> explicit vpolytope realization (facet scaling + sign points),
//   l1 sum <-> linf sum of part polars,
//   linear(T, K) -> linear(T^-T, K*).
// Throws capability_error where the realization needs enumeration beyond the
// desk-scale caps (dim > 6, zonotopes with more than 20 generators).
ConvexBody polar(const ConvexBody& k);

// Max gauge deviation between K and its double polar over seeded random unit
// directions; passes at 1e-7.
CheckReport bipolar_check(const ConvexBody& k, std::uint64_t samples, std::uint64_t seed);

} // namespace vp
