#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "vp/body.hpp"
#include "vp/report.hpp"

namespace vp {

// Even nonnegative function sampled on a uniform symmetric grid over
// [-extent, extent]^dim with an odd point count per axis; node k of an axis
// sits at (k - (points-1)/2) * extent / ((points-1)/2), so mirrored nodes
// are exact negations. Values are stored row-major (first axis slowest).
struct GridFunction {
    enum class Tag { None, Gaussian, Indicator, ExpNegGauge };

    int dim = 1;
    double extent = 8.0;
    int points = 257;
    std::vector<double> values;
    Tag tag = Tag::None;
    std::optional<ConvexBody> tag_body;

    double coord(int index) const;
    std::size_t node_count() const;
    double step() const { return extent / ((points - 1) / 2); }
};

GridFunction grid_gaussian(int n, double extent, int m);                     // exp(-|x|^2/2)
GridFunction grid_indicator(const ConvexBody& k, double extent, int m);
GridFunction grid_exp_neg_gauge(const ConvexBody& k, double extent, int m);  // exp(-gauge_K(x))
GridFunction grid_from_values(int n, double extent, int m, std::vector<double> values);

nlohmann::json grid_to_json(const GridFunction& f);
GridFunction grid_from_json(const nlohmann::json& j);

// Tensorized Simpson quadrature; `weight` defaults to 1.
double grid_integral(const GridFunction& f);
double grid_integral_weighted(const GridFunction& f,
                              const std::function<double(const Vec&)>& weight);

// f°(x) = inf_y exp(-<x,y>)/f(y), evaluated through the discrete conjugate
// of -log f on the same grid (iterated axis passes; separable fast path when
// -log f splits additively). sup_error_vs_analytic is filled for tagged
// inputs with a closed-form polar.
struct PolarTransformResult {
    GridFunction polar;
    std::optional<double> sup_error_vs_analytic;
};
PolarTransformResult polar_function(const GridFunction& f);

// Grid distance between f and its double polar where f > 1e-12; the pass
// threshold is five grid steps. Requires log-concavity on the grid.
CheckReport involution_check(const GridFunction& f);

// (Int f)(Int f°) <= (2 pi)^n with the equality flag at 1e-3 relative.
CheckReport functional_santalo_check(const GridFunction& f);

// Gaussian-gauge volume formula Int exp(-gauge^2/2) = (2 pi)^{n/2} vol K / vol B_n,
// checked by Monte Carlo, plus the resulting upper volume-product bound.
CheckReport santalo_reduction_check(const ConvexBody& k, std::uint64_t samples,
                                    std::uint64_t seed);

// Int_K x_i^2 dx: exact through the structural moment matrix where it
// exists, Monte Carlo otherwise.
McEstimate second_moment(const ConvexBody& k, int axis, std::uint64_t samples,
                         std::uint64_t seed);
// Full matrix of second moments along the exact structural paths.
Mat second_moment_matrix_exact(const ConvexBody& k);

// Quadratic moment bound for unconditional bodies:
//   Int_K Int_{K*} <x,y>^2 <= n ball_volume(n)^2 / (n+2)^2,
// evaluated through the coordinate expansion; the vanishing of cross terms
// is itself sampled within 4 sigma.
CheckReport ball_inequality_check(const ConvexBody& k, std::uint64_t samples,
                                  std::uint64_t seed);

// Functional form: sum_i (Int x_i^2 f)(Int y_i^2 f°) <= n (2 pi)^n for
// unconditional grid functions.
CheckReport functional_ball_check(const GridFunction& f);

// 1-D handle with its support radius for quadrature.
struct Fn1D {
    std::function<double(double)> f;
    double t_max = 1.0;
};

// Hypothesis f1(r) f2(s) <= f3(sqrt(rs))^2 sampled on seeded pairs;
// conclusion Int f1 Int f2 <= (Int f3)^2 by quadrature. A violated
// hypothesis flags the report instead of throwing.
CheckReport geometric_mean_inequality_check(const Fn1D& f1, const Fn1D& f2, const Fn1D& f3,
                                            std::uint64_t sample_pairs, std::uint64_t seed,
                                            int quad_points = 4001);

} // namespace vp
