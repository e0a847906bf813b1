#include "doctest.h"

#include <cmath>

#include "vp/body.hpp"
#include "vp/errors.hpp"
#include "vp/functional.hpp"
#include "vp/rng.hpp"
#include "vp/volume.hpp"

using namespace vp;

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

TEST_CASE("grid construction and symmetry") {
    GridFunction g = grid_gaussian(2, 8.0, 65);
    CHECK(g.node_count() == 65u * 65u);
    // exact even symmetry
    for (int i = 0; i < 65; ++i)
        for (int j = 0; j < 65; ++j)
            CHECK(g.values[i * 65 + j] == g.values[(64 - i) * 65 + (64 - j)]);
    CHECK(g.coord(32) == 0.0);
    CHECK(g.coord(0) == -8.0);
    CHECK(g.coord(64) == 8.0);

    CHECK_THROWS_AS(grid_gaussian(2, 8.0, 64), input_error);  // even count
    CHECK_THROWS_AS(grid_from_values(1, 8.0, 5, {1, 2, 3}), input_error); // wrong length
}

TEST_CASE("grid quadrature matches closed forms") {
    GridFunction g = grid_gaussian(2, 8.0, 257);
    CHECK(grid_integral(g) == doctest::Approx(2.0 * kPi).epsilon(1e-6));
    GridFunction e1 = grid_exp_neg_gauge(ConvexBody::ball(1), 16.0, 257);
    CHECK(grid_integral(e1) == doctest::Approx(2.0).epsilon(1e-4));
    // second moment of the gaussian: integral of x^2 e^{-|x|^2/2} over R^2
    double m2 = grid_integral_weighted(g, [](const Vec& x) { return x[0] * x[0]; });
    CHECK(m2 == doctest::Approx(2.0 * kPi).epsilon(1e-6));
}

TEST_CASE("polar transform closed forms") {
    SUBCASE("gaussian is a fixed point, exactly on the grid") {
        GridFunction g = grid_gaussian(2, 8.0, 129);
        PolarTransformResult r = polar_function(g);
        REQUIRE(r.sup_error_vs_analytic.has_value());
        CHECK(*r.sup_error_vs_analytic <= 1e-12);
    }
    SUBCASE("indicator of the disk maps to exp(-|x|)") {
        GridFunction f = grid_indicator(ConvexBody::ball(2), 8.0, 257);
        PolarTransformResult r = polar_function(f);
        REQUIRE(r.sup_error_vs_analytic.has_value());
        CHECK(*r.sup_error_vs_analytic <= 5.0 * f.step());
    }
    SUBCASE("indicator of the cube maps to exp(-|x1|-|x2|), exactly at nodes") {
        GridFunction f = grid_indicator(make_cube(2), 8.0, 257);
        PolarTransformResult r = polar_function(f);
        REQUIRE(r.sup_error_vs_analytic.has_value());
        CHECK(*r.sup_error_vs_analytic <= 1e-12);
    }
    SUBCASE("1-D off-scale gaussian: conjugate of x^2 is x^2/4") {
        int m = 257;
        GridFunction f = grid_from_values(1, 8.0, m, std::vector<double>(m, 0.0));
        for (int i = 0; i < m; ++i) {
            double x = f.coord(i);
            f.values[i] = std::exp(-x * x);
        }
        PolarTransformResult r = polar_function(f);
        // the maximizer x/2 sits between nodes for odd indices, so the
        // discrete sup undershoots by at most (h/2)^2
        double tol = f.step() * f.step() / 4.0 + 1e-12;
        for (int i = 0; i < m; ++i) {
            double x = f.coord(i);
            if (std::abs(x) > 4.0) continue; // grid-boundary effects
            CHECK(r.polar.values[i] == doctest::Approx(std::exp(-x * x / 4.0)).epsilon(tol));
        }
    }
    SUBCASE("identically zero input is rejected") {
        CHECK_THROWS_AS(polar_function(grid_from_values(1, 8.0, 5, {0, 0, 0, 0, 0})), input_error);
    }
}

TEST_CASE("order reversal is exact on the discrete transform") {
    Rng rng(derive_seed(21, "order"));
    for (int trial = 0; trial < 20; ++trial) {
        double a = 0.5 + rng.uniform();
        double b = a + rng.uniform(); // b >= a so f <= g
        int m = 65;
        GridFunction f = grid_from_values(1, 8.0, m, std::vector<double>(m, 0.0));
        GridFunction g = f;
        for (int i = 0; i < m; ++i) {
            double x = f.coord(i);
            f.values[i] = std::exp(-0.5 * b * x * x);
            g.values[i] = std::exp(-0.5 * a * x * x);
        }
        GridFunction pf = polar_function(f).polar;
        GridFunction pg = polar_function(g).polar;
        for (int i = 0; i < m; ++i) {
            REQUIRE(f.values[i] <= g.values[i]);
            CHECK(pg.values[i] <= pf.values[i]);
        }
    }
}

TEST_CASE("involution on the grid") {
    CHECK(involution_check(grid_gaussian(1, 8.0, 257)).pass);
    CHECK(involution_check(grid_gaussian(2, 8.0, 129)).pass);
    CHECK(involution_check(grid_exp_neg_gauge(ConvexBody::ball(1), 8.0, 257)).pass);
    // a two-bump profile is not log-concave
    int m = 65;
    std::vector<double> vals(m, 0.0);
    GridFunction shape = grid_gaussian(1, 8.0, m);
    for (int i = 0; i < m; ++i) {
        double x = shape.coord(i);
        vals[i] = std::exp(-0.5 * (std::abs(x) - 3.0) * (std::abs(x) - 3.0));
    }
    CHECK_THROWS_AS(involution_check(grid_from_values(1, 8.0, m, vals)), precondition_error);
}

TEST_CASE("functional upper bound on the product of integrals") {
    SUBCASE("gaussian attains (2 pi)^n") {
        CheckReport rep = functional_santalo_check(grid_gaussian(2, 8.0, 257));
        CHECK(rep.pass);
        CHECK(rep.equality);
        CHECK(rep.lhs == doctest::Approx(std::pow(2.0 * kPi, 2)).epsilon(1e-3));
    }
    SUBCASE("disk indicator lands at 2 pi^2") {
        // the discrete transform's polar carries O(h) inflation, so the
        // percent-level comparison needs the fine grid
        CheckReport rep = functional_santalo_check(grid_indicator(ConvexBody::ball(2), 8.0, 513));
        CHECK(rep.pass);
        CHECK_FALSE(rep.equality);
        CHECK(rep.lhs == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-2));
    }
    SUBCASE("1-D interval indicator: 4 < 2 pi") {
        CheckReport rep = functional_santalo_check(grid_indicator(ConvexBody::interval(1.0), 8.0, 257));
        CHECK(rep.pass);
        CHECK(rep.lhs == doctest::Approx(4.0).epsilon(1e-2));
    }
    SUBCASE("insufficient extent is rejected") {
        CHECK_THROWS_AS(functional_santalo_check(grid_gaussian(2, 1.0, 65)), input_error);
    }
}

TEST_CASE("gaussian-gauge volume formula") {
    CHECK(santalo_reduction_check(ConvexBody::ball(2), 400000, 7).pass);
    CHECK(santalo_reduction_check(ConvexBody::interval(1.0), 400000, 7).pass);
    CHECK(santalo_reduction_check(make_cross_polytope(2), 400000, 7).pass);
}

TEST_CASE("second moments") {
    CHECK(second_moment(ConvexBody::ball(2), 0, 0, 0).value == doctest::Approx(kPi / 4.0).epsilon(1e-12));
    CHECK(second_moment(make_cube(2), 0, 0, 0).value == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(second_moment(make_cross_polytope(2), 0, 0, 0).value ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(second_moment(make_cross_polytope(3), 2, 0, 0).value ==
          doctest::Approx(2.0 / 15.0).epsilon(1e-12));
    // triangulation route agrees with the structural route
    ConvexBody octa = ConvexBody::vpolytope({{1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0},
                                             {0.0, 1.0, 0.0}, {0.0, -1.0, 0.0},
                                             {0.0, 0.0, 1.0}, {0.0, 0.0, -1.0}});
    CHECK(second_moment(octa, 0, 0, 0).value == doctest::Approx(2.0 / 15.0).epsilon(1e-10));
    // linear image: x-moment of a diagonally stretched disk
    Mat t(2, 2);
    t.at(0, 0) = 2.0;
    t.at(1, 1) = 1.0;
    CHECK(second_moment(ConvexBody::linear_image(t, ConvexBody::ball(2)), 0, 0, 0).value ==
          doctest::Approx(2.0 * 4.0 * kPi / 4.0).epsilon(1e-12));
    // monte carlo fallback is consistent for a rotated cube in R^2
    ConvexBody rot = ConvexBody::linear_image(rotation2d(0.3), make_cube(2));
    McEstimate exact{second_moment_matrix_exact(rot).at(0, 0), 0.0, 0, 0};
    McEstimate mc = mc_integral(rot, [](const Vec& x) { return x[0] * x[0]; }, 400000, 5);
    CHECK(std::abs(exact.value - mc.value) <= 4.0 * mc.std_error);
}

TEST_CASE("quadratic moment bound for unconditional bodies") {
    SUBCASE("disk attains equality at pi^2/8") {
        CheckReport rep = ball_inequality_check(ConvexBody::ball(2), 100000, 3);
        CHECK(rep.pass);
        CHECK(rep.equality);
        CHECK(rep.lhs == doctest::Approx(kPi * kPi / 8.0).epsilon(1e-9));
        CHECK(rep.rhs == doctest::Approx(kPi * kPi / 8.0).epsilon(1e-9));
    }
    SUBCASE("square is strictly below at 8/9") {
        CheckReport rep = ball_inequality_check(make_cube(2), 100000, 3);
        CHECK(rep.pass);
        CHECK_FALSE(rep.equality);
        CHECK(rep.lhs == doctest::Approx(8.0 / 9.0).epsilon(1e-9));
    }
    SUBCASE("3-ball attains equality") {
        CheckReport rep = ball_inequality_check(ConvexBody::ball(3), 100000, 3);
        CHECK(rep.pass);
        CHECK(rep.equality);
        CHECK(rep.lhs == doctest::Approx(3.0 * ball_volume(3) * ball_volume(3) / 25.0).epsilon(1e-9));
    }
    SUBCASE("tilted bodies are rejected") {
        ConvexBody tilted = ConvexBody::vpolytope({{1.0, 0.3}, {-1.0, -0.3}, {0.0, 1.0}, {0.0, -1.0}});
        CHECK_THROWS_AS(ball_inequality_check(tilted, 10000, 3), precondition_error);
    }
    SUBCASE("the left side is rotation invariant on the ball") {
        CheckReport plain = ball_inequality_check(ConvexBody::ball(2), 50000, 3);
        CheckReport rotated = ball_inequality_check(
            ConvexBody::linear_image(rotation2d(0.9), ConvexBody::ball(2)), 50000, 3);
        CHECK(plain.lhs == doctest::Approx(rotated.lhs).epsilon(1e-9));
    }
}

TEST_CASE("functional quadratic moment bound") {
    SUBCASE("gaussian attains n (2 pi)^n") {
        CheckReport rep = functional_ball_check(grid_gaussian(2, 8.0, 257));
        CHECK(rep.pass);
        CHECK(rep.equality);
        CHECK(rep.lhs == doctest::Approx(2.0 * std::pow(2.0 * kPi, 2)).epsilon(1e-2));
    }
    SUBCASE("disk indicator stays below") {
        CheckReport rep = functional_ball_check(grid_indicator(ConvexBody::ball(2), 8.0, 257));
        CHECK(rep.pass);
        CHECK_FALSE(rep.equality);
    }
    SUBCASE("cube indicator: closed form 64/3") {
        // L = 16 with m = 513 keeps the cube boundary on-grid (h = 1/16)
        // while pushing the y^2 exp(-|y|) truncation below 1e-4
        CheckReport rep = functional_ball_check(grid_indicator(make_cube(2), 16.0, 513));
        CHECK(rep.pass);
        CHECK(rep.lhs == doctest::Approx(64.0 / 3.0).epsilon(1e-2));
    }
}

TEST_CASE("geometric-mean product inequality") {
    SUBCASE("exponentials: equality through the AM-GM mechanism") {
        Fn1D e{[](double t) { return std::exp(-t); }, 40.0};
        CheckReport rep = geometric_mean_inequality_check(e, e, e, 20000, 9);
        CHECK(rep.pass);
        CHECK(rep.flags.empty());
        CHECK(rep.lhs == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("disk instantiation reproduces pi^2/8") {
        auto section_sq = [](double r) {
            return r <= 1.0 ? 2.0 * std::sqrt(std::max(0.0, 1.0 - r * r)) * r * r : 0.0;
        };
        Fn1D f{section_sq, 1.0};
        CheckReport rep = geometric_mean_inequality_check(f, f, f, 20000, 9);
        CHECK(rep.pass);
        CHECK(rep.flags.empty());
        // each side is (pi/8)^2, and the two-axis expansion gives
        // 4 * 2 * (pi/8)^2 = pi^2/8
        CHECK(rep.lhs == doctest::Approx(kPi * kPi / 64.0).epsilon(1e-5));
        CHECK(8.0 * rep.lhs == doctest::Approx(kPi * kPi / 8.0).epsilon(1e-5));
    }
    SUBCASE("indicators of the unit interval") {
        Fn1D one{[](double t) { return t <= 1.0 ? 1.0 : 0.0; }, 1.0};
        CheckReport rep = geometric_mean_inequality_check(one, one, one, 20000, 9);
        CHECK(rep.pass);
    }
    SUBCASE("violated hypothesis is flagged, not thrown") {
        Fn1D f1{[](double t) { return t <= 1.0 ? 2.0 : 0.0; }, 1.0};
        Fn1D f3{[](double t) { return t <= 1.0 ? 1.0 : 0.0; }, 1.0};
        CheckReport rep = geometric_mean_inequality_check(f1, f1, f3, 1000, 9);
        CHECK_FALSE(rep.pass);
        REQUIRE(rep.flags.size() == 1);
        CHECK(rep.flags[0] == "failed-hypothesis");
    }
}

TEST_CASE("grid json round trip") {
    GridFunction g = grid_gaussian(1, 8.0, 65);
    GridFunction back = grid_from_json(grid_to_json(g));
    CHECK(back.dim == g.dim);
    CHECK(back.points == g.points);
    CHECK(back.values == g.values);
}
