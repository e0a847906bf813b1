#include "doctest.h"

#include <cmath>

#include "vp/body.hpp"
#include "vp/errors.hpp"
#include "vp/hull.hpp"
#include "vp/polar.hpp"
#include "vp/rng.hpp"

using namespace vp;

namespace {

// Independent oracle for zonotope supports: max over all Minkowski sign
// endpoints of sum_i (+-1) g_i.
double zonotope_support_by_sign_max(const std::vector<Vec>& gens, const Vec& y) {
    double best = -1e300;
    for (const Vec& p : zonotope_vertex_candidates(gens)) best = std::max(best, dot(p, y));
    return best;
}

const std::vector<ConvexBody>& catalog() {
    static const std::vector<ConvexBody> bodies = {
        make_cube(2),
        make_cube(3),
        make_cross_polytope(2),
        make_cross_polytope(3),
        ConvexBody::ball(2),
        ConvexBody::ball(3),
        make_double_cone(),
        make_cylinder(),
        make_square_bipyramid(),
        make_hexagon_zonotope(),
        make_cube_vpolytope(2),
        ConvexBody::hpolytope({{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}),
        ConvexBody::linear_image(rotation2d(0.7), make_cube(2)),
    };
    return bodies;
}

} // namespace

TEST_CASE("support on catalog examples") {
    ConvexBody cube = make_cube_vpolytope(2);
    CHECK(support(cube, {1.0, 1.0}) == doctest::Approx(2.0).epsilon(1e-12));

    ConvexBody z = make_hexagon_zonotope();
    CHECK(support(z, {1.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-12));
    // cross-check against the Minkowski sign-endpoint oracle
    Rng rng(derive_seed(7, "support-oracle"));
    for (int i = 0; i < 100; ++i) {
        Vec y = rng.sphere_point(2);
        CHECK(support(z, y) ==
              doctest::Approx(zonotope_support_by_sign_max(z.generators(), y)).epsilon(1e-12));
    }

    CHECK(support(ConvexBody::ball(2), {3.0, 4.0}) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("gauge on catalog examples") {
    CHECK(gauge(make_cube(2), {0.5, -0.25}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(gauge(make_double_cone(), {0.3, 0.4, 0.5}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gauge(make_cross_polytope(2), {0.5, 0.5}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gauge(make_cube(2), Vec{0.0, 0.0}) == 0.0);
    CHECK(support(make_cube(2), Vec{0.0, 0.0}) == 0.0);
}

TEST_CASE("membership") {
    CHECK(member(make_cube(2), {1.0, 1.0}, 0.0));
    CHECK_FALSE(member(make_cross_polytope(2), {1.0, 1.0}, 0.0));
    CHECK(member(ConvexBody::ball(2), {0.6, 0.8}, 1e-12));
    CHECK_THROWS_AS(member(make_cube(2), {1.0, 1.0}, -1.0), input_error);
}

TEST_CASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(support(make_cube(2), {1.0, 1.0, 1.0}), input_error);
    CHECK_THROWS_AS(gauge(make_cube(3), {1.0, 1.0}), input_error);
}

TEST_CASE("construction invariants") {
    CHECK_THROWS_AS(ConvexBody::vpolytope({{1.0, 0.0}, {0.0, 1.0}}), input_error); // not symmetric
    CHECK_THROWS_AS(ConvexBody::vpolytope({{1.0, 0.0}, {-1.0, 0.0}}), input_error); // rank 1 in R^2
    CHECK_THROWS_AS(ConvexBody::hpolytope({{1.0, 0.0}}), input_error); // unbounded slab
    CHECK_THROWS_AS(ConvexBody::zonotope({{0.0, 0.0}, {1.0, 0.0}}), input_error); // zero generator
    CHECK_THROWS_AS(ConvexBody::interval(0.0), input_error);
    Mat singular(2, 2);
    singular.at(0, 0) = 1.0;
    CHECK_THROWS_AS(ConvexBody::linear_image(singular, make_cube(2)), input_error);
}

TEST_CASE("zonotope measure reconstructs the support") {
    SUBCASE("axis square") {
        BodyMeasure mu = zonotope_measure(ConvexBody::zonotope({{1.0, 0.0}, {0.0, 1.0}}));
        REQUIRE(mu.atoms.size() == 4);
        // +-pair of each generator carries total weight 2|g|
        double w0 = mu.atoms[0].weight + mu.atoms[1].weight;
        CHECK(w0 == doctest::Approx(2.0));
        Vec y{0.3, -1.7};
        double half_sum = 0.0;
        for (const auto& a : mu.atoms) half_sum += a.weight * std::abs(dot(a.direction, y));
        CHECK(0.5 * half_sum == doctest::Approx(std::abs(y[0]) + std::abs(y[1])).epsilon(1e-12));
    }
    SUBCASE("single segment of length 4") {
        BodyMeasure mu = zonotope_measure(ConvexBody::zonotope({{2.0}}));
        REQUIRE(mu.atoms.size() == 2);
        CHECK(mu.atoms[0].weight + mu.atoms[1].weight == doctest::Approx(4.0));
        double half_sum = 0.0;
        for (const auto& a : mu.atoms) half_sum += a.weight * std::abs(a.direction[0] * 3.0);
        CHECK(0.5 * half_sum == doctest::Approx(2.0 * 3.0));
    }
    SUBCASE("hexagon generators, sampled directions") {
        ConvexBody z = make_hexagon_zonotope();
        BodyMeasure mu = zonotope_measure(z);
        REQUIRE(mu.atoms.size() == 6);
        double pair_w2 = mu.atoms[4].weight + mu.atoms[5].weight;
        CHECK(pair_w2 == doctest::Approx(2.0 * std::sqrt(2.0)));
        Rng rng(derive_seed(11, "measure"));
        for (int i = 0; i < 100; ++i) {
            Vec y = rng.sphere_point(2);
            double half_sum = 0.0;
            for (const auto& a : mu.atoms) half_sum += a.weight * std::abs(dot(a.direction, y));
            CHECK(0.5 * half_sum == doctest::Approx(support(z, y)).epsilon(1e-12));
        }
    }
}

TEST_CASE("homogeneity and symmetry of gauge and support") {
    Rng rng(derive_seed(3, "homog"));
    for (const ConvexBody& k : catalog()) {
        for (int i = 0; i < 20; ++i) {
            Vec x = rng.gaussian_vec(static_cast<std::size_t>(k.dim()));
            double lambda = 0.25 + 3.0 * rng.uniform();
            CHECK(support(k, vec_scale(x, lambda)) ==
                  doctest::Approx(lambda * support(k, x)).epsilon(1e-12));
            CHECK(gauge(k, vec_scale(x, lambda)) ==
                  doctest::Approx(lambda * gauge(k, x)).epsilon(1e-12));
            CHECK(gauge(k, vec_scale(x, -1.0)) == gauge(k, x));
        }
    }
}

TEST_CASE("gauge-support duality across the catalog") {
    Rng rng(derive_seed(5, "duality"));
    for (const ConvexBody& k : catalog()) {
        ConvexBody star = polar(k);
        for (int i = 0; i < 200; ++i) {
            Vec y = rng.sphere_point(static_cast<std::size_t>(k.dim()));
            CHECK(std::abs(support(k, y) - gauge(star, y)) <= 1e-9);
        }
    }
}

TEST_CASE("linf sum is the blockwise max, l1 membership is additive") {
    ConvexBody a = ConvexBody::ball(2);
    ConvexBody b = ConvexBody::interval(1.0);
    ConvexBody linf = ConvexBody::linf_sum({a, b});
    Rng rng(derive_seed(9, "sums"));
    for (int i = 0; i < 50; ++i) {
        Vec x = rng.gaussian_vec(3);
        double expected = std::max(gauge(a, {x[0], x[1]}), gauge(b, {x[2]}));
        CHECK(gauge(linf, x) == doctest::Approx(expected).epsilon(1e-12));
        bool blocks = member(a, {x[0], x[1]}, 0.0) && member(b, {x[2]}, 0.0);
        CHECK(member(linf, x, 0.0) == blocks);
    }
}

TEST_CASE("linear images act on support through the transpose") {
    Rng rng(derive_seed(13, "linear"));
    ConvexBody base = make_hexagon_zonotope();
    for (int trial = 0; trial < 10; ++trial) {
        Mat t(2, 2);
        do {
            for (std::size_t r = 0; r < 2; ++r)
                for (std::size_t c = 0; c < 2; ++c) t.at(r, c) = rng.uniform(-2.0, 2.0);
        } while (std::abs(det(t)) < 0.1);
        ConvexBody img = ConvexBody::linear_image(t, base);
        for (int i = 0; i < 20; ++i) {
            Vec y = rng.sphere_point(2);
            CHECK(support(img, y) ==
                  doctest::Approx(support(base, t.apply_transposed(y))).epsilon(1e-9));
        }
    }
}

TEST_CASE("json round trip preserves the gauge") {
    Rng rng(derive_seed(17, "json"));
    for (const ConvexBody& k : catalog()) {
        ConvexBody back = body_from_json(body_to_json(k));
        CHECK(back.dim() == k.dim());
        for (int i = 0; i < 20; ++i) {
            Vec x = rng.gaussian_vec(static_cast<std::size_t>(k.dim()));
            CHECK(gauge(back, x) == doctest::Approx(gauge(k, x)).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(body_from_json(nlohmann::json{{"kind", "frisbee"}}), input_error);
}
