#include "doctest.h"

#include <cmath>

#include "vp/body.hpp"
#include "vp/errors.hpp"
#include "vp/perturb.hpp"
#include "vp/polar.hpp"
#include "vp/products.hpp"
#include "vp/rng.hpp"
#include "vp/volume.hpp"

using namespace vp;

TEST_CASE("hanner tree realizations") {
    CHECK(volume(hanner(HannerTree::leaf())) == doctest::Approx(2.0));
    CHECK(mahler(hanner(HannerTree::leaf())) == doctest::Approx(4.0).epsilon(1e-12));

    HannerTree diamond = HannerTree::node(HannerTree::Kind::L1, HannerTree::leaf(), HannerTree::leaf());
    HannerTree square = HannerTree::node(HannerTree::Kind::Linf, HannerTree::leaf(), HannerTree::leaf());
    CHECK(volume(hanner(diamond)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(volume(hanner(square)) == doctest::Approx(4.0).epsilon(1e-12));

    HannerTree bipyramid = HannerTree::node(HannerTree::Kind::L1, square, HannerTree::leaf());
    CHECK(volume(hanner(bipyramid)) == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("hanner polytopes all sit exactly at 4^n/n!") {
    HannerTree cube3 = HannerTree::node(
        HannerTree::Kind::Linf,
        HannerTree::node(HannerTree::Kind::Linf, HannerTree::leaf(), HannerTree::leaf()),
        HannerTree::leaf());
    CHECK(hanner_mahler_check(cube3).pass);

    HannerTree bipyramid = HannerTree::node(
        HannerTree::Kind::L1,
        HannerTree::node(HannerTree::Kind::Linf, HannerTree::leaf(), HannerTree::leaf()),
        HannerTree::leaf());
    CheckReport rep = hanner_mahler_check(bipyramid);
    CHECK(rep.pass);
    CHECK(rep.lhs == doctest::Approx(32.0 / 3.0).epsilon(1e-9));

    HannerTree prism = HannerTree::node(
        HannerTree::Kind::Linf,
        HannerTree::node(HannerTree::Kind::L1, HannerTree::leaf(), HannerTree::leaf()),
        HannerTree::leaf());
    CHECK(hanner_mahler_check(prism).pass);

    for (std::uint64_t s = 0; s < 30; ++s) {
        Rng rng(derive_seed(606, "hanner", s));
        int leaves = 2 + static_cast<int>(rng.uniform() * 5);
        CHECK(hanner_mahler_check(random_hanner_tree(leaves, rng)).pass);
    }
}

TEST_CASE("hanner duality flips the tree") {
    Rng rng(derive_seed(607, "hanner-dual", 0));
    for (int trial = 0; trial < 10; ++trial) {
        HannerTree tree = random_hanner_tree(2 + static_cast<int>(rng.uniform() * 4), rng);
        ConvexBody star = polar(hanner(tree));
        ConvexBody flipped = hanner(tree.flipped());
        for (int i = 0; i < 50; ++i) {
            Vec x = rng.gaussian_vec(static_cast<std::size_t>(star.dim()));
            CHECK(std::abs(gauge(star, x) - gauge(flipped, x)) <= 1e-9 * std::max(1.0, gauge(star, x)));
        }
        CHECK(is_unconditional(hanner(tree), 32, 5));
    }
}

TEST_CASE("unconditionality classification") {
    CHECK(is_unconditional(make_cube(3), 64, 9));
    CHECK(is_unconditional(make_cross_polytope(2), 64, 9));
    CHECK(is_unconditional(ConvexBody::ball(4), 64, 9));
    CHECK(is_unconditional(make_hexagon_zonotope(), 64, 9) == false);
    CHECK_FALSE(is_unconditional(
        ConvexBody::vpolytope({{1.0, 0.3}, {-1.0, -0.3}, {0.0, 1.0}, {0.0, -1.0}}), 64, 9));
    CHECK_FALSE(is_unconditional(
        ConvexBody::linear_image(rotation2d(30.0 * 3.14159265358979 / 180.0), make_cube(2)), 64, 9));
    // axis-aligned zonotope takes the structural path
    CHECK(is_unconditional(ConvexBody::zonotope({{2.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}}), 64, 9));
}

TEST_CASE("banach-mazur distance upper bounds") {
    SUBCASE("identical bodies sit at 1") {
        BmCertificate cert = bm_distance_upper(make_cube(2), make_cube(2), 4, 150, 11);
        CHECK(cert.d <= 1.0 + 1e-9);
        CHECK(verify_certificate(make_cube(2), make_cube(2), cert, 500, 999));
    }
    SUBCASE("diamond maps onto the square exactly") {
        BmCertificate cert = bm_distance_upper(make_cross_polytope(2), make_cube(2), 20, 600, 11);
        CHECK(cert.d <= 1.0 + 1e-6);
        CHECK(verify_certificate(make_cross_polytope(2), make_cube(2), cert, 500, 999));
    }
    SUBCASE("disk to square is sqrt(2)") {
        BmCertificate cert = bm_distance_upper(ConvexBody::ball(2), make_cube(2), 12, 400, 11);
        CHECK(cert.d <= std::sqrt(2.0) + 1e-3);
        CHECK(verify_certificate(ConvexBody::ball(2), make_cube(2), cert, 500, 999));
        // Independent grid oracle. A 2x2 map acting on the disk is, up to a
        // rotation that the disk absorbs and an overall scale the spread
        // ignores, diag(1, m) followed by a rotation of the square's frame;
        // sweep (m, beta) against a dense deterministic direction fan.
        double best = 1e300;
        const int n_dirs = 2048;
        for (int mi = 0; mi <= 60; ++mi) {
            double m = 0.25 + (2.0 - 0.25) * mi / 60.0;
            for (int bi = 0; bi < 90; ++bi) {
                double beta = bi * (3.14159265358979 / 2.0) / 90.0;
                double lo = 1e300, hi = 0.0;
                for (int di = 0; di < n_dirs; ++di) {
                    double ang = 2.0 * 3.14159265358979 * di / n_dirs;
                    Vec v{std::cos(ang), std::sin(ang)};
                    double num = std::sqrt(v[0] * v[0] + m * m * v[1] * v[1]);
                    double c = std::cos(beta), s = std::sin(beta);
                    double den = std::abs(c * v[0] - s * v[1]) + std::abs(s * v[0] + c * v[1]);
                    double r = num / den;
                    lo = std::min(lo, r);
                    hi = std::max(hi, r);
                }
                best = std::min(best, hi / lo);
            }
        }
        CHECK(best >= std::sqrt(2.0) - 1e-2);
    }
    SUBCASE("certificates remain valid on every catalog body") {
        std::vector<ConvexBody> bodies = {make_cube(2), make_cross_polytope(3),
                                          ConvexBody::ball(3), make_hexagon_zonotope()};
        for (const ConvexBody& k : bodies) {
            BmCertificate cert = bm_distance_upper(k, k, 3, 100, 21);
            CHECK(cert.d <= 1.0 + 1e-9);
            CHECK(verify_certificate(k, k, cert, 500, 4242));
        }
    }
}

TEST_CASE("stability probe of the cube's volume product") {
    SUBCASE("zero perturbation leaves the product unchanged") {
        StabilityResult res = stability_experiment(2, {0.0}, 5, 31337);
        for (const StabilityRow& row : res.rows) {
            CHECK(row.delta_p == doctest::Approx(0.0).epsilon(1e-9));
        }
        REQUIRE(res.aggregates.size() == 1);
        CHECK(res.aggregates[0].pass);
    }
    SUBCASE("small perturbations keep deltaP nonnegative in the plane") {
        StabilityResult res = stability_experiment(2, {0.05}, 12, 31337);
        CHECK(res.rows.size() == 12);
        for (const StabilityRow& row : res.rows) CHECK(row.delta_p >= -1e-9);
        for (const CheckReport& rep : res.aggregates) CHECK(rep.pass);
    }
    SUBCASE("rows are deterministic for a fixed seed") {
        StabilityResult a = stability_experiment(2, {0.1}, 3, 777);
        StabilityResult b = stability_experiment(2, {0.1}, 3, 777);
        REQUIRE(a.rows.size() == b.rows.size());
        for (std::size_t i = 0; i < a.rows.size(); ++i) {
            CHECK(a.rows[i].delta_p == b.rows[i].delta_p);
            CHECK(a.rows[i].dhat_minus_1 == b.rows[i].dhat_minus_1);
        }
    }
    SUBCASE("epsilon outside the window is rejected") {
        CHECK_THROWS_AS(stability_experiment(2, {0.5}, 2, 1), input_error);
        CHECK_THROWS_AS(stability_experiment(4, {0.1}, 2, 1), input_error);
    }
}
