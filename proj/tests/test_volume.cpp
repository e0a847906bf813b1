#include "doctest.h"

#include <cmath>

#include "vp/body.hpp"
#include "vp/errors.hpp"
#include "vp/polar.hpp"
#include "vp/rng.hpp"
#include "vp/volume.hpp"

using namespace vp;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Shoelace area of a symmetric 2-D hull, an oracle independent of the
// triangulation path.
double shoelace_area(std::vector<Vec> pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
        return std::atan2(a[1], a[0]) < std::atan2(b[1], b[0]);
    });
    double s = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Vec& a = pts[i];
        const Vec& b = pts[(i + 1) % pts.size()];
        s += a[0] * b[1] - b[0] * a[1];
    }
    return 0.5 * std::abs(s);
}

} // namespace

TEST_CASE("ball volume constants") {
    CHECK(ball_volume(1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(ball_volume(2) == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(ball_volume(3) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-14));
    CHECK(sphere_measure(2) == doctest::Approx(2.0 * kPi).epsilon(1e-14));
    CHECK(sphere_measure(3) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
}

TEST_CASE("exact volumes of the catalog") {
    CHECK(volume(make_cross_polytope(3)) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(volume(make_cube(3)) == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(volume(make_hexagon_zonotope()) == doctest::Approx(12.0).epsilon(1e-12));
    CHECK(volume(make_square_bipyramid()) == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
    CHECK(volume(make_double_cone()) == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-12));
    CHECK(volume(make_cylinder()) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    CHECK(volume(make_cube_vpolytope(3)) == doctest::Approx(8.0).epsilon(1e-12));
    // hexagon hull cross-check by the shoelace oracle
    std::vector<Vec> pts = zonotope_vertex_candidates(make_hexagon_zonotope().generators());
    CHECK(shoelace_area(hull(pts).vertices) == doctest::Approx(12.0).epsilon(1e-12));
}

TEST_CASE("polar hexagon volume by hull equals 3/4") {
    ConvexBody star = polar(make_hexagon_zonotope());
    CHECK(volume(star) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(shoelace_area(star.vertices()) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("volume scales with |det| under linear maps") {
    Rng rng(derive_seed(47, "detvol"));
    std::vector<ConvexBody> bodies = {make_cube(2), make_cross_polytope(3),
                                      ConvexBody::ball(3), make_hexagon_zonotope()};
    for (const ConvexBody& k : bodies) {
        Mat t(static_cast<std::size_t>(k.dim()), static_cast<std::size_t>(k.dim()));
        do {
            for (std::size_t r = 0; r < t.rows(); ++r)
                for (std::size_t c = 0; c < t.cols(); ++c) t.at(r, c) = rng.uniform(-1.5, 1.5);
        } while (std::abs(det(t)) < 0.2);
        double expected = std::abs(det(t)) * volume(k);
        CHECK(volume(ConvexBody::linear_image(t, k)) ==
              doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("monte carlo volume") {
    SUBCASE("cube fills its own bounding box") {
        McEstimate est = volume_mc(make_cube(2), 100000, 42);
        CHECK(est.value == doctest::Approx(4.0));
        CHECK(est.std_error == doctest::Approx(0.0));
    }
    SUBCASE("disk") {
        McEstimate est = volume_mc(ConvexBody::ball(2), 1000000, 42);
        CHECK(std::abs(est.value - kPi) <= 4.0 * est.std_error);
    }
    SUBCASE("double cone") {
        McEstimate est = volume_mc(make_double_cone(), 1000000, 42);
        CHECK(std::abs(est.value - 2.0 * kPi / 3.0) <= 4.0 * est.std_error);
    }
    SUBCASE("deterministic for fixed seed") {
        McEstimate a = volume_mc(ConvexBody::ball(2), 50000, 7);
        McEstimate b = volume_mc(ConvexBody::ball(2), 50000, 7);
        CHECK(a.value == b.value);
        CHECK(a.std_error == b.std_error);
    }
    SUBCASE("coverage over 20 seeded runs") {
        std::vector<ConvexBody> bodies = {make_cross_polytope(2), ConvexBody::ball(3),
                                          make_square_bipyramid()};
        for (const ConvexBody& k : bodies) {
            double exact = volume(k);
            int cover = 0;
            for (std::uint64_t s = 0; s < 20; ++s) {
                McEstimate est = volume_mc(k, 200000, derive_seed(1000, "cover", s));
                if (std::abs(est.value - exact) <= 4.0 * est.std_error) ++cover;
            }
            CHECK(cover >= 19);
        }
    }
}

TEST_CASE("sphere-integral polar volume") {
    SUBCASE("ball gives the constant integrand") {
        McEstimate est = polar_volume_sphere(ConvexBody::ball(3), 2000, 11);
        CHECK(est.value == doctest::Approx(ball_volume(3)).epsilon(1e-12));
        CHECK(est.std_error == doctest::Approx(0.0));
    }
    SUBCASE("cube gives the diamond area") {
        McEstimate est = polar_volume_sphere(make_cube(2), 400000, 11);
        CHECK(std::abs(est.value - 2.0) <= 4.0 * est.std_error);
    }
    SUBCASE("hexagon matches the exact polar volume") {
        McEstimate est = polar_volume_sphere(make_hexagon_zonotope(), 400000, 11);
        CHECK(std::abs(est.value - 0.75) <= 4.0 * est.std_error);
    }
}

TEST_CASE("section profiles") {
    SUBCASE("disk chord lengths, exact path") {
        SectionProfile p = section_profile(ConvexBody::ball(2), {1.0, 0.0}, 33, 0, 0);
        CHECK(p.exact);
        for (std::size_t i = 0; i < p.ts.size(); ++i) {
            double t = p.ts[i];
            CHECK(p.g[i] == doctest::Approx(2.0 * std::sqrt(std::max(0.0, 1.0 - t * t)))
                                .epsilon(1e-12));
        }
    }
    SUBCASE("cube sections are constant squares") {
        SectionProfile p = section_profile(make_cube(3), {0.0, 0.0, 1.0}, 17, 0, 0);
        CHECK(p.exact);
        for (double v : p.g) CHECK(v == doctest::Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("diamond tent profile") {
        SectionProfile p = section_profile(make_cross_polytope(2), {0.0, 1.0}, 33, 0, 0);
        CHECK(p.exact);
        for (std::size_t i = 0; i < p.ts.size(); ++i)
            CHECK(p.g[i] == doctest::Approx(2.0 * (1.0 - std::abs(p.ts[i]))).epsilon(1e-12));
    }
    SUBCASE("monte carlo path agrees with the exact disk profile") {
        ConvexBody rotated = ConvexBody::linear_image(rotation2d(0.3), ConvexBody::ball(2));
        SectionProfile p = section_profile(rotated, {1.0, 0.0}, 17, 20000, 5);
        CHECK_FALSE(p.exact);
        for (std::size_t i = 0; i < p.ts.size(); ++i) {
            double t = p.ts[i];
            double expect = 2.0 * std::sqrt(std::max(0.0, 1.0 - t * t));
            CHECK(std::abs(p.g[i] - expect) <= 4.0 * p.g_err[i] + 1e-9);
        }
    }
    SUBCASE("profile integrates back to the volume") {
        SectionProfile p = section_profile(make_double_cone(), {0.0, 0.0, 1.0}, 65, 0, 0);
        double h = p.ts[1] - p.ts[0];
        CHECK(simpson(p.g, h) == doctest::Approx(volume(make_double_cone())).epsilon(1e-4));
    }
    SUBCASE("non-unit direction is rejected") {
        CHECK_THROWS_AS(section_profile(make_cube(2), {1.0, 1.0}, 17, 100, 0), input_error);
    }
}

TEST_CASE("brunn concavity of section profiles") {
    CHECK(brunn_concavity_check(section_profile(ConvexBody::ball(2), {1.0, 0.0}, 33, 0, 0), 2).pass);
    CHECK(brunn_concavity_check(section_profile(make_cube(3), {0.0, 0.0, 1.0}, 17, 0, 0), 3).pass);
    CHECK(brunn_concavity_check(section_profile(make_cross_polytope(2), {0.0, 1.0}, 33, 0, 0), 2).pass);
}

TEST_CASE("projections") {
    SUBCASE("axis square projects to a segment of length 2") {
        ConvexBody p = projection(ConvexBody::zonotope({{1.0, 0.0}, {0.0, 1.0}}), {1.0, 0.0});
        CHECK(p.dim() == 1);
        CHECK(volume(p) == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("cube projects to the square") {
        ConvexBody p = projection(make_cube_vpolytope(3), {0.0, 0.0, 1.0});
        CHECK(p.dim() == 2);
        CHECK(volume(p) == doctest::Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("hexagon projects to a segment of length 4") {
        ConvexBody p = projection(make_hexagon_zonotope(), {1.0, 0.0});
        CHECK(volume(p) == doctest::Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("balls do not project exactly") {
        CHECK_THROWS_AS(projection(ConvexBody::ball(3), {0.0, 0.0, 1.0}), capability_error);
    }
}

TEST_CASE("zonoid volume formula with the generating measure") {
    std::vector<ConvexBody> zonotopes = {
        ConvexBody::zonotope({{1.0, 0.0}, {0.0, 1.0}}),
        make_hexagon_zonotope(),
        ConvexBody::zonotope({{2.0, 0.0}, {0.0, 1.0}}),
        ConvexBody::zonotope({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {1.0, 1.0, 1.0}}),
    };
    for (const ConvexBody& z : zonotopes) {
        const int n = z.dim();
        double acc = 0.0;
        for (const auto& atom : zonotope_measure(z).atoms)
            acc += atom.weight * volume(projection(z, atom.direction));
        CHECK(acc / n == doctest::Approx(volume(z)).epsilon(1e-9));
    }
}
