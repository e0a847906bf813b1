#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "vp/body.hpp"
#include "vp/errors.hpp"
#include "vp/hull.hpp"
#include "vp/polar.hpp"
#include "vp/rng.hpp"

using namespace vp;

TEST_CASE("hull drops interior points and finds facets") {
    SUBCASE("diamond with an interior point") {
        HullResult h = hull({{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}, {0.5, 0.0}});
        CHECK(h.vertices.size() == 4);
        for (const Vec& v : h.vertices) CHECK(std::abs(std::abs(v[0]) + std::abs(v[1]) - 1.0) < 1e-12);
        CHECK(h.facet_normals.size() == 4);
    }
    SUBCASE("square") {
        HullResult h = hull({{1.0, 1.0}, {1.0, -1.0}, {-1.0, 1.0}, {-1.0, -1.0}});
        CHECK(h.vertices.size() == 4);
        REQUIRE(h.facet_normals.size() == 4);
        for (const Vec& u : h.facet_normals) {
            bool axis = (std::abs(std::abs(u[0]) - 1.0) < 1e-9 && std::abs(u[1]) < 1e-9) ||
                        (std::abs(std::abs(u[1]) - 1.0) < 1e-9 && std::abs(u[0]) < 1e-9);
            CHECK(axis);
        }
    }
    SUBCASE("hexagon from zonotope sign endpoints") {
        std::vector<Vec> pts = zonotope_vertex_candidates({{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}});
        HullResult h = hull(pts);
        std::vector<Vec> expected = {{-2.0, -2.0}, {-2.0, 0.0}, {0.0, -2.0},
                                     {0.0, 2.0},   {2.0, 0.0},  {2.0, 2.0}};
        REQUIRE(h.vertices.size() == expected.size());
        for (std::size_t i = 0; i < expected.size(); ++i)
            CHECK(vec_almost_equal(h.vertices[i], expected[i], 1e-9));
    }
}

TEST_CASE("hull invariants: containment and extremeness") {
    Rng rng(derive_seed(23, "hullprop"));
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Vec> pts;
        int npts = 4 + static_cast<int>(rng.uniform() * 6);
        for (int i = 0; i < npts; ++i) {
            Vec p = rng.gaussian_vec(3);
            pts.push_back(p);
            pts.push_back(vec_scale(p, -1.0));
        }
        if (rank(pts) < 3) continue;
        HullResult h = hull(pts);
        for (const Vec& p : pts)
            for (const Vec& u : h.facet_normals) CHECK(dot(u, p) <= 1.0 + 1e-9);
        // every reported vertex is extreme: it escapes the hull of the rest
        for (std::size_t i = 0; i < h.vertices.size(); ++i) {
            std::vector<Vec> rest;
            for (std::size_t j = 0; j < h.vertices.size(); ++j)
                if (j != i) rest.push_back(h.vertices[j]);
            if (rank(rest) < 3) continue;
            bool outside = false;
            for (const Vec& u : hull(rest).facet_normals)
                if (dot(u, h.vertices[i]) > 1.0 + 1e-9) { outside = true; break; }
            CHECK(outside);
        }
    }
}

TEST_CASE("hull rejects rank-deficient input by naming the rank") {
    try {
        hull({{1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}, {2.0, 0.0, 0.0}, {-2.0, 0.0, 0.0}});
        CHECK(false);
    } catch (const input_error& e) {
        CHECK(std::string(e.what()).find("rank 1") != std::string::npos);
    }
}

TEST_CASE("polar of the cube is the diamond") {
    ConvexBody star = polar(make_cube_vpolytope(2));
    Rng rng(derive_seed(29, "polar-cube"));
    for (int i = 0; i < 100; ++i) {
        Vec y = rng.gaussian_vec(2);
        CHECK(gauge(star, y) == doctest::Approx(std::abs(y[0]) + std::abs(y[1])).epsilon(1e-12));
    }
}

TEST_CASE("polar of the double cone is the cylinder") {
    ConvexBody cone = make_double_cone();
    ConvexBody star = polar(cone);
    ConvexBody cylinder = make_cylinder();
    Rng rng(derive_seed(31, "polar-cone"));
    for (int i = 0; i < 100; ++i) {
        Vec y = rng.gaussian_vec(3);
        CHECK(gauge(star, y) == doctest::Approx(gauge(cylinder, y)).epsilon(1e-12));
    }
}

TEST_CASE("polar of the square bipyramid is diamond x interval") {
    ConvexBody star = polar(make_square_bipyramid());
    ConvexBody expected =
        ConvexBody::linf_sum({make_cross_polytope(2), ConvexBody::interval(1.0)});
    Rng rng(derive_seed(37, "polar-bipyramid"));
    for (int i = 0; i < 100; ++i) {
        Vec y = rng.gaussian_vec(3);
        CHECK(gauge(star, y) == doctest::Approx(gauge(expected, y)).epsilon(1e-12));
    }
}

TEST_CASE("bipolar checks") {
    CHECK(bipolar_check(make_cube(3), 500, 123).pass);
    CHECK(bipolar_check(make_hexagon_zonotope(), 500, 123).pass);
    CheckReport ball = bipolar_check(ConvexBody::ball(4), 100, 7);
    CHECK(ball.pass);
    CHECK(ball.lhs == 0.0); // self-dual, identical values
}

TEST_CASE("bipolar and linear-polar invariants across the catalog") {
    std::vector<ConvexBody> bodies = {
        make_cube(2), make_cross_polytope(3), ConvexBody::ball(3), make_double_cone(),
        make_square_bipyramid(), make_hexagon_zonotope(), make_cube_vpolytope(3),
        ConvexBody::hpolytope({{1.0, 0.2}, {0.0, 1.0}, {0.7, -0.7}}),
    };
    Rng rng(derive_seed(41, "bipolar-suite"));
    for (const ConvexBody& k : bodies) {
        CHECK(bipolar_check(k, 200, 99).pass);
        // polar of a linear image = inverse-transpose image of the polar
        Mat t(static_cast<std::size_t>(k.dim()), static_cast<std::size_t>(k.dim()));
        do {
            for (std::size_t r = 0; r < t.rows(); ++r)
                for (std::size_t c = 0; c < t.cols(); ++c) t.at(r, c) = rng.uniform(-1.5, 1.5);
        } while (std::abs(det(t)) < 0.2);
        ConvexBody lhs = polar(ConvexBody::linear_image(t, k));
        ConvexBody rhs = ConvexBody::linear_image(inverse(t).transposed(), polar(k));
        for (int i = 0; i < 50; ++i) {
            Vec y = rng.sphere_point(static_cast<std::size_t>(k.dim()));
            CHECK(std::abs(gauge(lhs, y) - gauge(rhs, y)) <= 1e-7 * std::max(1.0, gauge(rhs, y)));
        }
    }
}

TEST_CASE("antitonicity: inclusion flips under polarity") {
    // K inside L on sampled supports implies polar(L) inside polar(K),
    // i.e. the gauge of polar(K) is the pointwise smaller one.
    std::vector<std::pair<ConvexBody, ConvexBody>> nested = {
        {make_cross_polytope(2), make_cube(2)},
        {ConvexBody::ball(3), make_cube(3)},
        {make_double_cone(), make_cylinder()},
        {make_hexagon_zonotope(),
         ConvexBody::linear_image([] {
             Mat s(2, 2);
             s.at(0, 0) = s.at(1, 1) = 2.0;
             return s;
         }(), make_cube(2))},
    };
    Rng rng(derive_seed(43, "antitone"));
    for (const auto& [k, l] : nested) {
        ConvexBody pk = polar(k), pl = polar(l);
        for (int i = 0; i < 200; ++i) {
            Vec u = rng.sphere_point(static_cast<std::size_t>(k.dim()));
            REQUIRE(support(k, u) <= support(l, u) + 1e-12);
            CHECK(gauge(pk, u) <= gauge(pl, u) + 1e-12);
        }
    }
}

TEST_CASE("vertex enumeration matches known polytopes") {
    // unit square from its four slabs
    std::vector<Vec> verts = enumerate_vertices(
        {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}, Vec(4, 1.0));
    REQUIRE(verts.size() == 4);
    for (const Vec& v : verts) {
        CHECK(std::abs(std::abs(v[0]) - 1.0) < 1e-9);
        CHECK(std::abs(std::abs(v[1]) - 1.0) < 1e-9);
    }
}
