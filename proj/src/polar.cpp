#include "vp/polar.hpp"

#include <algorithm>
#include <cmath>

#include "vp/errors.hpp"
#include "vp/hull.hpp"
#include "vp/rng.hpp"

namespace vp {

ConvexBody polar(const ConvexBody& k) {
    using Kind = ConvexBody::Kind;
    switch (k.kind()) {
        case Kind::Ball: return k;
        case Kind::Interval: return ConvexBody::interval(1.0 / k.halfwidth());
        case Kind::VPolytope: return ConvexBody::hpolytope(k.vertices());
        case Kind::HPolytope: {
            // conv(+-U); the hull prunes normals that were redundant slabs.
            std::vector<Vec> pts;
            pts.reserve(k.normals().size() * 2);
            for (const Vec& u : k.normals()) {
                pts.push_back(u);
                pts.push_back(vec_scale(u, -1.0));
            }
            HullResult h = hull(pts);
            return ConvexBody::vpolytope_with_facets(h.vertices, h.facet_normals);
        }
        case Kind::Zonotope: {
            if (k.dim() == 1) {
                double s = 0.0;
                for (const Vec& g : k.generators()) s += std::abs(g[0]);
                return ConvexBody::interval(1.0 / s);
            }
            // Vertices of the polar are the scaled facet directions of the
            // zonotope; its facets are cut by the zonotope's sign points.
            std::vector<Vec> verts;
            for (const auto& [u, h] : k.zonotope_facets()) {
                verts.push_back(vec_scale(u, 1.0 / h));
                verts.push_back(vec_scale(u, -1.0 / h));
            }
            std::sort(verts.begin(), verts.end(), lex_less);
            std::vector<Vec> facets = zonotope_vertex_candidates(k.generators());
            return ConvexBody::vpolytope_with_facets(std::move(verts), std::move(facets));
        }
        case Kind::L1Sum:
        case Kind::LinfSum: {
            std::vector<ConvexBody> dual_parts;
            dual_parts.reserve(k.parts().size());
            for (const ConvexBody& p : k.parts()) dual_parts.push_back(polar(p));
            return k.kind() == Kind::L1Sum ? ConvexBody::linf_sum(std::move(dual_parts))
                                           : ConvexBody::l1_sum(std::move(dual_parts));
        }
        case Kind::Linear:
            return ConvexBody::linear_image(inverse(k.matrix()).transposed(), polar(k.base()));
    }
    throw input_error("polar: unknown body kind");
}

CheckReport bipolar_check(const ConvexBody& k, std::uint64_t samples, std::uint64_t seed) {
    ConvexBody kk = polar(polar(k));
    Rng rng(derive_seed(seed, "bipolar"));
    double worst = 0.0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        Vec x = rng.sphere_point(static_cast<std::size_t>(k.dim()));
        worst = std::max(worst, std::abs(gauge(k, x) - gauge(kk, x)));
    }
    CheckReport rep = make_report("bipolar", worst, 0.0, Relation::LessEqual, 1e-7);
    rep.inputs_digest = digest(k.describe());
    rep.seed = seed;
    rep.samples = samples;
    return rep;
}

} // namespace vp
