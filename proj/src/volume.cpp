#include "vp/volume.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vp/errors.hpp"
#include "vp/rng.hpp"

namespace vp {

double ball_volume(int n) {
    return std::pow(3.14159265358979323846264338327950288, n / 2.0) /
           std::tgamma(n / 2.0 + 1.0);
}

double sphere_measure(int n) { return n * ball_volume(n); }

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double zonotope_volume(const std::vector<Vec>& gens) {
    const std::size_t n = gens[0].size();
    if (gens.size() > 20)
        throw capability_error("zonotope exact volume capped at 20 generators");
    double total = 0.0;
    Mat m(n, n);
    std::vector<std::size_t> idx(n);
    // Sum of |det| over all n-subsets of generators.
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == n) {
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) m.at(r, c) = gens[idx[r]][c];
            total += std::abs(det(m));
            return;
        }
        for (std::size_t i = start; i + (n - depth) <= gens.size(); ++i) {
            idx[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    return std::pow(2.0, static_cast<double>(n)) * total;
}

// vol(A (+)_1 B) = vol(A) vol(B) a! b! / (a+b)!
double l1_fold(double vol_a, int dim_a, double vol_b, int dim_b) {
    return vol_a * vol_b * factorial(dim_a) * factorial(dim_b) / factorial(dim_a + dim_b);
}

} // namespace

double volume(const ConvexBody& k) {
    using Kind = ConvexBody::Kind;
    switch (k.kind()) {
        case Kind::Ball: return ball_volume(k.dim());
        case Kind::Interval: return 2.0 * k.halfwidth();
        case Kind::LinfSum: {
            double v = 1.0;
            for (const ConvexBody& p : k.parts()) v *= volume(p);
            return v;
        }
        case Kind::L1Sum: {
            double v = 0.0;
            int d = 0;
            bool first = true;
            for (const ConvexBody& p : k.parts()) {
                if (first) {
                    v = volume(p);
                    d = p.dim();
                    first = false;
                } else {
                    v = l1_fold(v, d, volume(p), p.dim());
                    d += p.dim();
                }
            }
            return v;
        }
        case Kind::Zonotope: return zonotope_volume(k.generators());
        case Kind::VPolytope:
        case Kind::HPolytope: return simplices_volume(body_triangulation(k));
        case Kind::Linear: return std::abs(det(k.matrix())) * volume(k.base());
    }
    throw capability_error("volume: no exact path for this body");
}

std::vector<Simplex> body_triangulation(const ConvexBody& k) {
    using Kind = ConvexBody::Kind;
    switch (k.kind()) {
        case Kind::VPolytope: return triangulate_vrep(k.vertices(), k.facet_normals());
        case Kind::HPolytope: {
            std::vector<Vec> facets;
            for (const Vec& u : k.normals()) {
                facets.push_back(u);
                facets.push_back(vec_scale(u, -1.0));
            }
            return triangulate_vrep(k.hpolytope_vertices(), facets);
        }
        case Kind::Zonotope: {
            if (k.dim() == 1) {
                double s = 0.0;
                for (const Vec& g : k.generators()) s += std::abs(g[0]);
                return {Simplex{Vec{-s}, Vec{s}}};
            }
            std::vector<Vec> facets;
            for (const auto& [u, h] : k.zonotope_facets()) {
                facets.push_back(vec_scale(u, 1.0 / h));
                facets.push_back(vec_scale(u, -1.0 / h));
            }
            return triangulate_vrep(zonotope_vertex_candidates(k.generators()), facets);
        }
        default:
            throw capability_error("body_triangulation: body is not polytopal");
    }
}

namespace {

Vec bounding_cube_halfwidths(const ConvexBody& k) {
    const int n = k.dim();
    double r = 0.0;
    for (int i = 0; i < n; ++i) {
        Vec e(n, 0.0);
        e[i] = 1.0;
        r = std::max(r, support(k, e));
    }
    return Vec(static_cast<std::size_t>(n), r);
}

} // namespace

McEstimate volume_mc(const ConvexBody& k, std::uint64_t samples, std::uint64_t seed) {
    if (samples < 1000) throw input_error("volume_mc: need at least 1e3 samples");
    Vec half = bounding_cube_halfwidths(k);
    double boxvol = 1.0;
    for (double h : half) boxvol *= 2.0 * h;
    Rng rng(derive_seed(seed, "volume_mc"));
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < samples; ++i)
        if (member(k, rng.box_point(half), 0.0)) ++hits;
    double p = static_cast<double>(hits) / static_cast<double>(samples);
    McEstimate est;
    est.value = boxvol * p;
    est.std_error = boxvol * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    est.samples = samples;
    est.seed = seed;
    return est;
}

McEstimate mc_integral(const ConvexBody& k, const std::function<double(const Vec&)>& f,
                       std::uint64_t samples, std::uint64_t seed) {
    if (samples < 1000) throw input_error("mc_integral: need at least 1e3 samples");
    Vec half = bounding_cube_halfwidths(k);
    double boxvol = 1.0;
    for (double h : half) boxvol *= 2.0 * h;
    Rng rng(derive_seed(seed, "mc_integral"));
    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        Vec x = rng.box_point(half);
        double v = member(k, x, 0.0) ? f(x) : 0.0;
        sum += v;
        sumsq += v * v;
    }
    double nsamp = static_cast<double>(samples);
    double mean = sum / nsamp;
    double var = std::max(0.0, sumsq / nsamp - mean * mean);
    McEstimate est;
    est.value = boxvol * mean;
    est.std_error = boxvol * std::sqrt(var / nsamp);
    est.samples = samples;
    est.seed = seed;
    return est;
}

McEstimate polar_volume_sphere(const ConvexBody& k, std::uint64_t sphere_samples,
                               std::uint64_t seed) {
    if (k.dim() < 2) throw input_error("polar_volume_sphere: dimension must be >= 2");
    const int n = k.dim();
    Rng rng(derive_seed(seed, "polar_volume_sphere"));
    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t i = 0; i < sphere_samples; ++i) {
        Vec theta = rng.sphere_point(static_cast<std::size_t>(n));
        double h = support(k, theta);
        double v = std::pow(h, -n);
        sum += v;
        sumsq += v * v;
    }
    double ns = static_cast<double>(sphere_samples);
    double mean = sum / ns;
    double var = std::max(0.0, sumsq / ns - mean * mean);
    McEstimate est;
    est.value = ball_volume(n) * mean;
    est.std_error = ball_volume(n) * std::sqrt(var / ns);
    est.samples = sphere_samples;
    est.seed = seed;
    return est;
}

namespace {

// Closed-form profile lookup. Returns true when the (body, direction) pair
// has an exact section profile.
bool exact_profile_value(const ConvexBody& k, const Vec& direction, double t, double* out) {
    using Kind = ConvexBody::Kind;
    const int n = k.dim();
    if (k.kind() == Kind::Ball && n >= 2) {
        double r2 = 1.0 - t * t;
        *out = r2 <= 0.0 ? 0.0 : ball_volume(n - 1) * std::pow(r2, (n - 1) / 2.0);
        return true;
    }
    if (k.kind() != Kind::L1Sum && k.kind() != Kind::LinfSum) return false;
    // Direction must be +-e_axis with the axis inside an interval part.
    int axis = -1;
    for (int i = 0; i < n; ++i) {
        if (std::abs(std::abs(direction[i]) - 1.0) < 1e-12) {
            axis = i;
        } else if (std::abs(direction[i]) > 1e-12) {
            return false;
        }
    }
    if (axis < 0) return false;
    int off = 0;
    const ConvexBody* hit = nullptr;
    std::vector<ConvexBody> rest;
    for (const ConvexBody& p : k.parts()) {
        if (axis >= off && axis < off + p.dim()) {
            if (p.kind() != Kind::Interval) return false;
            hit = &p;
        } else {
            rest.push_back(p);
        }
        off += p.dim();
    }
    if (hit == nullptr || rest.empty()) return false;
    double a = hit->halfwidth();
    double rest_vol = 1.0;
    int rest_dim = 0;
    if (k.kind() == Kind::L1Sum) {
        ConvexBody other = rest.size() == 1 ? rest[0] : ConvexBody::l1_sum(rest);
        rest_vol = volume(other);
        rest_dim = other.dim();
        double s = 1.0 - std::abs(t) / a;
        *out = s <= 0.0 ? 0.0 : rest_vol * std::pow(s, rest_dim);
    } else {
        ConvexBody other = rest.size() == 1 ? rest[0] : ConvexBody::linf_sum(rest);
        rest_vol = volume(other);
        *out = std::abs(t) <= a ? rest_vol : 0.0;
    }
    return true;
}

} // namespace

SectionProfile section_profile(const ConvexBody& k, const Vec& direction, int grid_points,
                               std::uint64_t samples, std::uint64_t seed) {
    if (k.dim() < 2) throw input_error("section_profile: dimension must be >= 2");
    if (std::abs(norm(direction) - 1.0) > 1e-12)
        throw input_error("section_profile: direction must be a unit vector");
    if (grid_points < 16) throw input_error("section_profile: need at least 16 grid points");
    if (grid_points % 2 == 0) ++grid_points; // Simpson wants an odd count

    const double a = support(k, direction);
    SectionProfile prof;
    prof.direction = direction;
    prof.ts.resize(static_cast<std::size_t>(grid_points));
    prof.g.resize(static_cast<std::size_t>(grid_points));
    prof.g_err.assign(static_cast<std::size_t>(grid_points), 0.0);
    for (int i = 0; i < grid_points; ++i)
        prof.ts[i] = -a + 2.0 * a * i / (grid_points - 1);

    double probe = 0.0;
    if (exact_profile_value(k, direction, 0.0, &probe)) {
        prof.exact = true;
        for (int i = 0; i < grid_points; ++i)
            exact_profile_value(k, direction, prof.ts[i], &prof.g[i]);
        return prof;
    }

    // Membership sampling inside the slice's own affine hull: zero slab
    // thickness, so no thickness bias enters the estimate.
    const std::size_t n = static_cast<std::size_t>(k.dim());
    std::vector<Vec> basis = orthonormal_complement(direction);
    Vec half(n - 1);
    double boxvol = 1.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        half[j] = support(k, basis[j]);
        boxvol *= 2.0 * half[j];
    }
    for (int i = 0; i < grid_points; ++i) {
        Rng rng(derive_seed(seed, "section_profile", static_cast<std::uint64_t>(i)));
        Vec center = vec_scale(direction, prof.ts[i]);
        std::uint64_t hits = 0;
        for (std::uint64_t s = 0; s < samples; ++s) {
            Vec local = rng.box_point(half);
            Vec y = center;
            for (std::size_t j = 0; j + 1 < n; ++j) y = vec_add(y, vec_scale(basis[j], local[j]));
            if (member(k, y, 0.0)) ++hits;
        }
        double p = static_cast<double>(hits) / static_cast<double>(samples);
        prof.g[i] = boxvol * p;
        prof.g_err[i] = boxvol * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    }
    return prof;
}

CheckReport brunn_concavity_check(const SectionProfile& profile, int n) {
    if (n < 2) throw input_error("brunn_concavity_check: dimension must be >= 2");
    const double expo = 1.0 / (n - 1);
    double scale = 0.0;
    for (double v : profile.g) scale = std::max(scale, v);
    double worst = -1e300;
    for (std::size_t i = 1; i + 1 < profile.g.size(); ++i) {
        double gm = profile.g[i - 1], gc = profile.g[i], gp = profile.g[i + 1];
        if (gm <= 1e-12 * scale || gc <= 1e-12 * scale || gp <= 1e-12 * scale) continue;
        double hm = std::pow(gm, expo), hc = std::pow(gc, expo), hp = std::pow(gp, expo);
        // sigma of g^expo propagated from sigma of g
        auto herr = [&](double g, double e) { return g > 0.0 ? expo * std::pow(g, expo) * e / g : 0.0; };
        double sigma = std::sqrt(0.25 * herr(gm, profile.g_err[i - 1]) * herr(gm, profile.g_err[i - 1]) +
                                 herr(gc, profile.g_err[i]) * herr(gc, profile.g_err[i]) +
                                 0.25 * herr(gp, profile.g_err[i + 1]) * herr(gp, profile.g_err[i + 1]));
        worst = std::max(worst, 0.5 * (hm + hp) - hc - 3.0 * sigma);
    }
    CheckReport rep = make_report("brunn-concavity", worst == -1e300 ? 0.0 : worst, 0.0,
                                  Relation::LessEqual, 1e-9 * std::max(1.0, scale));
    return rep;
}

ConvexBody projection(const ConvexBody& k, const Vec& direction) {
    if (std::abs(norm(direction) - 1.0) > 1e-12)
        throw input_error("projection: direction must be a unit vector");
    using Kind = ConvexBody::Kind;
    const std::size_t n = static_cast<std::size_t>(k.dim());
    if (n < 2) throw input_error("projection: dimension must be >= 2");
    std::vector<Vec> basis = orthonormal_complement(direction);
    auto project = [&](const Vec& v) {
        Vec q(n - 1);
        for (std::size_t j = 0; j + 1 < n; ++j) q[j] = dot(basis[j], v);
        return q;
    };
    if (k.kind() == Kind::Zonotope) {
        std::vector<Vec> gens;
        for (const Vec& g : k.generators()) {
            Vec q = project(g);
            if (norm(q) > 1e-12) gens.push_back(std::move(q));
        }
        if (gens.empty()) throw input_error("projection: all generators project to zero");
        return ConvexBody::zonotope(std::move(gens));
    }
    if (k.kind() == Kind::VPolytope) {
        std::vector<Vec> pts;
        pts.reserve(k.vertices().size());
        for (const Vec& v : k.vertices()) pts.push_back(project(v));
        if (n - 1 == 1) {
            double hi = 0.0;
            for (const Vec& p : pts) hi = std::max(hi, std::abs(p[0]));
            return ConvexBody::interval(hi);
        }
        HullResult h = hull(pts);
        return ConvexBody::vpolytope_with_facets(h.vertices, h.facet_normals);
    }
    throw capability_error("projection: only zonotopes and vpolytopes project exactly");
}

ConvexBody coordinate_section(const ConvexBody& k, int axis) {
    using Kind = ConvexBody::Kind;
    const int n = k.dim();
    if (n < 2) throw input_error("coordinate_section: dimension must be >= 2");
    if (axis < 0 || axis >= n) throw input_error("coordinate_section: axis out of range");
    switch (k.kind()) {
        case Kind::Ball: return ConvexBody::ball(n - 1);
        case Kind::L1Sum:
        case Kind::LinfSum: {
            std::vector<ConvexBody> kept;
            int off = 0;
            for (const ConvexBody& p : k.parts()) {
                if (axis >= off && axis < off + p.dim()) {
                    if (p.dim() > 1) kept.push_back(coordinate_section(p, axis - off));
                    // 1-D parts vanish from the section
                } else {
                    kept.push_back(p);
                }
                off += p.dim();
            }
            if (kept.empty()) throw input_error("coordinate_section: section is a point");
            if (kept.size() == 1) return kept[0];
            return k.kind() == Kind::L1Sum ? ConvexBody::l1_sum(std::move(kept))
                                           : ConvexBody::linf_sum(std::move(kept));
        }
        case Kind::VPolytope:
        case Kind::HPolytope:
        case Kind::Zonotope: {
            std::vector<Vec> body_facets;
            if (k.kind() == Kind::HPolytope) {
                for (const Vec& u : k.normals()) {
                    body_facets.push_back(u);
                    body_facets.push_back(vec_scale(u, -1.0));
                }
            } else {
                body_facets = k.facet_normals();
            }
            std::vector<Vec> reduced;
            for (const Vec& u : body_facets) {
                Vec q;
                q.reserve(static_cast<std::size_t>(n - 1));
                for (int i = 0; i < n; ++i)
                    if (i != axis) q.push_back(u[i]);
                if (norm(q) > 1e-12) reduced.push_back(std::move(q));
            }
            if (n - 1 == 1) {
                double bound = 1e300;
                for (const Vec& u : reduced) bound = std::min(bound, 1.0 / std::abs(u[0]));
                return ConvexBody::interval(bound);
            }
            return ConvexBody::hpolytope(std::move(reduced));
        }
        default:
            throw capability_error("coordinate_section: no exact path for this variant");
    }
}

double simpson(const std::vector<double>& values, double step) {
    if (values.size() < 3 || values.size() % 2 == 0)
        throw input_error("simpson: need an odd number of points (>= 3)");
    double s = values.front() + values.back();
    for (std::size_t i = 1; i + 1 < values.size(); ++i) s += values[i] * (i % 2 == 1 ? 4.0 : 2.0);
    return s * step / 3.0;
}

} // namespace vp
