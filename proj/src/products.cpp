#include "vp/products.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "vp/errors.hpp"
#include "vp/hull.hpp"
#include "vp/perturb.hpp"
#include "vp/polar.hpp"
#include "vp/rng.hpp"
#include "vp/volume.hpp"

namespace vp {

double mahler(const ConvexBody& k) { return volume(k) * volume(polar(k)); }

McEstimate mahler_mc(const ConvexBody& k, std::uint64_t samples, std::uint64_t seed) {
    McEstimate a = volume_mc(k, samples, derive_seed(seed, "mahler-body"));
    McEstimate b = volume_mc(polar(k), samples, derive_seed(seed, "mahler-polar"));
    McEstimate out;
    out.value = a.value * b.value;
    out.std_error = std::sqrt(a.std_error * a.std_error * b.value * b.value +
                              b.std_error * b.std_error * a.value * a.value);
    out.samples = samples;
    out.seed = seed;
    return out;
}

McEstimate mahler_estimate(const ConvexBody& k, std::uint64_t samples, std::uint64_t seed) {
    try {
        McEstimate exact;
        exact.value = mahler(k);
        exact.seed = seed;
        return exact;
    } catch (const capability_error&) {
    }
    double v = 0.0, v_err = 0.0;
    try {
        v = volume(k);
    } catch (const capability_error&) {
        McEstimate e = volume_mc(k, samples, derive_seed(seed, "mahler-est-body"));
        v = e.value;
        v_err = e.std_error;
    }
    double w = 0.0, w_err = 0.0;
    try {
        ConvexBody star = polar(k);
        try {
            w = volume(star);
        } catch (const capability_error&) {
            McEstimate e = volume_mc(star, samples, derive_seed(seed, "mahler-est-polar"));
            w = e.value;
            w_err = e.std_error;
        }
    } catch (const capability_error&) {
        // no explicit polar: integrate support^(-n) over the sphere
        McEstimate e = polar_volume_sphere(k, samples, derive_seed(seed, "mahler-est-sphere"));
        w = e.value;
        w_err = e.std_error;
    }
    McEstimate out;
    out.value = v * w;
    out.std_error = std::sqrt(v_err * v_err * w * w + w_err * w_err * v * v);
    out.samples = samples;
    out.seed = seed;
    return out;
}

namespace {

bool structurally_zonoid(const ConvexBody& k) {
    using Kind = ConvexBody::Kind;
    switch (k.kind()) {
        case Kind::Interval: return true;
        case Kind::Zonotope: return true;
        case Kind::Ball: return k.dim() == 1;
        case Kind::LinfSum: {
            for (const ConvexBody& p : k.parts())
                if (!structurally_zonoid(p)) return false;
            return true;
        }
        case Kind::Linear: return structurally_zonoid(k.base());
        default: return false;
    }
}

double lower_bound_value(int n) {
    return std::pow(4.0, n) / factorial(n);
}

} // namespace

SantaloReport santalo_check(const ConvexBody& k) {
    const int n = k.dim();
    const double omega2 = ball_volume(n) * ball_volume(n);
    const double lower = lower_bound_value(n);
    SantaloReport rep;
    std::string dig = digest(k.describe());
    McEstimate p = mahler_estimate(k, 200000, 20240511);
    if (p.std_error == 0.0) {
        rep.upper = make_report("santalo-upper", p.value, omega2, Relation::LessEqual,
                                1e-7 * std::max(1.0, omega2));
        rep.lower = make_report("santalo-lower", p.value, lower, Relation::GreaterEqual,
                                1e-7 * std::max(1.0, lower));
    } else {
        rep.upper = make_report("santalo-upper", p.value, omega2, Relation::LessEqual,
                                4.0 * p.std_error);
        rep.lower = make_report("santalo-lower", p.value, lower, Relation::GreaterEqual,
                                4.0 * p.std_error);
        rep.upper.samples = rep.lower.samples = p.samples;
        rep.upper.seed = rep.lower.seed = p.seed;
    }
    rep.upper.inputs_digest = rep.lower.inputs_digest = dig;
    if (!structurally_zonoid(k) && !is_unconditional(k, 64, 20240511))
        rep.lower.flags.push_back("conjectural bound");
    return rep;
}

CheckReport mahler_invariance_check(const ConvexBody& k, const Mat& t, std::uint64_t seed) {
    ConvexBody image = ConvexBody::linear_image(t, k);
    ConvexBody star = polar(k);
    double dev;
    double tol;
    std::uint64_t used_samples = 0;
    try {
        double p = mahler(k);
        double p_image = mahler(image);
        double p_star = mahler(star);
        dev = std::max(std::abs(p_image - p), std::abs(p - p_star)) / std::max(1.0, std::abs(p));
        tol = 1e-6;
    } catch (const capability_error&) {
        McEstimate p = mahler_mc(k, 200000, derive_seed(seed, "inv-base"));
        McEstimate p_image = mahler_mc(image, 200000, derive_seed(seed, "inv-image"));
        McEstimate p_star = mahler_mc(star, 200000, derive_seed(seed, "inv-star"));
        dev = std::max(std::abs(p_image.value - p.value), std::abs(p.value - p_star.value));
        tol = 4.0 * std::sqrt(p.std_error * p.std_error +
                              std::max(p_image.std_error, p_star.std_error) *
                                  std::max(p_image.std_error, p_star.std_error));
        used_samples = p.samples;
    }
    CheckReport rep = make_report("mahler-invariance", dev, 0.0, Relation::LessEqual, tol);
    rep.inputs_digest = digest(k.describe());
    rep.seed = seed;
    rep.samples = used_samples;
    return rep;
}

namespace {

struct IdentityTerms {
    double vol_body = 0.0;
    double vol_polar = 0.0;
    // one entry per signed atom, in measure order
    std::vector<double> inner;     // integral of |<u, y>| over the polar
    std::vector<double> proj_vol;  // |P_{u perp} Z|
    std::vector<double> weight;
    std::vector<Vec> direction;
};

IdentityTerms exact_identity_terms(const ConvexBody& z) {
    if (z.dim() < 2) throw input_error("projection identity: dimension must be >= 2");
    if (z.kind() != ConvexBody::Kind::Zonotope)
        throw input_error("projection identity: body must be a zonotope");
    IdentityTerms terms;
    terms.vol_body = volume(z);
    ConvexBody star = polar(z);
    terms.vol_polar = volume(star);
    std::vector<Simplex> tri = body_triangulation(star);
    for (const auto& atom : zonotope_measure(z).atoms) {
        terms.inner.push_back(integrate_abs_linear(tri, atom.direction));
        terms.proj_vol.push_back(volume(projection(z, atom.direction)));
        terms.weight.push_back(atom.weight);
        terms.direction.push_back(atom.direction);
    }
    return terms;
}

} // namespace

CheckReport projection_identity_check(const ConvexBody& z) {
    IdentityTerms t = exact_identity_terms(z);
    const int n = z.dim();
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < t.weight.size(); ++i) {
        lhs += t.weight[i] * t.inner[i];
        rhs += t.weight[i] * t.proj_vol[i];
    }
    lhs *= (n + 1) * t.vol_body;
    rhs *= 2.0 * t.vol_polar;
    CheckReport rep = make_report("projection-identity", lhs, rhs, Relation::Equal, 1e-7);
    rep.inputs_digest = digest(z.describe());
    return rep;
}

CheckReport projection_identity_check_mc(const ConvexBody& z, std::uint64_t samples,
                                         std::uint64_t seed) {
    if (z.dim() < 2) throw input_error("projection identity: dimension must be >= 2");
    if (z.kind() != ConvexBody::Kind::Zonotope)
        throw input_error("projection identity: body must be a zonotope");
    const int n = z.dim();
    ConvexBody star = polar(z);
    McEstimate va = volume_mc(z, samples, derive_seed(seed, "identity-body"));
    McEstimate vs = volume_mc(star, samples, derive_seed(seed, "identity-polar"));
    double inner_sum = 0.0, inner_var = 0.0, proj_sum = 0.0;
    std::uint64_t atom_index = 0;
    for (const auto& atom : zonotope_measure(z).atoms) {
        const Vec dir = atom.direction;
        McEstimate inner = mc_integral(
            star, [&dir](const Vec& y) { return std::abs(dot(dir, y)); }, samples,
            derive_seed(seed, "identity-inner", atom_index++));
        inner_sum += atom.weight * inner.value;
        inner_var += atom.weight * atom.weight * inner.std_error * inner.std_error;
        proj_sum += atom.weight * volume(projection(z, dir));
    }
    double lhs = (n + 1) * va.value * inner_sum;
    double rhs = 2.0 * vs.value * proj_sum;
    double lhs_err = (n + 1) * std::sqrt(va.std_error * va.std_error * inner_sum * inner_sum +
                                         va.value * va.value * inner_var);
    double rhs_err = 2.0 * vs.std_error * proj_sum;
    double tol = 4.0 * std::sqrt(lhs_err * lhs_err + rhs_err * rhs_err);
    CheckReport rep =
        make_report("projection-identity-mc", std::abs(lhs - rhs), 0.0, Relation::LessEqual, tol);
    rep.inputs_digest = digest(z.describe());
    rep.seed = seed;
    rep.samples = samples;
    return rep;
}

std::pair<Vec, CheckReport> projection_direction_witness(const ConvexBody& z) {
    IdentityTerms t = exact_identity_terms(z);
    const int n = z.dim();
    // Per-atom sides of the pointwise inequality; +-pairs give equal values,
    // so scan all atoms and break ties toward the lexicographically largest
    // direction (the canonical +g representative).
    std::size_t best = 0;
    double best_ratio = -1e300;
    for (std::size_t i = 0; i < t.weight.size(); ++i) {
        double lhs_i = (n + 1) * t.vol_body * t.inner[i];
        double rhs_i = 2.0 * t.vol_polar * t.proj_vol[i];
        double ratio = lhs_i / rhs_i;
        bool better = ratio > best_ratio * (1.0 + 1e-12) + 1e-300;
        bool tie = std::abs(ratio - best_ratio) <= 1e-12 * std::max(1.0, std::abs(best_ratio));
        if (best_ratio == -1e300 || (better && !tie)) {
            best = i;
            best_ratio = ratio;
        } else if (tie && lex_less(t.direction[best], t.direction[i])) {
            best = i;
        }
    }
    double lhs = (n + 1) * t.vol_body * t.inner[best];
    double rhs = 2.0 * t.vol_polar * t.proj_vol[best];
    CheckReport rep = make_report("projection-direction-witness", lhs, rhs,
                                  Relation::GreaterEqual, 1e-9 * std::max(1.0, std::abs(rhs)));
    rep.inputs_digest = digest(z.describe());
    return {t.direction[best], rep};
}

CheckReport concave_moment_check(const std::function<double(double)>& f, double p,
                                 double t_max, int quad_points) {
    if (!(p > 0.0)) throw input_error("concave_moment_check: p must be positive");
    if (!(t_max > 0.0)) throw input_error("concave_moment_check: t_max must be positive");
    if (quad_points < 3) throw input_error("concave_moment_check: need at least 3 points");
    if (quad_points % 2 == 0) ++quad_points;

    std::vector<double> ts(static_cast<std::size_t>(quad_points));
    std::vector<double> fv(static_cast<std::size_t>(quad_points));
    std::vector<double> tf(static_cast<std::size_t>(quad_points));
    const double h = t_max / (quad_points - 1);
    for (int i = 0; i < quad_points; ++i) {
        ts[i] = i * h;
        fv[i] = f(ts[i]);
        if (!(fv[i] >= 0.0))
            throw precondition_error("concave_moment_check: f must be nonnegative");
        tf[i] = ts[i] * fv[i];
    }
    if (std::abs(fv[0] - 1.0) > 1e-9)
        throw precondition_error("concave_moment_check: f(0) must equal 1");

    // f^(1/p) midpoint concavity on the support grid.
    for (int i = 1; i + 1 < quad_points; ++i) {
        if (fv[i - 1] <= 0.0 || fv[i] <= 0.0 || fv[i + 1] <= 0.0) continue;
        double hl = std::pow(fv[i - 1], 1.0 / p);
        double hc = std::pow(fv[i], 1.0 / p);
        double hr = std::pow(fv[i + 1], 1.0 / p);
        if (hc < 0.5 * (hl + hr) - 1e-10) {
            std::ostringstream msg;
            msg << "concave_moment_check: f^(1/p) fails midpoint concavity on the grid triple ("
                << ts[i - 1] << ", " << ts[i] << ", " << ts[i + 1] << ")";
            throw precondition_error(msg.str());
        }
    }

    double int_f = simpson(fv, h);
    double lhs = simpson(tf, h);
    double rhs = (p + 1.0) / (p + 2.0) * int_f * int_f;
    CheckReport rep = make_report("concave-moment", lhs, rhs, Relation::LessEqual, 1e-9);
    rep.equality = std::abs(lhs - rhs) <= 1e-9;
    return rep;
}

namespace {

struct SliceClosedForm {
    double lhs; // integral of |<x, y>| over the body
    double g0;  // central section volume
};

// Closed forms for the ball and for interval-axis sections of l1/linf sums.
std::optional<SliceClosedForm> closed_form_slice(const ConvexBody& b, const Vec& x) {
    using Kind = ConvexBody::Kind;
    const int n = b.dim();
    if (b.kind() == Kind::Ball) {
        double wn1 = ball_volume(n - 1);
        return SliceClosedForm{2.0 * wn1 / (n + 1), wn1};
    }
    if (b.kind() != Kind::L1Sum && b.kind() != Kind::LinfSum) return std::nullopt;
    int axis = -1;
    for (int i = 0; i < n; ++i) {
        if (std::abs(std::abs(x[i]) - 1.0) < 1e-12) axis = i;
        else if (std::abs(x[i]) > 1e-12) return std::nullopt;
    }
    if (axis < 0) return std::nullopt;
    int off = 0;
    const ConvexBody* hit = nullptr;
    std::vector<ConvexBody> rest;
    for (const ConvexBody& p : b.parts()) {
        if (axis >= off && axis < off + p.dim()) {
            if (p.kind() != Kind::Interval) return std::nullopt;
            hit = &p;
        } else {
            rest.push_back(p);
        }
        off += p.dim();
    }
    if (hit == nullptr || rest.empty()) return std::nullopt;
    double a = hit->halfwidth();
    if (b.kind() == Kind::L1Sum) {
        ConvexBody other = rest.size() == 1 ? rest[0] : ConvexBody::l1_sum(rest);
        double v = volume(other);
        int d = other.dim();
        return SliceClosedForm{2.0 * v * a * a / ((d + 1.0) * (d + 2.0)), v};
    }
    ConvexBody other = rest.size() == 1 ? rest[0] : ConvexBody::linf_sum(rest);
    return SliceClosedForm{volume(other) * a * a, volume(other)};
}

bool is_polytopal(const ConvexBody& b) {
    using Kind = ConvexBody::Kind;
    return b.kind() == Kind::VPolytope || b.kind() == Kind::HPolytope ||
           b.kind() == Kind::Zonotope;
}

} // namespace

double central_section_volume(const ConvexBody& k, const Vec& x) {
    if (std::abs(norm(x) - 1.0) > 1e-12)
        throw input_error("central_section_volume: direction must be a unit vector");
    const std::size_t n = static_cast<std::size_t>(k.dim());
    if (n < 2) throw input_error("central_section_volume: dimension must be >= 2");
    if (auto cf = closed_form_slice(k, x)) return cf->g0;
    int axis = -1;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(std::abs(x[i]) - 1.0) < 1e-12) axis = static_cast<int>(i);
        else if (std::abs(x[i]) > 1e-12) { axis = -1; break; }
    }
    if (axis >= 0) return volume(coordinate_section(k, axis));
    if (!is_polytopal(k))
        throw capability_error("central_section_volume: no exact path for this body/direction");

    // Restrict the facet system to the hyperplane x^perp.
    std::vector<Vec> body_facets;
    if (k.kind() == ConvexBody::Kind::HPolytope) {
        for (const Vec& u : k.normals()) {
            body_facets.push_back(u);
            body_facets.push_back(vec_scale(u, -1.0));
        }
    } else {
        body_facets = k.facet_normals();
    }
    std::vector<Vec> basis = orthonormal_complement(x);
    std::vector<Vec> local;
    for (const Vec& u : body_facets) {
        Vec q(n - 1);
        for (std::size_t j = 0; j + 1 < n; ++j) q[j] = dot(basis[j], u);
        if (norm(q) > 1e-12) local.push_back(std::move(q));
    }
    std::vector<Vec> verts = enumerate_vertices(local, Vec(local.size(), 1.0));
    if (n - 1 == 1) {
        double lo = verts.front()[0], hi = verts.back()[0];
        return hi - lo;
    }
    return simplices_volume(triangulate_convex(verts));
}

CheckReport slice_moment_check(const ConvexBody& b, const Vec& x, std::uint64_t samples,
                               std::uint64_t seed) {
    if (std::abs(norm(x) - 1.0) > 1e-12)
        throw input_error("slice_moment_check: direction must be a unit vector");
    const int n = b.dim();
    if (n < 2) throw input_error("slice_moment_check: dimension must be >= 2");
    std::string dig = digest(b.describe() + "|slice");

    // Exact route when both the moment and the section have one.
    try {
        double lhs, g0;
        if (auto cf = closed_form_slice(b, x)) {
            lhs = cf->lhs;
            g0 = cf->g0;
        } else if (is_polytopal(b)) {
            lhs = integrate_abs_linear(body_triangulation(b), x);
            g0 = central_section_volume(b, x);
        } else {
            throw capability_error("no exact slice route");
        }
        if (g0 < 1e-12) throw input_error("slice_moment_check: central section volume below 1e-12");
        double vol = volume(b);
        double rhs = n / (2.0 * (n + 1.0)) * vol * vol / g0;
        CheckReport rep = make_report("slice-moment", lhs, rhs, Relation::LessEqual,
                                      1e-7 * std::max(1.0, std::abs(rhs)));
        rep.equality = std::abs(lhs - rhs) <= 1e-7 * std::max(1.0, std::abs(rhs));
        rep.inputs_digest = dig;
        return rep;
    } catch (const capability_error&) {
        return slice_moment_check_mc(b, x, samples, seed);
    }
}

CheckReport slice_moment_check_mc(const ConvexBody& b, const Vec& x, std::uint64_t samples,
                                  std::uint64_t seed) {
    if (std::abs(norm(x) - 1.0) > 1e-12)
        throw input_error("slice_moment_check: direction must be a unit vector");
    const int n = b.dim();
    if (n < 2) throw input_error("slice_moment_check: dimension must be >= 2");
    std::string dig = digest(b.describe() + "|slice");

    McEstimate lhs = mc_integral(
        b, [&x](const Vec& y) { return std::abs(dot(x, y)); }, samples,
        derive_seed(seed, "slice-lhs"));
    McEstimate vol = volume_mc(b, samples, derive_seed(seed, "slice-vol"));

    // Central slice by membership sampling inside the hyperplane itself.
    std::vector<Vec> basis = orthonormal_complement(x);
    Vec half(static_cast<std::size_t>(n - 1));
    double boxvol = 1.0;
    for (std::size_t j = 0; j + 1 < static_cast<std::size_t>(n); ++j) {
        half[j] = support(b, basis[j]);
        boxvol *= 2.0 * half[j];
    }
    Rng rng(derive_seed(seed, "slice-g0"));
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        Vec local = rng.box_point(half);
        Vec y(static_cast<std::size_t>(n), 0.0);
        for (std::size_t j = 0; j + 1 < static_cast<std::size_t>(n); ++j)
            y = vec_add(y, vec_scale(basis[j], local[j]));
        if (member(b, y, 0.0)) ++hits;
    }
    double pfrac = static_cast<double>(hits) / static_cast<double>(samples);
    double g0 = boxvol * pfrac;
    double g0_err = boxvol * std::sqrt(pfrac * (1.0 - pfrac) / static_cast<double>(samples));
    if (g0 < 1e-12) throw input_error("slice_moment_check: central section volume below 1e-12");

    double rhs = n / (2.0 * (n + 1.0)) * vol.value * vol.value / g0;
    double rhs_err = rhs * std::sqrt(4.0 * vol.std_error * vol.std_error / (vol.value * vol.value) +
                                     g0_err * g0_err / (g0 * g0));
    double tol = 4.0 * std::sqrt(lhs.std_error * lhs.std_error + rhs_err * rhs_err);
    CheckReport rep = make_report("slice-moment-mc", lhs.value, rhs, Relation::LessEqual, tol);
    rep.equality = std::abs(lhs.value - rhs) <= tol;
    rep.inputs_digest = dig;
    rep.seed = seed;
    rep.samples = samples;
    return rep;
}

CheckReport zonoid_chain_check(const ConvexBody& z, std::uint64_t seed) {
    if (z.kind() != ConvexBody::Kind::Zonotope)
        throw input_error("zonoid_chain_check: body must be a zonotope");
    const int n = z.dim();
    if (n < 2) throw input_error("zonoid_chain_check: dimension must be >= 2");

    ConvexBody current = z;
    double p_top = mahler(z);
    bool links_ok = true;
    std::ostringstream notes;
    notes << "P(Z_" << n << ") = " << p_top;
    double p_current = p_top;
    for (int k = n; k >= 2; --k) {
        auto [x0, witness] = projection_direction_witness(current);
        links_ok = links_ok && witness.pass;
        ConvexBody next = projection(current, x0);
        double p_next = mahler(next);
        double bound = 4.0 / k * p_next;
        if (p_current < bound - 1e-9 * std::max(1.0, bound)) links_ok = false;
        notes << "; P(Z_" << k - 1 << ") = " << p_next << " (link needs >= " << bound << ")";
        current = next;
        p_current = p_next;
    }
    // the 1-D end of the chain has product exactly 4
    if (std::abs(p_current - 4.0) > 1e-9) links_ok = false;

    CheckReport rep = make_report("zonoid-chain", p_top, lower_bound_value(n),
                                  Relation::GreaterEqual, 1e-9 * std::max(1.0, lower_bound_value(n)));
    rep.pass = rep.pass && links_ok;
    rep.inputs_digest = digest(z.describe());
    rep.seed = seed;
    rep.notes = notes.str();
    return rep;
}

} // namespace vp
