#include "vp/hull.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vp/errors.hpp"

namespace vp {

namespace {

constexpr double kCombinationBudget = 4e7;

std::vector<Vec> dedupe_points(const std::vector<Vec>& points, double tol) {
    std::vector<Vec> out;
    for (const Vec& p : points) {
        bool seen = false;
        for (const Vec& q : out)
            if (vec_almost_equal(p, q, tol)) { seen = true; break; }
        if (!seen) out.push_back(p);
    }
    return out;
}

double coordinate_scale(const std::vector<Vec>& points) {
    double s = 0.0;
    for (const Vec& p : points)
        for (double v : p) s = std::max(s, std::abs(v));
    return s > 0.0 ? s : 1.0;
}

// Visits every k-subset of {0..n-1} in lexicographic order.
template <typename F>
void for_each_combination(std::size_t n, std::size_t k, F&& fn) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        fn(idx);
        std::size_t i = k;
        while (i-- > 0) {
            if (idx[i] != i + n - k) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
    }
}

} // namespace

PolyData hull_general(const std::vector<Vec>& raw) {
    if (raw.empty()) throw input_error("hull: no points");
    const std::size_t n = raw[0].size();
    const double scale = coordinate_scale(raw);
    std::vector<Vec> points = dedupe_points(raw, 1e-10 * scale);
    if (n == 0) throw input_error("hull: zero-dimensional points");

    Vec centroid(n, 0.0);
    for (const Vec& p : points) centroid = vec_add(centroid, p);
    centroid = vec_scale(centroid, 1.0 / static_cast<double>(points.size()));

    std::vector<Vec> shifted;
    shifted.reserve(points.size());
    for (const Vec& p : points) shifted.push_back(vec_sub(p, centroid));

    std::size_t r = rank(shifted, 1e-9 * scale);
    if (r < n)
        throw input_error("hull: input has affine rank " + std::to_string(r) +
                          " but ambient dimension is " + std::to_string(n));

    if (binomial(static_cast<int>(points.size()), static_cast<int>(n)) > kCombinationBudget)
        throw capability_error("hull: facet enumeration budget exceeded for " +
                               std::to_string(points.size()) + " points in dimension " +
                               std::to_string(n));

    // 1-D case: a segment.
    if (n == 1) {
        PolyData out;
        double lo = points[0][0], hi = points[0][0];
        for (const Vec& p : points) { lo = std::min(lo, p[0]); hi = std::max(hi, p[0]); }
        out.vertices = {Vec{lo}, Vec{hi}};
        out.facets = {Halfspace{Vec{-1.0}, -lo}, Halfspace{Vec{1.0}, hi}};
        return out;
    }

    std::vector<Halfspace> facets; // in shifted frame, unit normals
    const double facet_tol = 1e-9 * scale;
    Mat sys(n, n);
    Vec ones(n, 1.0);
    for_each_combination(points.size(), n, [&](const std::vector<std::size_t>& idx) {
        for (std::size_t rI = 0; rI < n; ++rI)
            for (std::size_t c = 0; c < n; ++c) sys.at(rI, c) = shifted[idx[rI]][c];
        Vec u = solve(sys, ones);
        if (u.empty()) return;
        double len = norm(u);
        if (len < 1e-12) return;
        Vec unit = vec_scale(u, 1.0 / len);
        double offset = 1.0 / len;
        double hi = -1e300;
        for (const Vec& p : shifted) hi = std::max(hi, dot(unit, p));
        if (hi > offset + facet_tol) return; // not supporting
        for (const Halfspace& f : facets)
            if (std::abs(f.offset - offset) <= facet_tol && vec_almost_equal(f.normal, unit, 1e-7))
                return;
        facets.push_back({unit, offset});
    });

    std::sort(facets.begin(), facets.end(),
              [](const Halfspace& a, const Halfspace& b) { return lex_less(a.normal, b.normal); });

    // A point is extreme exactly when its incident facet normals span R^n.
    std::vector<Vec> vertices;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<Vec> incident;
        for (const Halfspace& f : facets)
            if (std::abs(dot(f.normal, shifted[i]) - f.offset) <= facet_tol)
                incident.push_back(f.normal);
        if (incident.size() >= n && rank(incident, 1e-9) == n) vertices.push_back(points[i]);
    }
    std::sort(vertices.begin(), vertices.end(), lex_less);

    PolyData out;
    out.vertices = std::move(vertices);
    out.facets.reserve(facets.size());
    for (const Halfspace& f : facets)
        out.facets.push_back({f.normal, f.offset + dot(f.normal, centroid)});
    return out;
}

HullResult hull(const std::vector<Vec>& points) {
    PolyData poly = hull_general(points);
    HullResult out;
    out.vertices = poly.vertices;
    out.facet_normals.reserve(poly.facets.size());
    for (const Halfspace& f : poly.facets) {
        if (f.offset <= 1e-12)
            throw input_error("hull: origin is not interior to the input hull");
        out.facet_normals.push_back(vec_scale(f.normal, 1.0 / f.offset));
    }
    return out;
}

std::vector<Vec> enumerate_vertices(const std::vector<Vec>& normals, const Vec& offsets) {
    if (normals.empty() || normals.size() != offsets.size())
        throw input_error("enumerate_vertices: malformed halfspace system");
    const std::size_t n = normals[0].size();
    if (binomial(static_cast<int>(normals.size()), static_cast<int>(n)) > kCombinationBudget)
        throw capability_error("enumerate_vertices: budget exceeded");
    double scale = coordinate_scale(normals);
    std::vector<Vec> verts;
    Mat sys(n, n);
    Vec rhs(n);
    for_each_combination(normals.size(), n, [&](const std::vector<std::size_t>& idx) {
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) sys.at(r, c) = normals[idx[r]][c];
            rhs[r] = offsets[idx[r]];
        }
        Vec x = solve(sys, rhs);
        if (x.empty()) return;
        for (std::size_t i = 0; i < normals.size(); ++i)
            if (dot(normals[i], x) > offsets[i] + 1e-9 * std::max(1.0, scale * norm(x))) return;
        verts.push_back(std::move(x));
    });
    verts = dedupe_points(verts, 1e-9 * std::max(1.0, coordinate_scale(verts)));
    std::sort(verts.begin(), verts.end(), lex_less);
    return verts;
}

namespace {

std::vector<Simplex> triangulate_impl(const std::vector<Vec>& vertices,
                                      const std::vector<Halfspace>& facets) {
    const std::size_t n = vertices[0].size();
    if (n == 1) {
        double lo = vertices[0][0], hi = vertices[0][0];
        for (const Vec& p : vertices) { lo = std::min(lo, p[0]); hi = std::max(hi, p[0]); }
        return {Simplex{Vec{lo}, Vec{hi}}};
    }
    const double scale = coordinate_scale(vertices);
    const double tol = 1e-9 * std::max(1.0, scale);
    Vec apex = vertices[0];
    for (const Vec& v : vertices)
        if (lex_less(v, apex)) apex = v;

    std::vector<Simplex> out;
    std::vector<Halfspace> seen; // canonical plane form: unit normal, scaled offset
    for (const Halfspace& f : facets) {
        double len = norm(f.normal);
        if (len < 1e-14) continue;
        Halfspace plane{vec_scale(f.normal, 1.0 / len), f.offset / len};
        bool dup = false;
        for (const Halfspace& g : seen) {
            if (std::abs(plane.offset - g.offset) <= tol * std::max(1.0, std::abs(g.offset)) &&
                vec_almost_equal(plane.normal, g.normal, 1e-9)) {
                dup = true;
                break;
            }
        }
        if (dup) continue;
        seen.push_back(plane);
        if (std::abs(dot(f.normal, apex) - f.offset) <= tol) continue; // apex on facet
        std::vector<Vec> on_facet;
        for (const Vec& v : vertices)
            if (std::abs(dot(f.normal, v) - f.offset) <= tol) on_facet.push_back(v);
        if (on_facet.size() < n) continue;
        std::sort(on_facet.begin(), on_facet.end(), lex_less);

        // Facet-local orthonormal coordinates.
        std::vector<Vec> basis = orthonormal_complement(f.normal);
        const Vec& origin = on_facet[0];
        std::vector<Vec> local;
        local.reserve(on_facet.size());
        for (const Vec& v : on_facet) {
            Vec d = vec_sub(v, origin);
            Vec q(n - 1);
            for (std::size_t i = 0; i + 1 < n; ++i) q[i] = dot(basis[i], d);
            local.push_back(std::move(q));
        }
        std::vector<Simplex> sub;
        try {
            sub = triangulate_convex(local);
        } catch (const input_error&) {
            continue; // degenerate facet (rank deficiency after projection)
        }
        for (const Simplex& s : sub) {
            Simplex lifted;
            lifted.reserve(n + 1);
            lifted.push_back(apex);
            for (const Vec& q : s) {
                Vec w = origin;
                for (std::size_t i = 0; i + 1 < n; ++i) w = vec_add(w, vec_scale(basis[i], q[i]));
                lifted.push_back(std::move(w));
            }
            if (simplex_volume(lifted) > 1e-14) out.push_back(std::move(lifted));
        }
    }
    return out;
}

} // namespace

std::vector<Simplex> triangulate_vrep(const std::vector<Vec>& vertices,
                                      const std::vector<Vec>& facet_normals) {
    std::vector<Halfspace> facets;
    facets.reserve(facet_normals.size());
    for (const Vec& u : facet_normals) facets.push_back({u, 1.0});
    return triangulate_impl(vertices, facets);
}

std::vector<Simplex> triangulate_convex(const std::vector<Vec>& points) {
    PolyData poly = hull_general(points);
    return triangulate_impl(poly.vertices, poly.facets);
}

double simplex_volume(const Simplex& s) {
    const std::size_t n = s.size() - 1;
    Mat m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m.at(r, c) = s[r + 1][c] - s[0][c];
    return std::abs(det(m)) / factorial(static_cast<int>(n));
}

double simplices_volume(const std::vector<Simplex>& parts) {
    double v = 0.0;
    for (const Simplex& s : parts) v += simplex_volume(s);
    return v;
}

namespace {

// Integral of the plain linear form <u, y> over one simplex.
double integrate_linear_simplex(const Simplex& s, const Vec& u) {
    double mean = 0.0;
    for (const Vec& w : s) mean += dot(u, w);
    mean /= static_cast<double>(s.size());
    return simplex_volume(s) * mean;
}

double integrate_abs_linear_simplex(const Simplex& s, const Vec& u) {
    const std::size_t n = s.size() - 1;
    std::vector<double> c(s.size());
    double cmax = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        c[i] = dot(u, s[i]);
        cmax = std::max(cmax, std::abs(c[i]));
    }
    const double eps = 1e-12 * std::max(1.0, cmax);
    bool has_pos = false, has_neg = false;
    for (double v : c) {
        has_pos = has_pos || v > eps;
        has_neg = has_neg || v < -eps;
    }
    if (!has_neg) return integrate_linear_simplex(s, u);
    if (!has_pos) return -integrate_linear_simplex(s, u);

    // Split along <u, y> = 0 and integrate each side separately.
    std::vector<Vec> plus, minus;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (c[i] >= -eps) plus.push_back(s[i]);
        if (c[i] <= eps) minus.push_back(s[i]);
    }
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            if ((c[i] > eps && c[j] < -eps) || (c[i] < -eps && c[j] > eps)) {
                double t = c[i] / (c[i] - c[j]);
                Vec cross = vec_add(s[i], vec_scale(vec_sub(s[j], s[i]), t));
                plus.push_back(cross);
                minus.push_back(cross);
            }
        }
    double total = 0.0;
    for (int side = 0; side < 2; ++side) {
        const std::vector<Vec>& pts = side == 0 ? plus : minus;
        if (pts.size() < n + 1) continue;
        std::vector<Simplex> sub;
        try {
            sub = triangulate_convex(pts);
        } catch (const input_error&) {
            continue; // sliver with no interior
        }
        for (const Simplex& piece : sub) total += std::abs(integrate_linear_simplex(piece, u));
    }
    return total;
}

} // namespace

double integrate_abs_linear(const std::vector<Simplex>& parts, const Vec& u) {
    double total = 0.0;
    for (const Simplex& s : parts) total += integrate_abs_linear_simplex(s, u);
    return total;
}

Mat second_moment_matrix(const std::vector<Simplex>& parts) {
    if (parts.empty()) throw input_error("second_moment_matrix: empty triangulation");
    const std::size_t n = parts[0].size() - 1;
    Mat m(n, n);
    for (const Simplex& s : parts) {
        double vol = simplex_volume(s);
        Vec colsum(n, 0.0);
        for (const Vec& w : s) colsum = vec_add(colsum, w);
        double denom = static_cast<double>((n + 1) * (n + 2));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double prod = 0.0;
                for (const Vec& w : s) prod += w[i] * w[j];
                m.at(i, j) += vol * (prod + colsum[i] * colsum[j]) / denom;
            }
    }
    return m;
}

std::vector<Vec> zonotope_facet_directions(const std::vector<Vec>& generators) {
    if (generators.empty()) throw input_error("zonotope: no generators");
    const std::size_t n = generators[0].size();
    if (n == 1) return {Vec{1.0}};
    std::vector<Vec> dirs;
    for_each_combination(generators.size(), n - 1, [&](const std::vector<std::size_t>& idx) {
        std::vector<Vec> span;
        span.reserve(n - 1);
        for (std::size_t i : idx) span.push_back(generators[i]);
        Vec u = hyperplane_normal(span);
        if (u.empty()) return;
        // canonical sign: first nonzero coordinate positive
        for (double v : u) {
            if (std::abs(v) > 1e-12) {
                if (v < 0) u = vec_scale(u, -1.0);
                break;
            }
        }
        for (const Vec& d : dirs)
            if (vec_almost_equal(d, u, 1e-9)) return;
        dirs.push_back(std::move(u));
    });
    std::sort(dirs.begin(), dirs.end(), lex_less);
    return dirs;
}

std::vector<Vec> zonotope_vertex_candidates(const std::vector<Vec>& generators) {
    if (generators.size() > 20)
        throw capability_error("zonotope sign enumeration capped at 20 generators");
    const std::size_t g = generators.size();
    const std::size_t n = generators[0].size();
    std::vector<Vec> pts;
    pts.reserve(std::size_t{1} << g);
    for (std::size_t mask = 0; mask < (std::size_t{1} << g); ++mask) {
        Vec p(n, 0.0);
        for (std::size_t i = 0; i < g; ++i) {
            double sgn = (mask >> i) & 1 ? 1.0 : -1.0;
            for (std::size_t c = 0; c < n; ++c) p[c] += sgn * generators[i][c];
        }
        pts.push_back(std::move(p));
    }
    pts = dedupe_points(pts, 1e-10 * std::max(1.0, coordinate_scale(pts)));
    std::sort(pts.begin(), pts.end(), lex_less);
    return pts;
}

} // namespace vp
