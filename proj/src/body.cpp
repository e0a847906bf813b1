#include "vp/body.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "vp/errors.hpp"
#include "vp/hull.hpp"

namespace vp {

struct ConvexBody::Node {
    Kind kind = Kind::Ball;
    int dim = 0;
    double halfwidth = 1.0;
    std::vector<Vec> points; // vertices | normals | generators
    std::vector<ConvexBody> parts;
    Mat matrix, matrix_inv;
    std::shared_ptr<const Node> base;

    // Lazily enumerated dual data, shared by all copies of the body.
    mutable std::once_flag dual_once;
    mutable std::vector<Vec> dual_points;
    mutable std::once_flag zfacet_once;
    mutable std::vector<std::pair<Vec, double>> zfacets;
};

namespace {

constexpr int kExactDimCap = 6;

void check_dim(const ConvexBody& k, const Vec& v, const char* what) {
    if (static_cast<int>(v.size()) != k.dim())
        throw input_error(std::string(what) + ": vector has dimension " +
                          std::to_string(v.size()) + " but body has dimension " +
                          std::to_string(k.dim()));
}

} // namespace

ConvexBody ConvexBody::ball(int dim) {
    if (dim < 1) throw input_error("ball: dimension must be >= 1");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Ball;
    node->dim = dim;
    return ConvexBody(std::move(node));
}

ConvexBody ConvexBody::interval(double halfwidth) {
    if (!(halfwidth > 0.0) || !std::isfinite(halfwidth))
        throw input_error("interval: halfwidth must be positive and finite");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Interval;
    node->dim = 1;
    node->halfwidth = halfwidth;
    return ConvexBody(std::move(node));
}

namespace {

void validate_finite(const std::vector<Vec>& pts, const char* what) {
    for (const Vec& p : pts)
        for (double v : p)
            if (!std::isfinite(v)) throw input_error(std::string(what) + ": non-finite coordinate");
}

void validate_same_dim(const std::vector<Vec>& pts, const char* what) {
    for (const Vec& p : pts)
        if (p.size() != pts[0].size())
            throw input_error(std::string(what) + ": mixed coordinate dimensions");
}

} // namespace

ConvexBody ConvexBody::vpolytope(std::vector<Vec> vertices) {
    if (vertices.empty()) throw input_error("vpolytope: no vertices");
    validate_finite(vertices, "vpolytope");
    validate_same_dim(vertices, "vpolytope");
    const std::size_t n = vertices[0].size();
    if (rank(vertices) < n)
        throw input_error("vpolytope: vertices have rank " + std::to_string(rank(vertices)) +
                          ", need " + std::to_string(n));
    // Symmetry is validated, not assumed.
    for (const Vec& v : vertices) {
        Vec neg = vec_scale(v, -1.0);
        bool found = false;
        for (const Vec& w : vertices)
            if (vec_almost_equal(w, neg, 1e-12)) { found = true; break; }
        if (!found) throw input_error("vpolytope: vertex set is not closed under negation");
    }
    auto node = std::make_shared<Node>();
    node->kind = Kind::VPolytope;
    node->dim = static_cast<int>(n);
    node->points = std::move(vertices);
    return ConvexBody(std::move(node));
}

ConvexBody ConvexBody::vpolytope_with_facets(std::vector<Vec> vertices,
                                             std::vector<Vec> facet_normals) {
    ConvexBody body = vpolytope(std::move(vertices));
    std::call_once(body.node_->dual_once, [&] { body.node_->dual_points = std::move(facet_normals); });
    return body;
}

ConvexBody ConvexBody::hpolytope(std::vector<Vec> normals) {
    if (normals.empty()) throw input_error("hpolytope: no normals");
    validate_finite(normals, "hpolytope");
    validate_same_dim(normals, "hpolytope");
    const std::size_t n = normals[0].size();
    for (const Vec& u : normals)
        if (norm(u) < 1e-12) throw input_error("hpolytope: zero normal");
    if (rank(normals) < n)
        throw input_error("hpolytope: normals have rank " + std::to_string(rank(normals)) +
                          "; the slab intersection is unbounded");
    auto node = std::make_shared<Node>();
    node->kind = Kind::HPolytope;
    node->dim = static_cast<int>(n);
    node->points = std::move(normals);
    return ConvexBody(std::move(node));
}

ConvexBody ConvexBody::zonotope(std::vector<Vec> generators) {
    if (generators.empty()) throw input_error("zonotope: no generators");
    validate_finite(generators, "zonotope");
    validate_same_dim(generators, "zonotope");
    const std::size_t n = generators[0].size();
    for (const Vec& g : generators)
        if (norm(g) < 1e-12) throw input_error("zonotope: zero generator");
    if (rank(generators) < n)
        throw input_error("zonotope: generators have rank " + std::to_string(rank(generators)) +
                          ", need " + std::to_string(n));
    auto node = std::make_shared<Node>();
    node->kind = Kind::Zonotope;
    node->dim = static_cast<int>(n);
    node->points = std::move(generators);
    return ConvexBody(std::move(node));
}

ConvexBody ConvexBody::l1_sum(std::vector<ConvexBody> parts) {
    if (parts.empty()) throw input_error("l1_sum: no parts");
    auto node = std::make_shared<Node>();
    node->kind = Kind::L1Sum;
    for (const ConvexBody& p : parts) node->dim += p.dim();
    node->parts = std::move(parts);
    return ConvexBody(std::move(node));
}

ConvexBody ConvexBody::linf_sum(std::vector<ConvexBody> parts) {
    if (parts.empty()) throw input_error("linf_sum: no parts");
    auto node = std::make_shared<Node>();
    node->kind = Kind::LinfSum;
    for (const ConvexBody& p : parts) node->dim += p.dim();
    node->parts = std::move(parts);
    return ConvexBody(std::move(node));
}

ConvexBody ConvexBody::linear_image(const Mat& matrix, ConvexBody body) {
    if (matrix.rows() != matrix.cols() || static_cast<int>(matrix.rows()) != body.dim())
        throw input_error("linear_image: matrix shape does not match body dimension");
    if (std::abs(det(matrix)) < 1e-10)
        throw input_error("linear_image: |det| < 1e-10, map rejected as near-singular");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Linear;
    node->dim = body.dim();
    node->matrix = matrix;
    node->matrix_inv = inverse(matrix);
    node->base = body.node_;
    return ConvexBody(std::move(node));
}

ConvexBody::Kind ConvexBody::kind() const { return node_->kind; }
int ConvexBody::dim() const { return node_->dim; }

double ConvexBody::halfwidth() const {
    if (kind() != Kind::Interval) throw input_error("halfwidth: not an interval");
    return node_->halfwidth;
}

const std::vector<Vec>& ConvexBody::vertices() const {
    if (kind() != Kind::VPolytope) throw input_error("vertices: not a vpolytope");
    return node_->points;
}

const std::vector<Vec>& ConvexBody::normals() const {
    if (kind() != Kind::HPolytope) throw input_error("normals: not an hpolytope");
    return node_->points;
}

const std::vector<Vec>& ConvexBody::generators() const {
    if (kind() != Kind::Zonotope) throw input_error("generators: not a zonotope");
    return node_->points;
}

const std::vector<ConvexBody>& ConvexBody::parts() const {
    if (kind() != Kind::L1Sum && kind() != Kind::LinfSum)
        throw input_error("parts: not an l1/linf sum");
    return node_->parts;
}

const Mat& ConvexBody::matrix() const {
    if (kind() != Kind::Linear) throw input_error("matrix: not a linear image");
    return node_->matrix;
}

const Mat& ConvexBody::matrix_inverse() const {
    if (kind() != Kind::Linear) throw input_error("matrix_inverse: not a linear image");
    return node_->matrix_inv;
}

ConvexBody ConvexBody::base() const {
    if (kind() != Kind::Linear) throw input_error("base: not a linear image");
    return ConvexBody(node_->base);
}

const std::vector<std::pair<Vec, double>>& ConvexBody::zonotope_facets() const {
    if (kind() != Kind::Zonotope) throw input_error("zonotope_facets: not a zonotope");
    std::call_once(node_->zfacet_once, [&] {
        std::vector<std::pair<Vec, double>> facets;
        for (const Vec& u : zonotope_facet_directions(node_->points)) {
            double h = 0.0;
            for (const Vec& g : node_->points) h += std::abs(dot(g, u));
            facets.emplace_back(u, h);
        }
        node_->zfacets = std::move(facets);
    });
    return node_->zfacets;
}

const std::vector<Vec>& ConvexBody::facet_normals() const {
    if (kind() != Kind::VPolytope && kind() != Kind::Zonotope)
        throw input_error("facet_normals: only vpolytopes and zonotopes carry facets");
    if (dim() > kExactDimCap)
        throw capability_error("facet enumeration capped at dimension " +
                               std::to_string(kExactDimCap));
    std::call_once(node_->dual_once, [&] {
        std::vector<Vec> normals;
        if (kind() == Kind::VPolytope) {
            normals = hull(node_->points).facet_normals;
        } else {
            for (const auto& [u, h] : zonotope_facets()) {
                normals.push_back(vec_scale(u, 1.0 / h));
                normals.push_back(vec_scale(u, -1.0 / h));
            }
            std::sort(normals.begin(), normals.end(), lex_less);
        }
        node_->dual_points = std::move(normals);
    });
    return node_->dual_points;
}

const std::vector<Vec>& ConvexBody::hpolytope_vertices() const {
    if (kind() != Kind::HPolytope) throw input_error("hpolytope_vertices: not an hpolytope");
    if (dim() > kExactDimCap)
        throw capability_error("vertex enumeration capped at dimension " +
                               std::to_string(kExactDimCap));
    std::call_once(node_->dual_once, [&] {
        // |<u,x>| <= 1 expands to the signed system.
        std::vector<Vec> normals;
        normals.reserve(node_->points.size() * 2);
        for (const Vec& u : node_->points) {
            normals.push_back(u);
            normals.push_back(vec_scale(u, -1.0));
        }
        node_->dual_points = enumerate_vertices(normals, Vec(normals.size(), 1.0));
    });
    return node_->dual_points;
}

double support(const ConvexBody& k, const Vec& y) {
    check_dim(k, y, "support");
    using Kind = ConvexBody::Kind;
    switch (k.kind()) {
        case Kind::Ball: return norm(y);
        case Kind::Interval: return k.halfwidth() * std::abs(y[0]);
        case Kind::VPolytope: {
            double best = 0.0;
            for (const Vec& v : k.vertices()) best = std::max(best, dot(v, y));
            return best;
        }
        case Kind::HPolytope: {
            double best = 0.0;
            for (const Vec& v : k.hpolytope_vertices()) best = std::max(best, dot(v, y));
            return best;
        }
        case Kind::Zonotope: {
            double s = 0.0;
            for (const Vec& g : k.generators()) s += std::abs(dot(g, y));
            return s;
        }
        case Kind::L1Sum: {
            double best = 0.0;
            std::size_t off = 0;
            for (const ConvexBody& p : k.parts()) {
                Vec block(y.begin() + off, y.begin() + off + p.dim());
                best = std::max(best, support(p, block));
                off += p.dim();
            }
            return best;
        }
        case Kind::LinfSum: {
            double s = 0.0;
            std::size_t off = 0;
            for (const ConvexBody& p : k.parts()) {
                Vec block(y.begin() + off, y.begin() + off + p.dim());
                s += support(p, block);
                off += p.dim();
            }
            return s;
        }
        case Kind::Linear: return support(k.base(), k.matrix().apply_transposed(y));
    }
    throw input_error("support: unknown body kind");
}

double gauge(const ConvexBody& k, const Vec& x) {
    check_dim(k, x, "gauge");
    using Kind = ConvexBody::Kind;
    switch (k.kind()) {
        case Kind::Ball: return norm(x);
        case Kind::Interval: return std::abs(x[0]) / k.halfwidth();
        case Kind::VPolytope: {
            double best = 0.0;
            for (const Vec& u : k.facet_normals()) best = std::max(best, dot(u, x));
            return best;
        }
        case Kind::HPolytope: {
            double best = 0.0;
            for (const Vec& u : k.normals()) best = std::max(best, std::abs(dot(u, x)));
            return best;
        }
        case Kind::Zonotope: {
            if (k.dim() == 1) {
                double s = 0.0;
                for (const Vec& g : k.generators()) s += std::abs(g[0]);
                return std::abs(x[0]) / s;
            }
            double best = 0.0;
            for (const auto& [u, h] : k.zonotope_facets())
                best = std::max(best, std::abs(dot(u, x)) / h);
            return best;
        }
        case Kind::L1Sum: {
            double s = 0.0;
            std::size_t off = 0;
            for (const ConvexBody& p : k.parts()) {
                Vec block(x.begin() + off, x.begin() + off + p.dim());
                s += gauge(p, block);
                off += p.dim();
            }
            return s;
        }
        case Kind::LinfSum: {
            double best = 0.0;
            std::size_t off = 0;
            for (const ConvexBody& p : k.parts()) {
                Vec block(x.begin() + off, x.begin() + off + p.dim());
                best = std::max(best, gauge(p, block));
                off += p.dim();
            }
            return best;
        }
        case Kind::Linear: return gauge(k.base(), k.matrix_inverse().apply(x));
    }
    throw input_error("gauge: unknown body kind");
}

bool member(const ConvexBody& k, const Vec& x, double tol) {
    if (tol < 0.0) throw input_error("member: tolerance must be nonnegative");
    return gauge(k, x) <= 1.0 + tol;
}

BodyMeasure zonotope_measure(const ConvexBody& z) {
    const std::vector<Vec>& gens = z.generators();
    BodyMeasure mu;
    mu.atoms.reserve(gens.size() * 2);
    for (const Vec& g : gens) {
        double len = norm(g);
        if (len < 1e-12) throw input_error("zonotope_measure: zero generator");
        Vec u = vec_scale(g, 1.0 / len);
        mu.atoms.push_back({u, len});
        mu.atoms.push_back({vec_scale(u, -1.0), len});
    }
    return mu;
}

namespace {

nlohmann::json vecs_to_json(const std::vector<Vec>& vs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Vec& v : vs) arr.push_back(v);
    return arr;
}

std::vector<Vec> vecs_from_json(const nlohmann::json& j, const char* what) {
    if (!j.is_array()) throw input_error(std::string(what) + ": expected an array of vectors");
    std::vector<Vec> out;
    for (const auto& e : j) out.push_back(e.get<Vec>());
    return out;
}

} // namespace

nlohmann::json body_to_json(const ConvexBody& k) {
    using Kind = ConvexBody::Kind;
    nlohmann::json j;
    switch (k.kind()) {
        case Kind::Ball: j = {{"kind", "ball"}, {"dim", k.dim()}}; break;
        case Kind::Interval: j = {{"kind", "interval"}, {"halfwidth", k.halfwidth()}}; break;
        case Kind::VPolytope: j = {{"kind", "vpolytope"}, {"vertices", vecs_to_json(k.vertices())}}; break;
        case Kind::HPolytope: j = {{"kind", "hpolytope"}, {"normals", vecs_to_json(k.normals())}}; break;
        case Kind::Zonotope: j = {{"kind", "zonotope"}, {"generators", vecs_to_json(k.generators())}}; break;
        case Kind::L1Sum:
        case Kind::LinfSum: {
            nlohmann::json parts = nlohmann::json::array();
            for (const ConvexBody& p : k.parts()) parts.push_back(body_to_json(p));
            j = {{"kind", k.kind() == Kind::L1Sum ? "l1sum" : "linfsum"}, {"parts", parts}};
            break;
        }
        case Kind::Linear: {
            nlohmann::json rows = nlohmann::json::array();
            for (std::size_t r = 0; r < k.matrix().rows(); ++r) rows.push_back(k.matrix().row(r));
            j = {{"kind", "linear"}, {"matrix", rows}, {"body", body_to_json(k.base())}};
            break;
        }
    }
    return j;
}

ConvexBody body_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw input_error("body json: missing \"kind\" field");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "ball") return ConvexBody::ball(j.at("dim").get<int>());
    if (kind == "interval") return ConvexBody::interval(j.at("halfwidth").get<double>());
    if (kind == "vpolytope") return ConvexBody::vpolytope(vecs_from_json(j.at("vertices"), "vpolytope"));
    if (kind == "hpolytope") return ConvexBody::hpolytope(vecs_from_json(j.at("normals"), "hpolytope"));
    if (kind == "zonotope") return ConvexBody::zonotope(vecs_from_json(j.at("generators"), "zonotope"));
    if (kind == "l1sum" || kind == "linfsum") {
        std::vector<ConvexBody> parts;
        for (const auto& p : j.at("parts")) parts.push_back(body_from_json(p));
        return kind == "l1sum" ? ConvexBody::l1_sum(std::move(parts))
                               : ConvexBody::linf_sum(std::move(parts));
    }
    if (kind == "linear") {
        std::vector<Vec> rows = vecs_from_json(j.at("matrix"), "linear");
        return ConvexBody::linear_image(Mat::from_rows(rows), body_from_json(j.at("body")));
    }
    throw input_error("body json: unknown kind \"" + kind + "\"");
}

std::string ConvexBody::describe() const {
    ConvexBody self(node_);
    return body_to_json(self).dump();
}

ConvexBody make_cube(int n) {
    if (n == 1) return ConvexBody::interval(1.0);
    std::vector<ConvexBody> parts(static_cast<std::size_t>(n), ConvexBody::interval(1.0));
    return ConvexBody::linf_sum(std::move(parts));
}

ConvexBody make_cross_polytope(int n) {
    if (n == 1) return ConvexBody::interval(1.0);
    std::vector<ConvexBody> parts(static_cast<std::size_t>(n), ConvexBody::interval(1.0));
    return ConvexBody::l1_sum(std::move(parts));
}

ConvexBody make_cube_vpolytope(int n) {
    std::vector<Vec> verts;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = (mask >> i) & 1 ? 1.0 : -1.0;
        verts.push_back(std::move(v));
    }
    return ConvexBody::vpolytope(std::move(verts));
}

ConvexBody make_double_cone() {
    return ConvexBody::l1_sum({ConvexBody::ball(2), ConvexBody::interval(1.0)});
}

ConvexBody make_cylinder() {
    return ConvexBody::linf_sum({ConvexBody::ball(2), ConvexBody::interval(1.0)});
}

ConvexBody make_square_bipyramid() {
    return ConvexBody::l1_sum({make_cube(2), ConvexBody::interval(1.0)});
}

ConvexBody make_hexagon_zonotope() {
    return ConvexBody::zonotope({{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}});
}

Mat rotation2d(double angle) {
    Mat m(2, 2);
    m.at(0, 0) = std::cos(angle);
    m.at(0, 1) = -std::sin(angle);
    m.at(1, 0) = std::sin(angle);
    m.at(1, 1) = std::cos(angle);
    return m;
}

} // namespace vp
