#pragma once

#include <memory>
#include <string>
#include <vector>

#include "vp/linalg.hpp"

#include "json.hpp"

namespace vp {

// Origin-symmetric convex body, closed under the constructions below.
// Values are immutable and cheap to copy; all operations are pure.
class ConvexBody {
public:
    enum class Kind { Ball, Interval, VPolytope, HPolytope, Zonotope, L1Sum, LinfSum, Linear };

    static ConvexBody ball(int dim);
    static ConvexBody interval(double halfwidth);
    static ConvexBody vpolytope(std::vector<Vec> vertices);
    // As vpolytope, but with the facet description already known (skips hull).
    static ConvexBody vpolytope_with_facets(std::vector<Vec> vertices,
                                            std::vector<Vec> facet_normals);
    static ConvexBody hpolytope(std::vector<Vec> normals);
    static ConvexBody zonotope(std::vector<Vec> generators);
    static ConvexBody l1_sum(std::vector<ConvexBody> parts);
    static ConvexBody linf_sum(std::vector<ConvexBody> parts);
    static ConvexBody linear_image(const Mat& matrix, ConvexBody body);

    Kind kind() const;
    int dim() const;

    double halfwidth() const;                  // Interval
    const std::vector<Vec>& vertices() const;  // VPolytope
    const std::vector<Vec>& normals() const;   // HPolytope
    const std::vector<Vec>& generators() const; // Zonotope
    const std::vector<ConvexBody>& parts() const; // L1Sum / LinfSum
    const Mat& matrix() const;                 // Linear
    const Mat& matrix_inverse() const;         // Linear
    ConvexBody base() const;                   // Linear

    // Offset-1 facet normals of a VPolytope or Zonotope (computed on first
    // use; desk-scale enumeration, dim <= 6).
    const std::vector<Vec>& facet_normals() const;
    // Enumerated vertices of an HPolytope (computed on first use).
    const std::vector<Vec>& hpolytope_vertices() const;
    // Unique facet directions of a Zonotope with their support values.
    const std::vector<std::pair<Vec, double>>& zonotope_facets() const;

    std::string describe() const; // canonical JSON text (digests, messages)

private:
    struct Node;
    std::shared_ptr<const Node> node_;
    explicit ConvexBody(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
};

// sup over K of <x, y>.
double support(const ConvexBody& k, const Vec& y);
// inf { t > 0 : x in tK }; 0 at the origin.
double gauge(const ConvexBody& k, const Vec& x);
bool member(const ConvexBody& k, const Vec& x, double tol);

// Discrete even measure on the sphere generating a zonotope:
// support(Z, y) = 1/2 * sum_atoms weight * |<direction, y>|.
// Each +- pair of atoms carries total weight 2|g| (|g| per signed atom).
struct BodyMeasure {
    struct Atom {
        Vec direction; // unit
        double weight;
    };
    std::vector<Atom> atoms;
};
BodyMeasure zonotope_measure(const ConvexBody& z);

// JSON wire format (the same schema the CLI consumes).
nlohmann::json body_to_json(const ConvexBody& k);
ConvexBody body_from_json(const nlohmann::json& j);

// Catalog shorthands used throughout the test and verification suites.
ConvexBody make_cube(int n);                 // [-1,1]^n as an l_inf sum of intervals
ConvexBody make_cross_polytope(int n);       // unit l_1 ball as an l_1 sum
ConvexBody make_cube_vpolytope(int n);       // [-1,1]^n with explicit vertices
ConvexBody make_double_cone();               // ball(2) (+)_1 interval(1)
ConvexBody make_cylinder();                  // ball(2) x interval(1)
ConvexBody make_square_bipyramid();          // square (+)_1 interval(1)
ConvexBody make_hexagon_zonotope();          // generators e1, e2, (1,1)
Mat rotation2d(double angle);

} // namespace vp
