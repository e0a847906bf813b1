#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "vp/body.hpp"
#include "vp/report.hpp"
#include "vp/rng.hpp"

namespace vp {

// Binary construction tree: a body is an interval or the l1/linf sum of two
// smaller ones. The realization's dimension equals the leaf count.
class HannerTree {
public:
    enum class Kind { Leaf, L1, Linf };

    static HannerTree leaf();
    static HannerTree node(Kind kind, HannerTree left, HannerTree right);

    Kind kind() const { return kind_; }
    const HannerTree& left() const;
    const HannerTree& right() const;
    int leaf_count() const;
    HannerTree flipped() const; // swap l1 <-> linf at every node

private:
    Kind kind_ = Kind::Leaf;
    std::shared_ptr<const HannerTree> left_, right_;
};

ConvexBody hanner(const HannerTree& tree);

// P(realization) against 4^n/n!, 1e-7 relative; leaf count <= 6.
CheckReport hanner_mahler_check(const HannerTree& tree);

// Uniformly random shape over the trees with `leaves` leaves.
HannerTree random_hanner_tree(int leaves, Rng& rng);

// Invariance of the gauge under all coordinate sign flips. Structural for
// sums and flip-closed point descriptions; otherwise sampled on `samples`
// seeded points at 1e-9.
bool is_unconditional(const ConvexBody& k, std::uint64_t samples, std::uint64_t seed);

// Invertible T with L inside T(K) inside d*L on the sampled direction set.
// d is an upper bound on the Banach-Mazur distance, not the distance itself.
struct BmCertificate {
    Mat t;
    double d = 1.0;
};

BmCertificate bm_distance_upper(const ConvexBody& k, const ConvexBody& l, int restarts,
                                int iterations, std::uint64_t seed);

// Checks a certificate on a fresh seeded direction sample.
bool verify_certificate(const ConvexBody& k, const ConvexBody& l, const BmCertificate& cert,
                        std::uint64_t directions, std::uint64_t seed);

// Cube-perturbation probe of the lower bound's stability. For each epsilon
// and trial: perturb one vertex per +- pair, mirror, re-hull, then record
// deltaP = P(K) - P(cube) and the search distance to an unconditional body.
struct StabilityRow {
    double epsilon;
    int trial;
    double delta_p;
    double dhat_minus_1;
};

struct StabilityResult {
    std::vector<StabilityRow> rows; // ordered by (epsilon, trial)
    std::vector<CheckReport> aggregates;
    std::string bias_note;
};

StabilityResult stability_experiment(int n, const std::vector<double>& epsilons, int trials,
                                     std::uint64_t seed);

} // namespace vp
