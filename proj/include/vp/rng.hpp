#pragma once

#include <cstdint>
#include <string_view>

#include "vp/linalg.hpp"

namespace vp {

// SplitMix64 stream. Small state, fully reproducible across platforms, and
// cheap to re-derive per (check, trial) so concurrent workers never share.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    double uniform();                    // [0, 1)
    double uniform(double lo, double hi);
    double gaussian();                   // standard normal, Box-Muller
    Vec gaussian_vec(std::size_t n);
    Vec sphere_point(std::size_t n);     // uniform on S^{n-1}
    Vec box_point(const Vec& halfwidths);

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Named seed derivation: hash (seed, tag, index) so every check and trial
// draws from its own stream regardless of execution order.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0);

} // namespace vp
