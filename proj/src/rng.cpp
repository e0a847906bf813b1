#include "vp/rng.hpp"

#include <cmath>

namespace vp {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
} // namespace

std::uint64_t Rng::next_u64() {
    state_ += kGolden;
    return mix(state_);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do { u1 = uniform(); } while (u1 <= 0.0);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

Vec Rng::gaussian_vec(std::size_t n) {
    Vec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = gaussian();
    return v;
}

Vec Rng::sphere_point(std::size_t n) {
    for (;;) {
        Vec v = gaussian_vec(n);
        double nn = norm(v);
        if (nn > 1e-12) return vec_scale(v, 1.0 / nn);
    }
}

Vec Rng::box_point(const Vec& halfwidths) {
    Vec v(halfwidths.size());
    for (std::size_t i = 0; i < halfwidths.size(); ++i)
        v[i] = uniform(-halfwidths[i], halfwidths[i]);
    return v;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, std::uint64_t index) {
    std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a offset basis
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return mix(seed ^ mix(h) ^ (index * kGolden));
}

} // namespace vp
