#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "gme/types.hpp"

namespace gme {

/// Small counter-friendly PRNG (splitmix64). O(1) seeding makes it cheap to
/// derive an independent stream per sample index, which keeps Monte Carlo
/// runs deterministic for any worker count.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// 64-bit finalizer used for seed derivation.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Derives the seed of an independent sub-stream (sample, start, probe, ...)
/// from a master seed and a counter. Pure function of its arguments, so
/// results never depend on scheduling or worker count.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed ^ mix64(index ^ 0xd1b54a32d192ed03ull));
}

/// Standard complex Gaussian (real and imaginary parts i.i.d. N(0,1)).
template <class Rng>
cplx gaussian_cplx(Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

/// Fills `out` with i.i.d. complex Gaussians.
template <class Rng>
void fill_gaussian(std::vector<cplx>& out, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (auto& c : out) {
        const double re = normal(rng);
        const double im = normal(rng);
        c = {re, im};
    }
}

/// Uniform point on the unit sphere of C^n (Gaussian direction, normalized).
template <class Rng>
std::vector<cplx> random_unit_vector(int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("random_unit_vector: n must be >= 1");
    std::vector<cplx> v(static_cast<std::size_t>(n));
    double norm2 = 0.0;
    do {
        fill_gaussian(v, rng);
        norm2 = 0.0;
        for (const auto& c : v) norm2 += std::norm(c);
    } while (norm2 < 1e-280);
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& c : v) c *= inv;
    return v;
}

} // namespace gme
