#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gme/rng.hpp"
#include "gme/tensor.hpp"
#include "gme/types.hpp"

namespace gme {

/// Phase-invariant ball on the unit sphere of C^n:
///   B(v, eps) = { unit w : |<v, w>|^2 >= 1 - eps }.
/// Note this is not a metric ball; containment is invariant under rephasing
/// either argument.

/// Euclidean (2n-1)-volume of B(v, eps): 2 pi^n eps^(n-1) / (n-1)!.
inline double ball_volume(int n, double eps) {
    if (n < 1) throw std::invalid_argument("ball_volume: n must be >= 1");
    if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("ball_volume: need 0 < eps <= 1");
    double v = 2.0;
    for (int j = 1; j <= n; ++j) v *= M_PI;
    for (int j = 1; j <= n - 1; ++j) v *= eps / static_cast<double>(j);
    return v;
}

/// Fraction of the sphere covered by one ball: eps^(n-1).
inline double ball_fraction(int n, double eps) {
    if (n < 1) throw std::invalid_argument("ball_fraction: n must be >= 1");
    if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("ball_fraction: need 0 < eps <= 1");
    return std::pow(eps, n - 1);
}

/// Exact containment test w in B(v, eps). Both vectors must be unit.
inline bool ball_contains(const std::vector<cplx>& v, const std::vector<cplx>& w, double eps) {
    if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("ball_contains: need 0 < eps <= 1");
    require_unit(v, "ball_contains");
    require_unit(w, "ball_contains");
    return std::norm(vec_inner(v, w)) >= 1.0 - eps;
}

/// Two-step overlap bound: if |<v,z>|^2 >= 1-eps and |<z,w>|^2 >= 1-eps then
/// |<v,w>|^2 >= 1-4eps. Returns false only on a counterexample (hypotheses
/// hold, conclusion fails).
inline bool chain_bound_holds(const std::vector<cplx>& v, const std::vector<cplx>& z,
                              const std::vector<cplx>& w, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("chain_bound_holds: eps must be positive");
    require_unit(v, "chain_bound_holds");
    require_unit(z, "chain_bound_holds");
    require_unit(w, "chain_bound_holds");
    const bool hyp = std::norm(vec_inner(v, z)) >= 1.0 - eps &&
                     std::norm(vec_inner(z, w)) >= 1.0 - eps;
    if (!hyp) return true;
    return std::norm(vec_inner(v, w)) >= 1.0 - 4.0 * eps;
}

/// Covering of the unit sphere of C^n by eps-balls around `centers`.
/// Invariants: centers are unit; pairwise |<v_i, v_j>|^2 < 1 - eps (so the
/// eps/4-balls around distinct centers are disjoint by the two-step bound,
/// which is what drives the count bound below); |centers| <= (4/eps)^(n-1).
struct EpsilonNet {
    int n = 0;
    double epsilon = 0.0;
    double packing_radius = 0.0;  ///< eps/4, the certified disjoint-ball radius
    std::uint64_t seed = 0;
    std::uint64_t stop_streak = 0;
    std::vector<std::vector<cplx>> centers;
};

/// Count bound (4/eps)^(n-1) from the disjoint-ball volume argument.
inline double net_count_bound(int n, double eps) {
    return std::pow(4.0 / eps, n - 1);
}

/// Checks the pairwise packing invariant; throws on violation.
inline void validate_net(const EpsilonNet& net) {
    if (net.n < 1) throw std::invalid_argument("EpsilonNet: n must be >= 1");
    if (!(net.epsilon > 0.0) || net.epsilon >= 1.0)
        throw std::invalid_argument("EpsilonNet: need 0 < epsilon < 1");
    if (net.centers.empty()) throw std::invalid_argument("EpsilonNet: no centers");
    for (const auto& c : net.centers) {
        if (static_cast<int>(c.size()) != net.n)
            throw std::invalid_argument("EpsilonNet: center dimension mismatch");
        require_unit(c, "EpsilonNet center");
    }
    for (std::size_t i = 0; i < net.centers.size(); ++i)
        for (std::size_t j = i + 1; j < net.centers.size(); ++j)
            if (std::norm(vec_inner(net.centers[i], net.centers[j])) >= 1.0 - net.epsilon / 4.0)
                throw std::invalid_argument("EpsilonNet: pairwise packing violated");
    if (static_cast<double>(net.centers.size()) > net_count_bound(net.n, net.epsilon) + 1e-9)
        throw std::logic_error("EpsilonNet: center count exceeds the covering count bound");
}

/// Greedy randomized packing. Candidates are drawn uniformly; a candidate c is
/// rejected iff |<c, v_i>|^2 >= 1 - eps for some accepted center v_i (c already
/// lies in that center's eps-ball, and the rejection threshold is exactly the
/// conservative overlap test for the eps/4-balls: by the two-step bound,
/// accepted centers have pairwise-disjoint eps/4-balls, so the volume argument
/// caps the count at (4/eps)^(n-1)). Construction stops after `stop_streak`
/// consecutive rejections; at that point the sampled sphere is empirically
/// covered by the eps-balls of the accepted centers.
inline EpsilonNet build_net(int n, double eps, std::uint64_t seed, std::uint64_t stop_streak = 0) {
    if (n < 1) throw std::invalid_argument("build_net: n must be >= 1");
    if (!(eps > 0.0) || eps >= 1.0) throw std::invalid_argument("build_net: need 0 < eps < 1");
    const double bound = net_count_bound(n, eps);
    if (bound > 1e7) throw std::length_error("build_net: count bound too large to pack");
    if (stop_streak == 0) {
        const double suggested = 1000.0 * std::ceil(bound);
        stop_streak = static_cast<std::uint64_t>(
            std::clamp(suggested, 1e5, 1e6));
    }

    EpsilonNet net;
    net.n = n;
    net.epsilon = eps;
    net.packing_radius = eps / 4.0;
    net.seed = seed;
    net.stop_streak = stop_streak;

    SplitMix64 rng(mix64(seed));
    std::uint64_t streak = 0;
    while (streak < stop_streak) {
        std::vector<cplx> c = random_unit_vector(n, rng);
        bool overlaps = false;
        for (const auto& v : net.centers) {
            if (std::norm(vec_inner(c, v)) >= 1.0 - eps) {
                overlaps = true;
                break;
            }
        }
        if (overlaps) {
            ++streak;
        } else {
            net.centers.push_back(std::move(c));
            streak = 0;
            if (static_cast<double>(net.centers.size()) > bound + 1e-9)
                throw std::logic_error(
                    "build_net: packing exceeded the count bound (4/eps)^(n-1); "
                    "this contradicts the disjoint-ball volume argument");
        }
    }
    return net;
}

/// Fraction of `probes` uniform random points lying in some center's eps-ball.
inline double covering_rate(const EpsilonNet& net, std::uint64_t probes, std::uint64_t seed) {
    if (probes == 0) throw std::invalid_argument("covering_rate: need at least one probe");
    if (net.centers.empty()) throw std::invalid_argument("covering_rate: empty net");
    const double thresh = 1.0 - net.epsilon;
    std::uint64_t covered = 0;
    for (std::uint64_t i = 0; i < probes; ++i) {
        SplitMix64 rng(derive_seed(seed, i));
        const std::vector<cplx> w = random_unit_vector(net.n, rng);
        for (const auto& v : net.centers) {
            if (std::norm(vec_inner(v, w)) >= thresh) {
                ++covered;
                break;
            }
        }
    }
    return static_cast<double>(covered) / static_cast<double>(probes);
}

/// Result of a product-grid maximization: the best value and the (lexicographically
/// smallest) tuple of center indices attaining it.
struct GridMax {
    double value = 0.0;
    std::vector<std::size_t> indices;
};

/// max over (i_1, ..., i_k) of |<T, v_{i_1} (x) ... (x) v_{i_k}>| for centers
/// v of `net`. Shares prefix contractions across the grid (depth-first over
/// axes), so the cost is O(N^k * n) rather than O(N^k * k * n^k).
inline GridMax product_grid_max(const DenseTensor& t, const EpsilonNet& net,
                                std::uint64_t budget = std::uint64_t{1} << 27) {
    if (t.n != net.n) throw std::invalid_argument("product_grid_max: dimension mismatch");
    if (net.centers.empty()) throw std::invalid_argument("product_grid_max: empty net");
    const std::size_t N = net.centers.size();
    double paths = 1.0;
    for (int j = 0; j < t.k; ++j) {
        paths *= static_cast<double>(N);
        if (paths > static_cast<double>(budget))
            throw std::runtime_error("product_grid_max: grid budget exceeded");
    }

    // buffers[d] holds T contracted with centers on axes 0..d-1.
    std::vector<std::vector<cplx>> buffers(static_cast<std::size_t>(t.k));
    buffers[0] = t.coeffs;
    GridMax best;
    best.value = -1.0;
    best.indices.assign(static_cast<std::size_t>(t.k), 0);
    std::vector<std::size_t> current(static_cast<std::size_t>(t.k), 0);

    auto dfs = [&](auto&& self, int depth, std::size_t len) -> void {
        if (depth == t.k - 1) {
            for (std::size_t i = 0; i < N; ++i) {
                const double val = std::abs(vec_inner(buffers[static_cast<std::size_t>(depth)],
                                                      net.centers[i]));
                if (val > best.value) {
                    current[static_cast<std::size_t>(depth)] = i;
                    best.value = val;
                    best.indices = current;
                }
            }
            return;
        }
        for (std::size_t i = 0; i < N; ++i) {
            current[static_cast<std::size_t>(depth)] = i;
            detail::contract_first_into(buffers[static_cast<std::size_t>(depth)], len, t.n,
                                        net.centers[i], buffers[static_cast<std::size_t>(depth) + 1]);
            self(self, depth + 1, len / static_cast<std::size_t>(t.n));
        }
    };
    dfs(dfs, 0, buffers[0].size());
    return best;
}

} // namespace gme
