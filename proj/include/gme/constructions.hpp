#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gme/tensor.hpp"
#include "gme/types.hpp"

namespace gme {

/// Maximum tensor order accepted by the explicit constructions.
inline constexpr int kMaxFactors = 24;

/// Fully antisymmetric order-d tensor on (C^d)^{(x) d}: coefficient sgn(pi)
/// (or 1 when signed=false) at index (pi(1)-1, ..., pi(d)-1) for every
/// permutation pi, zero elsewhere. With normalize=true the result is divided
/// by sqrt(d!) to unit norm. The signed variant has spectral norm exactly 1;
/// dropping the signs (the permanent-style variant) inflates it, which is why
/// signed is the default.
inline DenseTensor det_tensor(int d, bool signed_variant = true, bool normalize = false) {
    if (d < 1) throw std::invalid_argument("det_tensor: d must be >= 1");
    if (d > 8) throw std::length_error("det_tensor: d > 8 exceeds the coefficient budget");
    DenseTensor out(d, d);
    std::vector<int> perm(static_cast<std::size_t>(d));
    std::iota(perm.begin(), perm.end(), 0);
    double scale = 1.0;
    if (normalize) {
        double fact = 1.0;
        for (int j = 2; j <= d; ++j) fact *= static_cast<double>(j);
        scale = 1.0 / std::sqrt(fact);
    }
    do {
        int inversions = 0;
        for (int a = 0; a < d; ++a)
            for (int b = a + 1; b < d; ++b)
                if (perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)]) ++inversions;
        const double sign = (!signed_variant || inversions % 2 == 0) ? 1.0 : -1.0;
        out.at(perm) = cplx{sign * scale, 0.0};
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

/// Reinterprets an order-k tensor on (C^(n^p))^{(x) k} as an order-(p*k)
/// tensor on (C^n)^{(x) p*k} by expanding every index into its p base-n
/// digits, most significant first. Under row-major layout this is a pure
/// reindexing: the coefficient array is reused bitwise.
inline DenseTensor regroup(const DenseTensor& t, int n, int p) {
    if (n < 2) throw std::invalid_argument("regroup: n must be >= 2");
    if (p < 1) throw std::invalid_argument("regroup: p must be >= 1");
    std::uint64_t np = 1;
    for (int j = 0; j < p; ++j) {
        np *= static_cast<std::uint64_t>(n);
        if (np > (std::uint64_t{1} << 31)) throw std::length_error("regroup: n^p overflows");
    }
    if (static_cast<std::uint64_t>(t.n) != np)
        throw std::invalid_argument("regroup: tensor local dimension is not n^p");
    if (p * t.k > kMaxFactors) throw std::length_error("regroup: factor budget exceeded");
    DenseTensor out;
    out.n = n;
    out.k = p * t.k;
    out.coeffs = t.coeffs;
    return out;
}

/// Bijection [n^p] -> [n]^p, stored as 0-based digit tuples: h[i] lists the p
/// digits assigned to big-index i.
struct GroupingMap {
    int n = 0;
    int p = 0;
    std::vector<std::vector<int>> h;
};

/// Checks that h is a bijection onto [n]^p; throws otherwise.
inline void validate_grouping(const GroupingMap& g) {
    if (g.n < 2 || g.p < 1) throw std::invalid_argument("GroupingMap: need n >= 2, p >= 1");
    std::uint64_t np = 1;
    for (int j = 0; j < g.p; ++j) np *= static_cast<std::uint64_t>(g.n);
    if (g.h.size() != np) throw std::invalid_argument("GroupingMap: h must have n^p entries");
    std::vector<bool> seen(static_cast<std::size_t>(np), false);
    for (const auto& digits : g.h) {
        if (static_cast<int>(digits.size()) != g.p)
            throw std::invalid_argument("GroupingMap: digit tuple arity mismatch");
        std::uint64_t value = 0;
        for (int dgt : digits) {
            if (dgt < 0 || dgt >= g.n) throw std::out_of_range("GroupingMap: digit out of range");
            value = value * static_cast<std::uint64_t>(g.n) + static_cast<std::uint64_t>(dgt);
        }
        if (seen[static_cast<std::size_t>(value)])
            throw std::invalid_argument("GroupingMap: h is not injective");
        seen[static_cast<std::size_t>(value)] = true;
    }
}

/// Default grouping: h[i] = base-n digits of i, most significant first.
inline GroupingMap default_grouping(int n, int p) {
    GroupingMap g;
    g.n = n;
    g.p = p;
    std::uint64_t np = 1;
    for (int j = 0; j < p; ++j) np *= static_cast<std::uint64_t>(n);
    g.h.resize(static_cast<std::size_t>(np));
    for (std::uint64_t i = 0; i < np; ++i) {
        std::vector<int> digits(static_cast<std::size_t>(p));
        std::uint64_t rem = i;
        for (int j = p - 1; j >= 0; --j) {
            digits[static_cast<std::size_t>(j)] = static_cast<int>(rem % static_cast<std::uint64_t>(n));
            rem /= static_cast<std::uint64_t>(n);
        }
        g.h[static_cast<std::size_t>(i)] = std::move(digits);
    }
    validate_grouping(g);
    return g;
}

/// The unit tensor t_{n,p}: the normalized determinant tensor of dimension
/// n^p, regrouped onto (C^n)^{(x) p*n^p}. Its spectral norm is exactly
/// 1/sqrt(n^p !), attained on the witness below.
inline DenseTensor t_np(int n, int p) {
    if (n < 2) throw std::invalid_argument("t_np: n must be >= 2");
    if (p < 1) throw std::invalid_argument("t_np: p must be >= 1");
    std::uint64_t np = 1;
    for (int j = 0; j < p; ++j) np *= static_cast<std::uint64_t>(n);
    if (np > 8) throw std::length_error("t_np: n^p > 8 exceeds the coefficient budget");
    if (p * static_cast<int>(np) > kMaxFactors) throw std::length_error("t_np: factor budget exceeded");
    return regroup(det_tensor(static_cast<int>(np), true, true), n, p);
}

/// Pure witness u = (x)_{i} e_{h(i)}: one block of p basis factors per
/// big-index i. Evaluating any regrouped determinant tensor against it picks
/// out a single permutation's coefficient, so |<det, u>| = 1 exactly (plus or
/// minus one in integer arithmetic before normalization).
inline PureTensor witness_u(const GroupingMap& g) {
    validate_grouping(g);
    if (static_cast<std::uint64_t>(g.p) * g.h.size() > kMaxFactors)
        throw std::length_error("witness_u: factor budget exceeded");
    PureTensor u;
    for (const auto& digits : g.h)
        for (int dgt : digits) {
            std::vector<cplx> e(static_cast<std::size_t>(g.n));
            e[static_cast<std::size_t>(dgt)] = cplx{1.0, 0.0};
            u.factors.push_back(std::move(e));
        }
    return u;
}

/// Exact entanglement of t_{n,p}: E = log2(n^p !) = sum_{j=2}^{n^p} log2 j.
inline double exact_E_tnp(int n, int p) {
    if (n < 2) throw std::invalid_argument("exact_E_tnp: n must be >= 2");
    if (p < 1) throw std::invalid_argument("exact_E_tnp: p must be >= 1");
    std::uint64_t np = 1;
    for (int j = 0; j < p; ++j) np *= static_cast<std::uint64_t>(n);
    double e = 0.0;
    for (std::uint64_t j = 2; j <= np; ++j) e += std::log2(static_cast<double>(j));
    return e;
}

} // namespace gme
