#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gme/rng.hpp"
#include "gme/types.hpp"

namespace gme {

/// Hermitian inner product <A, B> = sum_i A_i * conj(B_i), conjugate-linear in
/// the second argument. Shapes must match exactly.
inline cplx inner(const DenseTensor& a, const DenseTensor& b) {
    if (a.n != b.n || a.k != b.k)
        throw std::invalid_argument("inner: tensor shapes differ");
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        const double ar = a.coeffs[i].real(), ai = a.coeffs[i].imag();
        const double br = b.coeffs[i].real(), bi = b.coeffs[i].imag();
        re += ar * br + ai * bi;
        im += ai * br - ar * bi;
    }
    return {re, im};
}

/// Hilbert-Schmidt norm sqrt(<T, T>).
inline double norm(const DenseTensor& t) {
    double s = 0.0;
    for (const auto& c : t.coeffs) s += std::norm(c);
    return std::sqrt(s);
}

/// Materializes a pure tensor as a dense coefficient array.
inline DenseTensor pure_to_dense(const PureTensor& p, std::uint64_t budget = kDefaultCoeffBudget) {
    const int k = p.order();
    const int n = p.local_dim();
    DenseTensor out(n, k, budget);
    // Build up factor by factor: after step j the first n^(j+1) entries hold
    // the dense coefficients of v_1 (x) ... (x) v_{j+1}.
    out.coeffs[0] = cplx{1.0, 0.0};
    std::size_t len = 1;
    std::vector<cplx> scratch;
    scratch.reserve(out.coeffs.size());
    for (int j = 0; j < k; ++j) {
        const auto& f = p.factors[static_cast<std::size_t>(j)];
        scratch.assign(out.coeffs.begin(), out.coeffs.begin() + static_cast<std::ptrdiff_t>(len));
        for (std::size_t r = 0; r < len; ++r) {
            const cplx a = scratch[r];
            for (int i = 0; i < n; ++i)
                out.coeffs[r * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] =
                    a * f[static_cast<std::size_t>(i)];
        }
        len *= static_cast<std::size_t>(n);
    }
    return out;
}

namespace detail {

/// In-place contraction of the last axis against conj(v):
/// buf[r] <- sum_i buf[r*n + i] * conj(v[i]); len shrinks by a factor n.
inline void contract_last(std::vector<cplx>& buf, std::size_t& len, int n,
                          const std::vector<cplx>& v) {
    const std::size_t rows = len / static_cast<std::size_t>(n);
    for (std::size_t r = 0; r < rows; ++r) {
        double re = 0.0, im = 0.0;
        const std::size_t base = r * static_cast<std::size_t>(n);
        for (int i = 0; i < n; ++i) {
            const cplx a = buf[base + static_cast<std::size_t>(i)];
            const cplx b = v[static_cast<std::size_t>(i)];
            re += a.real() * b.real() + a.imag() * b.imag();
            im += a.imag() * b.real() - a.real() * b.imag();
        }
        buf[r] = {re, im};
    }
    len = rows;
}

/// In-place contraction of the first axis against conj(v):
/// buf[j] <- sum_i buf[i*rest + j] * conj(v[i]).
inline void contract_first(std::vector<cplx>& buf, std::size_t& len, int n,
                           const std::vector<cplx>& v) {
    const std::size_t rest = len / static_cast<std::size_t>(n);
    for (std::size_t j = 0; j < rest; ++j) {
        double re = 0.0, im = 0.0;
        for (int i = 0; i < n; ++i) {
            const cplx a = buf[static_cast<std::size_t>(i) * rest + j];
            const cplx b = v[static_cast<std::size_t>(i)];
            re += a.real() * b.real() + a.imag() * b.imag();
            im += a.imag() * b.real() - a.real() * b.imag();
        }
        buf[j] = {re, im};
    }
    len = rest;
}

/// Contraction of the first axis into a separate output buffer.
inline void contract_first_into(const std::vector<cplx>& in, std::size_t len, int n,
                                const std::vector<cplx>& v, std::vector<cplx>& out) {
    const std::size_t rest = len / static_cast<std::size_t>(n);
    out.resize(rest);
    for (std::size_t j = 0; j < rest; ++j) {
        double re = 0.0, im = 0.0;
        for (int i = 0; i < n; ++i) {
            const cplx a = in[static_cast<std::size_t>(i) * rest + j];
            const cplx b = v[static_cast<std::size_t>(i)];
            re += a.real() * b.real() + a.imag() * b.imag();
            im += a.imag() * b.real() - a.real() * b.imag();
        }
        out[j] = {re, im};
    }
}

} // namespace detail

/// <T, v_1 (x) ... (x) v_k> evaluated by k successive single-axis
/// contractions (cost O(n^k), no dense materialization of the pure tensor).
inline cplx eval_pure(const DenseTensor& t, const PureTensor& p) {
    if (p.order() != t.k) throw std::invalid_argument("eval_pure: order mismatch");
    if (p.local_dim() != t.n) throw std::invalid_argument("eval_pure: dimension mismatch");
    std::vector<cplx> buf = t.coeffs;
    std::size_t len = buf.size();
    for (int j = t.k - 1; j >= 0; --j)
        detail::contract_last(buf, len, t.n, p.factors[static_cast<std::size_t>(j)]);
    return buf[0];
}

/// Slice along `axis` at `index`: the order-(k-1) tensor of coefficients with
/// that axis pinned. Axes are 0-based.
inline DenseTensor slice(const DenseTensor& t, int axis, int index) {
    if (axis < 0 || axis >= t.k) throw std::out_of_range("slice: axis out of range");
    if (index < 0 || index >= t.n) throw std::out_of_range("slice: index out of range");
    if (t.k < 2) throw std::invalid_argument("slice: order must be >= 2");
    DenseTensor out(t.n, t.k - 1);
    std::size_t inner_stride = 1;
    for (int j = 0; j < t.k - 1 - axis; ++j) inner_stride *= static_cast<std::size_t>(t.n);
    const std::size_t block = inner_stride * static_cast<std::size_t>(t.n);
    const std::size_t outer = t.coeffs.size() / block;
    for (std::size_t o = 0; o < outer; ++o) {
        const std::size_t src = o * block + static_cast<std::size_t>(index) * inner_stride;
        const std::size_t dst = o * inner_stride;
        for (std::size_t j = 0; j < inner_stride; ++j) out.coeffs[dst + j] = t.coeffs[src + j];
    }
    return out;
}

/// Contracts `axis` against conj(v), producing an order-(k-1) tensor S with
/// <S, P> = <T, P with v inserted at axis> for every pure P.
inline DenseTensor contract_factor(const DenseTensor& t, int axis, const std::vector<cplx>& v) {
    if (axis < 0 || axis >= t.k) throw std::out_of_range("contract_factor: axis out of range");
    if (static_cast<int>(v.size()) != t.n)
        throw std::invalid_argument("contract_factor: vector dimension mismatch");
    if (t.k < 2) throw std::invalid_argument("contract_factor: order must be >= 2");
    DenseTensor out(t.n, t.k - 1);
    std::size_t inner_stride = 1;
    for (int j = 0; j < t.k - 1 - axis; ++j) inner_stride *= static_cast<std::size_t>(t.n);
    const std::size_t block = inner_stride * static_cast<std::size_t>(t.n);
    const std::size_t outer = t.coeffs.size() / block;
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t j = 0; j < inner_stride; ++j) {
            double re = 0.0, im = 0.0;
            for (int i = 0; i < t.n; ++i) {
                const cplx a = t.coeffs[o * block + static_cast<std::size_t>(i) * inner_stride + j];
                const cplx b = v[static_cast<std::size_t>(i)];
                re += a.real() * b.real() + a.imag() * b.imag();
                im += a.imag() * b.real() - a.real() * b.imag();
            }
            out.coeffs[o * inner_stride + j] = {re, im};
        }
    }
    return out;
}

/// Haar-uniform random unit tensor: i.i.d. standard complex Gaussian
/// coefficients, normalized. Deterministic in `seed`.
inline DenseTensor random_unit_tensor(int n, int k, std::uint64_t seed,
                                      std::uint64_t budget = kDefaultCoeffBudget) {
    DenseTensor t(n, k, budget);
    SplitMix64 rng(mix64(seed));
    double norm2 = 0.0;
    do {
        fill_gaussian(t.coeffs, rng);
        norm2 = 0.0;
        for (const auto& c : t.coeffs) norm2 += std::norm(c);
    } while (norm2 < 1e-280);
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& c : t.coeffs) c *= inv;
    return t;
}

} // namespace gme
