#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gme {

using cplx = std::complex<double>;

/// Hard cap on dense coefficient storage (n^k entries).
inline constexpr std::uint64_t kDefaultCoeffBudget = std::uint64_t{1} << 24;

/// Number of coefficients n^k, with overflow and budget checks.
inline std::uint64_t dense_size(int n, int k, std::uint64_t budget = kDefaultCoeffBudget) {
    if (n < 1) throw std::invalid_argument("dense_size: local dimension must be >= 1");
    if (k < 1) throw std::invalid_argument("dense_size: order must be >= 1");
    std::uint64_t size = 1;
    for (int j = 0; j < k; ++j) {
        if (size > budget / static_cast<std::uint64_t>(n))
            throw std::length_error("dense_size: coefficient budget exceeded (n^k > " +
                                    std::to_string(budget) + ")");
        size *= static_cast<std::uint64_t>(n);
    }
    return size;
}

/// Order-k tensor on (C^n)^{tensor k}, stored as a flat row-major coefficient
/// vector: multi-index (i_1, ..., i_k) lives at offset sum_j i_j * n^(k-j),
/// i.e. the first factor index is the most significant digit.
struct DenseTensor {
    int n = 0;                 ///< local dimension of every factor
    int k = 0;                 ///< tensor order (number of factors)
    std::vector<cplx> coeffs;  ///< n^k row-major coefficients

    DenseTensor() = default;

    /// Zero tensor of the given shape.
    DenseTensor(int n_, int k_, std::uint64_t budget = kDefaultCoeffBudget)
        : n(n_), k(k_), coeffs(dense_size(n_, k_, budget)) {}

    std::size_t size() const { return coeffs.size(); }

    /// Flat offset of a multi-index (bounds-checked).
    std::size_t offset(const std::vector<int>& idx) const {
        if (static_cast<int>(idx.size()) != k)
            throw std::invalid_argument("DenseTensor::offset: index arity mismatch");
        std::size_t off = 0;
        for (int j = 0; j < k; ++j) {
            if (idx[static_cast<std::size_t>(j)] < 0 || idx[static_cast<std::size_t>(j)] >= n)
                throw std::out_of_range("DenseTensor::offset: index out of range");
            off = off * static_cast<std::size_t>(n) + static_cast<std::size_t>(idx[static_cast<std::size_t>(j)]);
        }
        return off;
    }

    cplx& at(const std::vector<int>& idx) { return coeffs[offset(idx)]; }
    const cplx& at(const std::vector<int>& idx) const { return coeffs[offset(idx)]; }

    /// Throws if the coefficient storage is inconsistent or non-finite.
    void validate() const {
        if (coeffs.size() != dense_size(n, k))
            throw std::invalid_argument("DenseTensor: coefficient count does not equal n^k");
        for (const auto& c : coeffs)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw std::invalid_argument("DenseTensor: non-finite coefficient");
    }
};

/// Rank-one (pure) tensor v_1 (x) v_2 (x) ... (x) v_k, kept in factored form.
struct PureTensor {
    std::vector<std::vector<cplx>> factors;

    int order() const { return static_cast<int>(factors.size()); }

    /// Local dimension; requires all factors to share it.
    int local_dim() const {
        if (factors.empty()) throw std::invalid_argument("PureTensor: no factors");
        const std::size_t n = factors.front().size();
        for (const auto& f : factors)
            if (f.size() != n) throw std::invalid_argument("PureTensor: factor dimensions differ");
        return static_cast<int>(n);
    }
};

inline double vec_norm(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const auto& c : v) s += std::norm(c);
    return std::sqrt(s);
}

/// Hermitian inner product of vectors, conjugate-linear in the second slot.
inline cplx vec_inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec_inner: dimension mismatch");
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ai * br - ar * bi;
    }
    return {re, im};
}

/// Throws unless v is a unit vector (tolerance 1e-12 on the norm).
inline void require_unit(const std::vector<cplx>& v, const char* what) {
    const double nrm = vec_norm(v);
    if (std::abs(nrm - 1.0) > 1e-12)
        throw std::invalid_argument(std::string(what) + ": vector is not unit norm");
}

} // namespace gme
