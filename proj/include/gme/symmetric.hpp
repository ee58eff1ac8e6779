#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gme/epsilon_net.hpp"
#include "gme/rng.hpp"
#include "gme/spectral.hpp"
#include "gme/tensor.hpp"
#include "gme/types.hpp"

namespace gme {

/// Exact binomial coefficient with overflow guard.
inline std::uint64_t binomial_u64(std::uint64_t a, std::uint64_t b) {
    if (b > a) return 0;
    if (b > a - b) b = a - b;
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= b; ++i) {
        r = r * (a - b + i) / i;
        if (r > static_cast<unsigned __int128>(UINT64_MAX))
            throw std::overflow_error("binomial_u64: result exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

/// Dimension of the space of degree-m symmetric tensors in n variables:
/// C(m+n-1, m).
inline std::uint64_t d_nm(int n, int m) {
    if (n < 1) throw std::invalid_argument("d_nm: n must be >= 1");
    if (m < 0) throw std::invalid_argument("d_nm: m must be >= 0");
    return binomial_u64(static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(n) - 1,
                        static_cast<std::uint64_t>(m));
}

/// Exact multinomial coefficient m! / (alpha_1! ... alpha_n!) for an exponent
/// tuple summing to m.
inline std::uint64_t multinomial(int m, const std::vector<int>& alpha) {
    std::uint64_t total = 0;
    std::uint64_t r = 1;
    for (int a : alpha) {
        if (a < 0) throw std::invalid_argument("multinomial: negative exponent");
        total += static_cast<std::uint64_t>(a);
        const std::uint64_t factor = binomial_u64(total, static_cast<std::uint64_t>(a));
        if (factor != 0 && r > UINT64_MAX / factor)
            throw std::overflow_error("multinomial: result exceeds 64 bits");
        r *= factor;
    }
    if (total != static_cast<std::uint64_t>(m))
        throw std::invalid_argument("multinomial: exponents do not sum to m");
    return r;
}

/// All exponent tuples alpha in N^n with sum m, in lexicographic descending
/// order: (m,0,...,0) first, (0,...,0,m) last.
inline std::vector<std::vector<int>> enumerate_exponents(int n, int m) {
    if (n < 1) throw std::invalid_argument("enumerate_exponents: n must be >= 1");
    if (m < 0) throw std::invalid_argument("enumerate_exponents: m must be >= 0");
    std::vector<std::vector<int>> out;
    std::vector<int> alpha(static_cast<std::size_t>(n), 0);
    alpha[0] = m;
    for (;;) {
        out.push_back(alpha);
        if (n == 1) break;
        const int t = alpha[static_cast<std::size_t>(n - 1)];
        alpha[static_cast<std::size_t>(n - 1)] = 0;
        int j = n - 2;
        while (j >= 0 && alpha[static_cast<std::size_t>(j)] == 0) --j;
        if (j < 0) break;
        alpha[static_cast<std::size_t>(j)] -= 1;
        alpha[static_cast<std::size_t>(j + 1)] = t + 1;
    }
    return out;
}

/// Position of an exponent tuple in the enumeration above.
inline std::size_t exponent_rank(int n, int m, const std::vector<int>& alpha) {
    if (static_cast<int>(alpha.size()) != n)
        throw std::invalid_argument("exponent_rank: arity mismatch");
    // Tuples ordered before alpha carry a strictly larger exponent at the
    // first position where they differ; count them prefix by prefix. The
    // number of tails summing to s over `parts` slots is C(s+parts-1,
    // parts-1).
    std::uint64_t rank = 0;
    int rem = m;
    for (int j = 0; j + 1 < n; ++j) {
        const int aj = alpha[static_cast<std::size_t>(j)];
        if (aj < 0 || aj > rem) throw std::invalid_argument("exponent_rank: invalid tuple");
        const int parts = n - 1 - j;
        for (int a = aj + 1; a <= rem; ++a)
            rank += binomial_u64(static_cast<std::uint64_t>(rem - a + parts - 1),
                                 static_cast<std::uint64_t>(parts - 1));
        rem -= aj;
    }
    if (alpha[static_cast<std::size_t>(n - 1)] != rem)
        throw std::invalid_argument("exponent_rank: exponents do not sum to m");
    return static_cast<std::size_t>(rank);
}

/// Degree-m symmetric tensor in n variables. coords holds one complex entry
/// per exponent tuple (enumerate_exponents order) in the isometric
/// normalization: the dense embedding places coords[alpha] /
/// sqrt(multinomial(m; alpha)) on each of the multinomial(m; alpha) index
/// orderings with pattern alpha, so the euclidean norm of coords equals the
/// norm of the embedded tensor exactly.
struct SymmetricTensor {
    int n = 0;
    int m = 0;
    std::vector<cplx> coords;

    SymmetricTensor() = default;
    SymmetricTensor(int n_, int m_) : n(n_), m(m_) {
        if (n_ < 1) throw std::invalid_argument("SymmetricTensor: n must be >= 1");
        if (m_ < 1) throw std::invalid_argument("SymmetricTensor: m must be >= 1");
        const std::uint64_t d = d_nm(n_, m_);
        if (d > static_cast<std::uint64_t>(kDefaultCoeffBudget))
            throw std::length_error("SymmetricTensor: coordinate budget exceeded");
        coords.assign(static_cast<std::size_t>(d), cplx{0.0, 0.0});
    }

    void validate() const {
        if (n < 1 || m < 1) throw std::invalid_argument("SymmetricTensor: need n >= 1, m >= 1");
        if (coords.size() != d_nm(n, m))
            throw std::invalid_argument("SymmetricTensor: coords length must be d_nm");
        for (const cplx& c : coords)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw std::invalid_argument("SymmetricTensor: non-finite coordinate");
    }
};

/// Dense order-m embedding of a symmetric tensor; preserves euclidean norm.
inline DenseTensor sym_embed(const SymmetricTensor& s) {
    s.validate();
    DenseTensor out(s.n, s.m);
    const auto exps = enumerate_exponents(s.n, s.m);
    std::vector<double> scale(exps.size());
    for (std::size_t r = 0; r < exps.size(); ++r)
        scale[r] = 1.0 / std::sqrt(static_cast<double>(multinomial(s.m, exps[r])));
    std::vector<int> alpha(static_cast<std::size_t>(s.n));
    for (std::size_t flat = 0; flat < out.coeffs.size(); ++flat) {
        std::fill(alpha.begin(), alpha.end(), 0);
        std::size_t rem = flat;
        for (int j = 0; j < s.m; ++j) {
            alpha[rem % static_cast<std::size_t>(s.n)] += 1;
            rem /= static_cast<std::size_t>(s.n);
        }
        const std::size_t r = exponent_rank(s.n, s.m, alpha);
        out.coeffs[flat] = s.coords[r] * scale[r];
    }
    return out;
}

namespace detail {

/// <sym_embed(S), v^{(x) m}> without the unit-norm precondition check.
inline cplx sym_eval_power_unchecked(const SymmetricTensor& s,
                                     const std::vector<std::vector<int>>& exps,
                                     const std::vector<double>& root_mult,
                                     const std::vector<cplx>& v) {
    cplx acc{0.0, 0.0};
    for (std::size_t r = 0; r < exps.size(); ++r) {
        cplx term = s.coords[r] * root_mult[r];
        for (int j = 0; j < s.n; ++j) {
            const cplx b = std::conj(v[static_cast<std::size_t>(j)]);
            for (int a = 0; a < exps[r][static_cast<std::size_t>(j)]; ++a) term *= b;
        }
        acc += term;
    }
    return acc;
}

/// Conjugate-gradient direction of the symmetric form at v: component i is
/// (1/m) * sum over alpha with alpha_i >= 1 of coords[alpha] *
/// sqrt(multinomial) * alpha_i * prod_j conj(v_j)^(alpha_j - delta_ij).
/// Satisfies sum_i t_i conj(v_i) = <sym_embed(S), v^{(x) m}> by Euler's
/// identity, so the objective is recovered as the inner product with v.
inline void sym_gradient(const SymmetricTensor& s,
                         const std::vector<std::vector<int>>& exps,
                         const std::vector<double>& root_mult,
                         const std::vector<cplx>& v, std::vector<cplx>& t) {
    const std::size_t n = static_cast<std::size_t>(s.n);
    t.assign(n, cplx{0.0, 0.0});
    std::vector<cplx> pw(n), pm(n), pre(n + 1), suf(n + 1);
    for (std::size_t r = 0; r < exps.size(); ++r) {
        const auto& alpha = exps[r];
        for (std::size_t j = 0; j < n; ++j) {
            const cplx b = std::conj(v[j]);
            cplx lower{1.0, 0.0};
            cplx full{1.0, 0.0};
            for (int a = 0; a < alpha[j]; ++a) {
                lower = full;
                full *= b;
            }
            pm[j] = lower;
            pw[j] = full;
        }
        pre[0] = cplx{1.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) pre[j + 1] = pre[j] * pw[j];
        suf[n] = cplx{1.0, 0.0};
        for (std::size_t j = n; j-- > 0;) suf[j] = suf[j + 1] * pw[j];
        const cplx base = s.coords[r] * root_mult[r];
        for (std::size_t j = 0; j < n; ++j)
            if (alpha[j] >= 1)
                t[j] += base * (static_cast<double>(alpha[j]) / s.m) * pre[j] * pm[j] * suf[j + 1];
    }
}

} // namespace detail

/// <sym_embed(S), v^{(x) m}> evaluated directly in monomial coordinates in
/// O(d_nm * m) time. Requires a unit vector.
inline cplx sym_eval_power(const SymmetricTensor& s, const std::vector<cplx>& v) {
    s.validate();
    if (static_cast<int>(v.size()) != s.n)
        throw std::invalid_argument("sym_eval_power: vector dimension mismatch");
    require_unit(v, "sym_eval_power");
    const auto exps = enumerate_exponents(s.n, s.m);
    std::vector<double> root_mult(exps.size());
    for (std::size_t r = 0; r < exps.size(); ++r)
        root_mult[r] = std::sqrt(static_cast<double>(multinomial(s.m, exps[r])));
    return detail::sym_eval_power_unchecked(s, exps, root_mult, v);
}

/// Heuristic spectral-norm lower bound for a unit symmetric tensor via the
/// symmetric power iteration: the maximum of |<S, v^{(x) m}>| over unit v
/// equals the spectral norm (best rank-one approximations of symmetric
/// tensors can be taken symmetric). Multi-start, deterministic per seed.
/// Each accepted step is monotone in the objective: the pure power step is
/// taken when it does not decrease |<S, v^{(x) m}>|, otherwise progressively
/// damped blends toward the previous iterate are tried (0.5 first) and the
/// trajectory stops when none improves.
inline SigmaInterval banach_sigma(const SymmetricTensor& s, int num_starts = 0,
                                  int max_iters = 500, double tol = 1e-12,
                                  std::uint64_t seed = 0) {
    s.validate();
    if (std::abs(vec_norm(s.coords) - 1.0) > 1e-9)
        throw std::invalid_argument("banach_sigma: tensor must be unit norm");
    if (num_starts <= 0) num_starts = 16 + 4 * s.m;
    if (max_iters < 1) throw std::invalid_argument("banach_sigma: max_iters must be >= 1");

    const auto exps = enumerate_exponents(s.n, s.m);
    std::vector<double> root_mult(exps.size());
    for (std::size_t r = 0; r < exps.size(); ++r)
        root_mult[r] = std::sqrt(static_cast<double>(multinomial(s.m, exps[r])));
    const auto objective = [&](const std::vector<cplx>& v) {
        return std::abs(detail::sym_eval_power_unchecked(s, exps, root_mult, v));
    };

    // Blend the candidate toward the previous iterate after aligning the
    // global phase; returns the first damping that does not lose ground, or
    // false if every damping decreases the objective.
    const auto damped_step = [&](const std::vector<cplx>& v, std::vector<cplx>& w, double obj,
                                 double& cand_obj) {
        const cplx ip = vec_inner(w, v);
        if (std::abs(ip) > 0.0) {
            const cplx phase = std::conj(ip) / std::abs(ip);
            for (auto& c : w) c *= phase;
        }
        for (double beta : {0.5, 0.25, 0.125, 0.0625}) {
            std::vector<cplx> blend(v.size());
            for (std::size_t j = 0; j < v.size(); ++j)
                blend[j] = (1.0 - beta) * v[j] + beta * w[j];
            const double bn = vec_norm(blend);
            if (bn < 1e-150) continue;
            for (auto& c : blend) c /= bn;
            const double blend_obj = objective(blend);
            if (blend_obj >= obj - 1e-15) {
                w = std::move(blend);
                cand_obj = blend_obj;
                return true;
            }
        }
        return false;
    };

    // The pure power step can stall without decreasing: for even degrees the
    // map may swap between iterates of equal objective. Damping breaks the
    // cycle, so after `kPatience` non-improving steps the trajectory switches
    // to damped updates permanently; another stretch of non-improving damped
    // steps means convergence.
    constexpr int kPatience = 20;

    double best = -1.0;
    std::vector<cplx> best_v;
    std::vector<cplx> t;
    for (int start = 0; start < num_starts; ++start) {
        SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(start)));
        std::vector<cplx> v = random_unit_vector(s.n, rng);
        int resamples = 0;
        int non_improving = 0;
        bool damped_mode = false;
        double obj = objective(v);
        for (int iter = 0; iter < max_iters; ++iter) {
            detail::sym_gradient(s, exps, root_mult, v, t);
            const double tn = vec_norm(t);
            if (tn < 1e-150) {
                if (++resamples > 3) break;
                v = random_unit_vector(s.n, rng);
                obj = objective(v);
                non_improving = 0;
                damped_mode = false;
                continue;
            }
            std::vector<cplx> w = t;
            for (auto& c : w) c /= tn;
            double cand_obj = objective(w);
            if (damped_mode || cand_obj < obj - 1e-15) {
                if (!damped_step(v, w, obj, cand_obj)) break;
            }
            if (cand_obj < obj - 1e-12)
                throw std::logic_error("banach_sigma: objective decreased");
            const bool improved = cand_obj - obj >= tol;
            v = std::move(w);
            obj = std::max(obj, cand_obj);
            if (improved) {
                non_improving = 0;
            } else if (++non_improving >= kPatience) {
                if (damped_mode) break;
                damped_mode = true;
                non_improving = 0;
            }
        }
        if (obj > best) {
            best = obj;
            best_v = v;
        }
    }

    SigmaInterval out;
    PureTensor witness;
    witness.factors.assign(static_cast<std::size_t>(s.m), best_v);
    detail::canonicalize_phases(witness);
    out.witness = witness;
    out.lower = std::abs(detail::sym_eval_power_unchecked(s, exps, root_mult, witness.factors[0]));
    out.lower_method = "banach";
    out.upper = std::min(vec_norm(s.coords), 1.0);
    out.upper_method = "norm-cap";
    return out;
}

/// Two-sided spectral-norm interval for a unit symmetric tensor from a net
/// on the base sphere: only N single-vector evaluations. If the maximizer v
/// has overlap |<v,c>|^2 >= 1-eps with some center c, then |<S, c^{(x) m}>|^2
/// >= sigma^2 - m^2 eps^2, so sigma <= sqrt(M^2 + m^2 eps^2) with M the max
/// over centers.
inline SigmaInterval sym_sigma_certified(const SymmetricTensor& s, const EpsilonNet& net) {
    s.validate();
    if (net.n != s.n) throw std::invalid_argument("sym_sigma_certified: dimension mismatch");
    if (net.centers.empty()) throw std::invalid_argument("sym_sigma_certified: empty net");
    if (std::abs(vec_norm(s.coords) - 1.0) > 1e-9)
        throw std::invalid_argument("sym_sigma_certified: tensor must be unit norm");

    const auto exps = enumerate_exponents(s.n, s.m);
    std::vector<double> root_mult(exps.size());
    for (std::size_t r = 0; r < exps.size(); ++r)
        root_mult[r] = std::sqrt(static_cast<double>(multinomial(s.m, exps[r])));

    double m_best = -1.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < net.centers.size(); ++i) {
        const double val =
            std::abs(detail::sym_eval_power_unchecked(s, exps, root_mult, net.centers[i]));
        if (val > m_best) {
            m_best = val;
            arg = i;
        }
    }

    SigmaInterval out;
    out.lower = m_best;
    out.lower_method = "net-grid";
    const double slack = static_cast<double>(s.m) * net.epsilon;
    const double raw = std::sqrt(m_best * m_best + slack * slack);
    if (raw < 1.0) {
        out.upper = raw;
        out.upper_method = "net-certified";
    } else {
        out.upper = 1.0;
        out.upper_method = "norm-cap";
    }
    PureTensor witness;
    witness.factors.assign(static_cast<std::size_t>(s.m), net.centers[arg]);
    out.witness = std::move(witness);
    return out;
}

/// Uniform random unit symmetric tensor: complex Gaussian isometric
/// coordinates, normalized. Uniform on the d_nm-sphere, hence uniform on
/// unit symmetric tensors by the isometry.
inline SymmetricTensor random_symmetric_unit(int n, int m, std::uint64_t seed) {
    SymmetricTensor s(n, m);
    SplitMix64 rng(mix64(seed));
    fill_gaussian(s.coords, rng);
    double nrm = vec_norm(s.coords);
    while (nrm * nrm < 1e-280) {
        fill_gaussian(s.coords, rng);
        nrm = vec_norm(s.coords);
    }
    for (auto& c : s.coords) c /= nrm;
    return s;
}

/// Entanglement ceiling for unit symmetric tensors: E <= log2(d_nm).
inline double upper_bound_E_sym(int n, int m) {
    return std::log2(static_cast<double>(d_nm(n, m)));
}

} // namespace gme
