#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "gme/symmetric.hpp"

namespace gme {

/// Concentration bound for general tensors: any C with
/// P[sigma(T) <= C] = 0 over unit tensors satisfies
/// C^2 <= k (n-1) ln(4/eps) / ((n^k - 1)(1-eps)^k) for every eps in (0,1).
inline double thm_main_c2_bound(int n, int k, double epsilon) {
    if (n < 2 || k < 2) throw std::invalid_argument("thm_main_c2_bound: need n, k >= 2");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("thm_main_c2_bound: epsilon must be in (0,1)");
    const double dim = std::pow(static_cast<double>(n), static_cast<double>(k));
    return k * (n - 1) * std::log(4.0 / epsilon) /
           ((dim - 1.0) * std::pow(1.0 - epsilon, static_cast<double>(k)));
}

/// Existence lower bound on the maximal entanglement:
/// E_max >= (k-1) log2 n - log2 k - log2 ln k - 2, proved for k >= 21.
inline double cor_main_lower(int n, int k) {
    if (n < 2) throw std::invalid_argument("cor_main_lower: n must be >= 2");
    if (k < 2) throw std::invalid_argument("cor_main_lower: k must be >= 2 (ln k > 0)");
    const double kd = static_cast<double>(k);
    return (kd - 1.0) * std::log2(static_cast<double>(n)) - std::log2(kd) -
           std::log2(std::log(kd)) - 2.0;
}

/// Validity range of the existence lower bound.
inline bool cor_main_valid(int k) { return k >= 21; }

/// High-probability entanglement threshold for n = 2: all but an e^{-k}
/// fraction of unit tensors satisfy E(T) >= k - log2 k - log2 ln k - 3,
/// proved for k >= 4.
inline double fraction_threshold(int k) {
    if (k < 2) throw std::invalid_argument("fraction_threshold: k must be >= 2 (ln k > 0)");
    const double kd = static_cast<double>(k);
    return kd - std::log2(kd) - std::log2(std::log(kd)) - 3.0;
}

/// Validity range of the fraction threshold.
inline bool fraction_valid(int k) { return k >= 4; }

/// Symmetric concentration bound: any C_s with P[sigma(S) <= C_s] = 0 over
/// unit symmetric tensors satisfies
/// C_s^2 <= m^2 eps^2 + (n-1) ln(4/eps) / (d_nm - 1).
inline double thm_sym_c2_bound(int n, int m, double epsilon) {
    if (n < 2 || m < 1) throw std::invalid_argument("thm_sym_c2_bound: need n >= 2, m >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("thm_sym_c2_bound: epsilon must be in (0,1)");
    const double d = static_cast<double>(d_nm(n, m));
    if (d < 2.0) throw std::invalid_argument("thm_sym_c2_bound: d_nm must exceed 1");
    const double me = m * epsilon;
    return me * me + (n - 1) * std::log(4.0 / epsilon) / (d - 1.0);
}

/// Symmetric existence lower bound:
/// E^s_max >= log2 d_nm - log2 ln d_nm - log2 n, for m large enough that the
/// probe below holds.
inline double sym_main_lower(int n, int m) {
    if (n < 2 || m < 1) throw std::invalid_argument("sym_main_lower: need n >= 2, m >= 1");
    const double d = static_cast<double>(d_nm(n, m));
    return std::log2(d) - std::log2(std::log(d)) - std::log2(static_cast<double>(n));
}

/// The "m sufficiently large" condition, operationalized as the proof's two
/// sufficient prerequisites: 1 + (n-1) ln(4m sqrt(d_nm)) <= 0.99 n ln(d_nm)
/// and 0.99 <= 1 - 1/d_nm. Together they imply every step of the proof
/// chain, so the chain holds at every m past the threshold.
inline bool sym_main_probe(int n, int m) {
    if (n < 2 || m < 1) throw std::invalid_argument("sym_main_probe: need n >= 2, m >= 1");
    const double d = static_cast<double>(d_nm(n, m));
    return 1.0 + (n - 1) * std::log(4.0 * m * std::sqrt(d)) <= 0.99 * n * std::log(d) &&
           0.99 <= 1.0 - 1.0 / d;
}

/// Smallest m whose probe holds, found by scan.
inline int sym_main_m_star(int n, int m_max = 1000000) {
    for (int m = 1; m <= m_max; ++m)
        if (sym_main_probe(n, m)) return m;
    throw std::runtime_error("sym_main_m_star: probe not satisfied within the scan range");
}

/// Qubit refinement of the symmetric existence bound, valid for all m:
/// E^s_max >= log2 m - log2(1 + ln(4 m sqrt(m))).
inline double sym_qubit_lower(int m) {
    if (m < 1) throw std::invalid_argument("sym_qubit_lower: m must be >= 1");
    const double md = static_cast<double>(m);
    return std::log2(md) - std::log2(1.0 + std::log(4.0 * md * std::sqrt(md)));
}

/// One displayed inequality inside a proof, evaluated numerically.
struct ChainStep {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    /// Direction: true means the step asserts lhs >= rhs, false lhs <= rhs.
    bool geq = true;
    bool holds = false;
};

/// Numeric audit of one proof's inequality chain at given parameters.
struct ChainReport {
    std::string which;
    bool valid_range = false;
    std::vector<ChainStep> steps;
    bool all_hold = false;
};

namespace detail {

inline void push_step(ChainReport& rep, std::string name, double lhs, double rhs, bool geq) {
    ChainStep st;
    st.name = std::move(name);
    st.lhs = lhs;
    st.rhs = rhs;
    st.geq = geq;
    st.holds = geq ? (lhs >= rhs) : (lhs <= rhs);
    rep.steps.push_back(std::move(st));
}

inline void finalize(ChainReport& rep) {
    rep.all_hold = true;
    for (const auto& st : rep.steps) rep.all_hold = rep.all_hold && st.holds;
}

} // namespace detail

/// Audits the proof of the existence lower bound at (n, k): delta = 4/e^3,
/// eps = delta/k.
inline ChainReport verify_chain_cor_main(int n, int k) {
    if (n < 2 || k < 2) throw std::invalid_argument("verify_chain_cor_main: need n, k >= 2");
    ChainReport rep;
    rep.which = "cor_main";
    rep.valid_range = cor_main_valid(k);
    const double delta = 4.0 / std::exp(3.0);
    const double eps = delta / k;
    const double dim = std::pow(static_cast<double>(n), static_cast<double>(k));
    detail::push_step(rep, "grid-count vs power", std::log2((dim - 1.0) / (n - 1.0)),
                      (k - 1.0) * std::log2(static_cast<double>(n)), true);
    detail::push_step(rep, "bernoulli", std::pow(1.0 - eps, static_cast<double>(k)), 1.0 - delta,
                      true);
    detail::push_step(rep, "log2(1-4/e^3) floor", std::log2(1.0 - delta), -1.0, true);
    detail::push_step(rep, "ln k floor", std::log(static_cast<double>(k)), 3.0, true);
    detail::push_step(rep, "log collapse", std::log2(std::log(static_cast<double>(k)) + 3.0),
                      std::log2(std::log(static_cast<double>(k))) + 1.0, false);
    detail::push_step(rep, "assembled", -std::log2(thm_main_c2_bound(n, k, eps)),
                      cor_main_lower(n, k), true);
    detail::finalize(rep);
    return rep;
}

/// Audits the proof of the fraction threshold at k (n = 2): eps = 1/(4k).
inline ChainReport verify_chain_fraction(int k) {
    if (k < 2) throw std::invalid_argument("verify_chain_fraction: k must be >= 2");
    ChainReport rep;
    rep.which = "fraction";
    rep.valid_range = fraction_valid(k);
    const double kd = static_cast<double>(k);
    const double eps = 1.0 / (4.0 * kd);
    const double dim = std::pow(2.0, kd);
    const double d_bound_sq =
        (kd * std::log(4.0 / eps) + kd) / ((dim - 1.0) * std::pow(1.0 - eps, kd));
    detail::push_step(rep, "power count", std::log2(dim - 1.0), kd - 0.25, true);
    detail::push_step(rep, "bernoulli", kd * std::log2(1.0 - eps), std::log2(0.75), true);
    detail::push_step(rep, "three quarters floor", std::log2(0.75), -0.75, true);
    detail::push_step(rep, "ln(16k)+1 cap", std::log(16.0 * kd) + 1.0, 4.0 * std::log(kd), false);
    detail::push_step(rep, "assembled", -std::log2(d_bound_sq), fraction_threshold(k), true);
    detail::finalize(rep);
    return rep;
}

/// Audits the proof of the symmetric existence bound at (n, m):
/// delta = (d_nm - 1)^{-1/2}, eps = delta/m.
inline ChainReport verify_chain_sym_main(int n, int m) {
    if (n < 2 || m < 1) throw std::invalid_argument("verify_chain_sym_main: need n >= 2, m >= 1");
    ChainReport rep;
    rep.which = "sym_main";
    rep.valid_range = sym_main_probe(n, m);
    const double d = static_cast<double>(d_nm(n, m));
    const double delta = 1.0 / std::sqrt(d - 1.0);
    const double md = static_cast<double>(m);
    detail::push_step(rep, "working inequality", 1.0 + (n - 1) * std::log(4.0 * md * std::sqrt(d)),
                      0.99 * n * std::log(d), false);
    detail::push_step(rep, "sqrt monotone", 1.0 + (n - 1) * std::log(4.0 * md * std::sqrt(d - 1.0)),
                      1.0 + (n - 1) * std::log(4.0 * md * std::sqrt(d)), false);
    detail::push_step(rep, "tail fraction", 0.99, 1.0 - 1.0 / d, false);
    detail::push_step(rep, "rearranged",
                      (d - 1.0) / (1.0 + (n - 1) * std::log(4.0 * md * std::sqrt(d - 1.0))),
                      d / (n * std::log(d)), true);
    detail::push_step(
        rep, "assembled",
        -std::log2(delta * delta + (n - 1) * std::log(4.0 * md / delta) / (d - 1.0)),
        sym_main_lower(n, m), true);
    detail::finalize(rep);
    return rep;
}

/// Dispatch by name: "cor_main" takes (n, k), "fraction" takes k (first
/// parameter ignored beyond n = 2 convention), "sym_main" takes (n, m).
inline ChainReport verify_proof_chain(const std::string& which, int n, int k_or_m) {
    if (which == "cor_main") return verify_chain_cor_main(n, k_or_m);
    if (which == "fraction") return verify_chain_fraction(k_or_m);
    if (which == "sym_main") return verify_chain_sym_main(n, k_or_m);
    throw std::invalid_argument("verify_proof_chain: unknown chain '" + which + "'");
}

} // namespace gme
