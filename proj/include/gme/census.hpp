#pragma once

// Monte Carlo experiment harness: entanglement distributions of random unit
// tensors (general and symmetric), sphere-covering experiments, and ball
// volume estimates, all checked against the closed-form bounds.  Reports are
// deterministic functions of the configuration: per-sample seeds are derived
// from (seed, sample index), so the declared worker count never changes the
// output, only the wall clock.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "gme/bounds.hpp"
#include "gme/epsilon_net.hpp"
#include "gme/io.hpp"
#include "gme/rng.hpp"
#include "gme/spectral.hpp"
#include "gme/symmetric.hpp"
#include "gme/tensor.hpp"
#include "gme/types.hpp"

namespace gme {

inline constexpr std::uint64_t kMaxCensusSamples = 20'000'000;

/// Census run description.  `mode` selects the experiment:
///   general   - random unit tensors of order k, hopm lower bounds
///   symmetric - random unit symmetric tensors of degree m, banach iteration
///   covering  - build a net and probe the sphere (samples = probe count)
///   volume    - Monte Carlo ball fraction estimate (samples = probe count)
/// `epsilon` is the net/ball parameter; in the heuristic modes a nonzero
/// value additionally turns on certified intervals from a shared net.
struct CensusConfig {
    std::string mode = "general";
    int n = 2;
    int k = 2;  ///< tensor order (general mode)
    int m = 2;  ///< symmetric degree (symmetric mode)
    std::uint64_t samples = 100;
    std::uint64_t seed = 0;
    int starts = 0;  ///< 0 = per-sample default (16 + 4k or 16 + 4m)
    int iters = 500;
    double tol = 1e-12;
    double epsilon = 0.0;  ///< 0 = no net
    std::uint64_t net_stop_streak = 0;
    int workers = 1;
    std::string out_dir;  ///< empty = keep the report in memory only
};

inline json census_config_to_json(const CensusConfig& cfg) {
    return json{{"mode", cfg.mode},
                {"n", cfg.n},
                {"k", cfg.k},
                {"m", cfg.m},
                {"samples", cfg.samples},
                {"seed", cfg.seed},
                {"starts", cfg.starts},
                {"iters", cfg.iters},
                {"tol", cfg.tol},
                {"epsilon", cfg.epsilon},
                {"net_stop_streak", cfg.net_stop_streak},
                {"workers", cfg.workers},
                {"out_dir", cfg.out_dir}};
}

/// Overlays the keys present in `j` onto `base`.  Unknown keys are rejected
/// so that misspelled configuration files fail loudly.
inline CensusConfig census_config_from_json(const json& j, CensusConfig base = {}) {
    if (!j.is_object()) throw std::invalid_argument("census config: expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "mode") base.mode = value.get<std::string>();
        else if (key == "n") base.n = value.get<int>();
        else if (key == "k") base.k = value.get<int>();
        else if (key == "m") base.m = value.get<int>();
        else if (key == "samples") base.samples = value.get<std::uint64_t>();
        else if (key == "seed") base.seed = value.get<std::uint64_t>();
        else if (key == "starts") base.starts = value.get<int>();
        else if (key == "iters") base.iters = value.get<int>();
        else if (key == "tol") base.tol = value.get<double>();
        else if (key == "epsilon") base.epsilon = value.get<double>();
        else if (key == "net_stop_streak") base.net_stop_streak = value.get<std::uint64_t>();
        else if (key == "workers") base.workers = value.get<int>();
        else if (key == "out_dir") base.out_dir = value.get<std::string>();
        else throw std::invalid_argument("census config: unknown key '" + key + "'");
    }
    return base;
}

/// Result of a census run.  `sample_lines` holds one compact JSON record per
/// sample in index order; `summary` is the aggregate (its `wall_clock_ms`
/// field is the only nondeterministic entry).  `hard_violation` is true when
/// a sample broke a proven upper bound beyond tolerance even after recheck.
struct CensusReport {
    json summary;
    std::vector<std::string> sample_lines;
    bool hard_violation = false;
};

namespace detail {

inline void validate_census_common(const CensusConfig& cfg) {
    if (cfg.samples < 1) throw std::invalid_argument("census: samples must be >= 1");
    if (cfg.samples > kMaxCensusSamples) throw std::length_error("census: sample budget exceeded");
    if (cfg.workers < 1 || cfg.workers > 1024)
        throw std::invalid_argument("census: workers must be in [1, 1024]");
    if (cfg.starts < 0 || cfg.starts > 1'000'000)
        throw std::invalid_argument("census: starts out of range");
    if (cfg.iters < 1 || cfg.iters > 1'000'000)
        throw std::invalid_argument("census: iters out of range");
    if (!(cfg.tol >= 0.0)) throw std::invalid_argument("census: tol must be nonnegative");
    if (cfg.n < 1) throw std::invalid_argument("census: n must be >= 1");
}

/// Runs fn(0..count-1), each index exactly once, on `workers` threads.
/// Results must be written to per-index slots; the caller folds afterwards.
template <typename Fn>
inline void parallel_for(std::uint64_t count, int workers, Fn&& fn) {
    const int pool_size = static_cast<int>(std::min<std::uint64_t>(
        static_cast<std::uint64_t>(workers), count));
    if (pool_size <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(pool_size));
    for (int w = 0; w < pool_size; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::uint64_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

/// Linear-interpolation quantile of an ascending-sorted sample.
inline double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) throw std::invalid_argument("quantile_sorted: empty sample");
    if (!(q >= 0.0) || q > 1.0) throw std::invalid_argument("quantile_sorted: q must be in [0,1]");
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + (sorted[lo + 1] - sorted[lo]) * frac;
}

inline json quantile_block(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    return json{{"min", values.front()},      {"q10", quantile_sorted(values, 0.10)},
                {"q25", quantile_sorted(values, 0.25)}, {"q50", quantile_sorted(values, 0.50)},
                {"q75", quantile_sorted(values, 0.75)}, {"q90", quantile_sorted(values, 0.90)},
                {"max", values.back()}};
}

inline json min_mean_max(const std::vector<double>& values) {
    double lo = values.front(), hi = values.front(), sum = 0.0;
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
    }
    return json{{"min", lo}, {"mean", sum / static_cast<double>(values.size())}, {"max", hi}};
}

/// Seed index for the shared certification net, far above any sample index.
inline constexpr std::uint64_t kNetSeedIndex = 0xffffffff6e657400ull;

/// The experiment-defining part of the configuration.  Worker count and
/// output directory describe the run, not the experiment, and live in the
/// summary's `provenance` block instead so that reruns with a different
/// worker count produce byte-identical summaries outside that block.
inline json experiment_config_json(const CensusConfig& cfg) {
    auto j = census_config_to_json(cfg);
    j.erase("workers");
    j.erase("out_dir");
    return j;
}

struct HeuristicSlot {
    json record;
    double sigma_final = 0.0;
    double e_final = 0.0;
    bool below = false;
    bool hard = false;
    bool rechecked = false;
};

/// Shared skeleton of the general and symmetric modes: sample, run the
/// heuristic, recheck threshold/bound breakers with a 10x budget, aggregate.
/// `sample_sigma(seed_i, budget_scale, slot_record)` runs one heuristic pass
/// and may add mode-specific fields to the record on its first call.
template <typename SampleFn>
inline CensusReport heuristic_census(const CensusConfig& cfg, double e_upper_bound,
                                     std::optional<double> threshold, const json& mode_extras,
                                     SampleFn&& sample_sigma) {
    std::vector<HeuristicSlot> slots(cfg.samples);
    parallel_for(cfg.samples, cfg.workers, [&](std::uint64_t i) {
        HeuristicSlot& slot = slots[i];
        const std::uint64_t seed_i = derive_seed(cfg.seed, i);
        slot.record["index"] = i;
        slot.record["seed"] = seed_i;
        const double sigma = sample_sigma(seed_i, 1, slot.record);
        if (!(sigma > 0.0)) throw std::runtime_error("census: heuristic returned sigma <= 0");
        const double e_est = -2.0 * std::log2(sigma);
        slot.record["sigma_lower"] = sigma;
        slot.record["e_est"] = e_est;
        slot.sigma_final = sigma;
        slot.e_final = e_est;

        const bool breaks_upper = e_est > e_upper_bound + 1e-6;
        const bool breaks_threshold = threshold && e_est < *threshold;
        if (breaks_upper || breaks_threshold) {
            // A too-small sigma inflates e_est, so upper-bound breaks can be
            // heuristic misses; thresholds breaks are genuine (sigma is a
            // certified lower bound) but get the same confirmation pass.
            const double sigma2 = sample_sigma(seed_i, 10, slot.record);
            slot.sigma_final = std::max(sigma, sigma2);
            slot.e_final = -2.0 * std::log2(slot.sigma_final);
            slot.record["sigma_rechecked"] = slot.sigma_final;
            slot.record["e_rechecked"] = slot.e_final;
            slot.rechecked = true;
        }
        slot.below = threshold && slot.e_final < *threshold;
        slot.hard = slot.e_final > e_upper_bound + 1e-6;
        slot.record["below_threshold"] = slot.below;
        slot.record["upper_violation"] = slot.hard;
    });

    CensusReport report;
    report.sample_lines.reserve(slots.size());
    std::vector<double> sigmas, es;
    sigmas.reserve(slots.size());
    es.reserve(slots.size());
    std::uint64_t below_count = 0, hard_count = 0, recheck_count = 0;
    for (auto& slot : slots) {
        report.sample_lines.push_back(slot.record.dump());
        sigmas.push_back(slot.sigma_final);
        es.push_back(slot.e_final);
        below_count += slot.below ? 1 : 0;
        hard_count += slot.hard ? 1 : 0;
        recheck_count += slot.rechecked ? 1 : 0;
    }
    report.hard_violation = hard_count > 0;

    json summary = mode_extras;
    summary["config"] = experiment_config_json(cfg);
    summary["sigma_lower"] = min_mean_max(sigmas);
    summary["e_est"] = quantile_block(std::move(es));
    summary["e_upper_bound"] = e_upper_bound;
    summary["below_threshold_count"] = below_count;
    summary["fraction_below_threshold"] =
        static_cast<double>(below_count) / static_cast<double>(slots.size());
    summary["threshold"] = threshold ? json(*threshold) : json(nullptr);
    summary["recheck_count"] = recheck_count;
    summary["hard_violation_count"] = hard_count;
    summary["hard_violation"] = report.hard_violation;
    summary["e_est_semantics"] =
        "sigma_lower is a certified lower bound on the spectral norm; e_est is "
        "an upper estimate of E, exact when the heuristic attained sigma";
    report.summary = std::move(summary);
    return report;
}

inline json net_provenance(const EpsilonNet& net) {
    return json{{"n", net.n},
                {"epsilon", net.epsilon},
                {"seed", net.seed},
                {"stop_streak", net.stop_streak},
                {"centers", net.centers.size()}};
}

/// Run-specific facts: everything here may legitimately differ between two
/// runs of the same experiment, so determinism checks strip this block.
inline void stamp_provenance(json& summary, const CensusConfig& cfg,
                             std::chrono::steady_clock::time_point start) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    summary["provenance"] =
        json{{"workers", cfg.workers},
             {"out_dir", cfg.out_dir},
             {"wall_clock_ms", std::chrono::duration_cast<
                                   std::chrono::duration<double, std::milli>>(elapsed)
                                   .count()}};
}

}  // namespace detail

/// Random unit tensors of shape n^k: hopm lower bounds per sample, fraction
/// of samples with e_est below fraction_threshold(k) vs exp(-k), and a hard
/// check of the dimension bound E <= (k-1) log2 n.  With cfg.epsilon > 0 a
/// shared net additionally certifies per-sample sigma intervals.
inline CensusReport run_general_census(const CensusConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    detail::validate_census_common(cfg);
    if (cfg.mode != "general") throw std::invalid_argument("run_general_census: mode mismatch");
    if (cfg.k < 1) throw std::invalid_argument("census: k must be >= 1");

    const double e_bound = upper_bound_E(cfg.n, cfg.k);
    std::optional<double> threshold;
    if (cfg.k >= 2) threshold = fraction_threshold(cfg.k);
    const int starts = cfg.starts > 0 ? cfg.starts : 16 + 4 * cfg.k;

    std::optional<EpsilonNet> net;
    if (cfg.epsilon != 0.0)
        net = build_net(cfg.n, cfg.epsilon, derive_seed(cfg.seed, detail::kNetSeedIndex),
                        cfg.net_stop_streak);

    json extras{{"mode", "general"},
                {"starts", starts},
                {"expected_fraction_bound", std::exp(-static_cast<double>(cfg.k))},
                {"threshold_valid", cfg.k >= 2 && fraction_valid(cfg.k)}};
    if (net) extras["net"] = detail::net_provenance(*net);

    auto report = detail::heuristic_census(
        cfg, e_bound, threshold, extras,
        [&](std::uint64_t seed_i, int budget_scale, json& record) {
            const auto t = random_unit_tensor(cfg.n, cfg.k, seed_i);
            const auto est = hopm(t, starts * budget_scale, cfg.iters, cfg.tol,
                                  derive_seed(seed_i, budget_scale == 1 ? 1 : 2));
            if (budget_scale == 1 && net) {
                const auto cert = sigma_certified(t, *net);
                record["sigma_cert_lower"] = cert.lower;
                record["sigma_cert_upper"] = cert.upper;
                record["e_lower"] = std::max(0.0, -2.0 * std::log2(cert.upper));
                record["e_upper"] = -2.0 * std::log2(cert.lower);
            }
            return est.lower;
        });

    // Empirical counterpart of the infimum constant: min sigma over samples.
    const double c_emp = report.summary["sigma_lower"]["min"].get<double>();
    report.summary["c_emp"] = c_emp;
    report.summary["c_emp_sq"] = c_emp * c_emp;
    if (cfg.n >= 2 && cfg.k >= 2 && cfg.epsilon > 0.0 && cfg.epsilon < 1.0) {
        const double c2 = thm_main_c2_bound(cfg.n, cfg.k, cfg.epsilon);
        report.summary["c2_bound_at_epsilon"] = c2;
        report.summary["c_emp_sq_le_bound"] = c_emp * c_emp <= c2 + 1e-12;
    }
    detail::stamp_provenance(report.summary, cfg, start);
    return report;
}

/// Random unit symmetric tensors: banach iteration per sample, hard check of
/// E <= log2 d_{n,m}, and the empirical symmetric constant against the
/// closed-form bound at the proof's own epsilon = 1/(m sqrt(d-1)).
inline CensusReport run_symmetric_census(const CensusConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    detail::validate_census_common(cfg);
    if (cfg.mode != "symmetric") throw std::invalid_argument("run_symmetric_census: mode mismatch");
    if (cfg.m < 1) throw std::invalid_argument("census: m must be >= 1");

    const std::uint64_t d = d_nm(cfg.n, cfg.m);
    const double e_bound = upper_bound_E_sym(cfg.n, cfg.m);
    const int starts = cfg.starts > 0 ? cfg.starts : 16 + 4 * cfg.m;

    std::optional<EpsilonNet> net;
    if (cfg.epsilon != 0.0)
        net = build_net(cfg.n, cfg.epsilon, derive_seed(cfg.seed, detail::kNetSeedIndex),
                        cfg.net_stop_streak);

    json extras{{"mode", "symmetric"}, {"starts", starts}, {"d_nm", d}};
    if (net) extras["net"] = detail::net_provenance(*net);

    auto report = detail::heuristic_census(
        cfg, e_bound, std::nullopt, extras,
        [&](std::uint64_t seed_i, int budget_scale, json& record) {
            const auto s = random_symmetric_unit(cfg.n, cfg.m, seed_i);
            const auto est = banach_sigma(s, starts * budget_scale, cfg.iters, cfg.tol,
                                          derive_seed(seed_i, budget_scale == 1 ? 1 : 2));
            if (budget_scale == 1 && net) {
                const auto cert = sym_sigma_certified(s, *net);
                record["sigma_cert_lower"] = cert.lower;
                record["sigma_cert_upper"] = cert.upper;
                record["e_lower"] = std::max(0.0, -2.0 * std::log2(cert.upper));
                record["e_upper"] = -2.0 * std::log2(cert.lower);
            }
            return est.lower;
        });

    const double cs_emp = report.summary["sigma_lower"]["min"].get<double>();
    report.summary["cs_emp"] = cs_emp;
    report.summary["cs_emp_sq"] = cs_emp * cs_emp;
    if (cfg.n >= 2 && cfg.m >= 2) {
        const double eps_star =
            1.0 / (static_cast<double>(cfg.m) * std::sqrt(static_cast<double>(d - 1)));
        report.summary["cs_bound_epsilon"] = eps_star;
        const double cs_bound = thm_sym_c2_bound(cfg.n, cfg.m, eps_star);
        report.summary["cs_bound"] = cs_bound;
        report.summary["cs_emp_sq_le_bound"] = cs_emp * cs_emp <= cs_bound + 1e-12;
    }
    detail::stamp_provenance(report.summary, cfg, start);
    return report;
}

/// Builds a net and probes the sphere: center count vs (4/eps)^(n-1) (a hard
/// invariant), empirical covering rate, and the Monte Carlo fraction of the
/// sphere inside the ball around the first basis vector vs eps^(n-1).
inline CensusReport run_covering_experiment(const CensusConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    detail::validate_census_common(cfg);
    if (cfg.mode != "covering") throw std::invalid_argument("run_covering_experiment: mode mismatch");
    if (!(cfg.epsilon > 0.0) || cfg.epsilon >= 1.0)
        throw std::invalid_argument("census: covering mode needs 0 < epsilon < 1");

    const auto net = build_net(cfg.n, cfg.epsilon, cfg.seed, cfg.net_stop_streak);

    struct ProbeSlot {
        json record;
        bool covered = false;
        bool in_ball = false;
    };
    std::vector<ProbeSlot> slots(cfg.samples);
    detail::parallel_for(cfg.samples, cfg.workers, [&](std::uint64_t i) {
        SplitMix64 rng(derive_seed(cfg.seed, i));
        const auto w = random_unit_vector(cfg.n, rng);
        double max_overlap = 0.0;
        for (const auto& c : net.centers)
            max_overlap = std::max(max_overlap, std::norm(vec_inner(c, w)));
        ProbeSlot& slot = slots[i];
        slot.covered = max_overlap >= 1.0 - cfg.epsilon;
        slot.in_ball = std::norm(w[0]) >= 1.0 - cfg.epsilon;
        slot.record = json{{"index", i},
                           {"max_overlap", max_overlap},
                           {"covered", slot.covered},
                           {"in_ball", slot.in_ball}};
    });

    CensusReport report;
    report.sample_lines.reserve(slots.size());
    std::uint64_t covered = 0, in_ball = 0;
    for (auto& slot : slots) {
        report.sample_lines.push_back(slot.record.dump());
        covered += slot.covered ? 1 : 0;
        in_ball += slot.in_ball ? 1 : 0;
    }
    const double probes = static_cast<double>(cfg.samples);
    const double count_bound = net_count_bound(cfg.n, cfg.epsilon);
    const bool count_ok = static_cast<double>(net.centers.size()) <= count_bound;
    const double frac = static_cast<double>(in_ball) / probes;
    const double se = std::sqrt(frac * (1.0 - frac) / probes);
    const double expected = ball_fraction(cfg.n, cfg.epsilon);
    report.hard_violation = !count_ok;
    report.summary = json{{"mode", "covering"},
                          {"config", detail::experiment_config_json(cfg)},
                          {"net", detail::net_provenance(net)},
                          {"count_bound", count_bound},
                          {"count_ok", count_ok},
                          {"covering_rate", static_cast<double>(covered) / probes},
                          {"uncovered_count", cfg.samples - covered},
                          {"ball", json{{"fraction", frac},
                                        {"se", se},
                                        {"expected", expected},
                                        {"within_3se", std::abs(frac - expected) <= 3.0 * se}}},
                          {"hard_violation", report.hard_violation}};
    detail::stamp_provenance(report.summary, cfg, start);
    return report;
}

/// Monte Carlo estimate of the fraction of the unit sphere inside one
/// eps-ball, with standard error, against the exact value eps^(n-1).
inline CensusReport run_volume_experiment(const CensusConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    detail::validate_census_common(cfg);
    if (cfg.mode != "volume") throw std::invalid_argument("run_volume_experiment: mode mismatch");
    if (!(cfg.epsilon > 0.0) || cfg.epsilon > 1.0)
        throw std::invalid_argument("census: volume mode needs 0 < epsilon <= 1");

    struct ProbeSlot {
        json record;
        bool in_ball = false;
    };
    std::vector<ProbeSlot> slots(cfg.samples);
    detail::parallel_for(cfg.samples, cfg.workers, [&](std::uint64_t i) {
        SplitMix64 rng(derive_seed(cfg.seed, i));
        const auto w = random_unit_vector(cfg.n, rng);
        const double overlap = std::norm(w[0]);
        ProbeSlot& slot = slots[i];
        slot.in_ball = overlap >= 1.0 - cfg.epsilon;
        slot.record = json{{"index", i}, {"overlap", overlap}, {"in_ball", slot.in_ball}};
    });

    CensusReport report;
    report.sample_lines.reserve(slots.size());
    std::uint64_t in_ball = 0;
    for (auto& slot : slots) {
        report.sample_lines.push_back(slot.record.dump());
        in_ball += slot.in_ball ? 1 : 0;
    }
    const double probes = static_cast<double>(cfg.samples);
    const double frac = static_cast<double>(in_ball) / probes;
    const double se = std::sqrt(frac * (1.0 - frac) / probes);
    const double expected = cfg.epsilon >= 1.0 ? 1.0 : ball_fraction(cfg.n, cfg.epsilon);
    report.summary = json{{"mode", "volume"},
                          {"config", detail::experiment_config_json(cfg)},
                          {"ball", json{{"fraction", frac},
                                        {"se", se},
                                        {"expected", expected},
                                        {"within_3se", std::abs(frac - expected) <= 3.0 * se}}},
                          {"hard_violation", false}};
    detail::stamp_provenance(report.summary, cfg, start);
    return report;
}

namespace detail {

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline void csv_flatten(const json& j, const std::string& prefix, std::string& out) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items())
            csv_flatten(value, prefix.empty() ? key : prefix + "." + key, out);
        return;
    }
    const std::string value = j.is_string() ? j.get<std::string>() : j.dump();
    out += csv_escape(prefix);
    out += ',';
    out += csv_escape(value);
    out += '\n';
}

}  // namespace detail

/// Writes samples.jsonl, summary.json and summary.csv (flattened key,value
/// rows) under `dir`, creating it if needed.
inline void write_census_outputs(const CensusReport& report, const std::string& dir) {
    namespace fs = std::filesystem;
    const fs::path base(dir);
    fs::create_directories(base);

    std::ofstream jsonl(base / "samples.jsonl", std::ios::binary);
    if (!jsonl) throw std::runtime_error("census: cannot open samples.jsonl for writing");
    for (const auto& line : report.sample_lines) jsonl << line << '\n';
    if (!jsonl.good()) throw std::runtime_error("census: failed writing samples.jsonl");
    jsonl.close();

    write_json_file((base / "summary.json").string(), report.summary);

    std::string csv = "key,value\n";
    detail::csv_flatten(report.summary, "", csv);
    std::ofstream csv_out(base / "summary.csv", std::ios::binary);
    if (!csv_out) throw std::runtime_error("census: cannot open summary.csv for writing");
    csv_out << csv;
    if (!csv_out.good()) throw std::runtime_error("census: failed writing summary.csv");
}

/// Dispatches on cfg.mode and writes output files when out_dir is set.
inline CensusReport run_census(const CensusConfig& cfg) {
    CensusReport report;
    if (cfg.mode == "general") report = run_general_census(cfg);
    else if (cfg.mode == "symmetric") report = run_symmetric_census(cfg);
    else if (cfg.mode == "covering") report = run_covering_experiment(cfg);
    else if (cfg.mode == "volume") report = run_volume_experiment(cfg);
    else throw std::invalid_argument("census: unknown mode '" + cfg.mode + "'");
    if (!cfg.out_dir.empty()) write_census_outputs(report, cfg.out_dir);
    return report;
}

}  // namespace gme
