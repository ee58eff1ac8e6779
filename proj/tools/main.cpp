// Command-line front end: net construction/checking, heuristic + certified
// spectral bounds for dense and symmetric tensors, determinant-tensor
// constructions, closed-form bound evaluation, and the Monte Carlo census.
// Every subcommand emits JSON (stdout by default, --out to a file).

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include "gme/bounds.hpp"
#include "gme/census.hpp"
#include "gme/constructions.hpp"
#include "gme/epsilon_net.hpp"
#include "gme/io.hpp"
#include "gme/spectral.hpp"
#include "gme/symmetric.hpp"
#include "gme/tensor.hpp"

namespace {

void emit(const gme::json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::printf("%s\n", j.dump(2).c_str());
    } else {
        gme::write_json_file(out_path, j);
    }
}

/// Intersects two valid enclosures of the same sigma, keeping the metadata
/// (witness, method labels) of whichever side supplies each endpoint.
gme::SigmaInterval combine(const gme::SigmaInterval& a, const gme::SigmaInterval& b) {
    const gme::SigmaInterval& lo = a.lower >= b.lower ? a : b;
    const gme::SigmaInterval& up = a.upper <= b.upper ? a : b;
    gme::SigmaInterval r;
    r.lower = lo.lower;
    r.witness = lo.witness;
    r.lower_method = lo.lower_method;
    r.upper = up.upper;
    r.upper_method = up.upper_method;
    return r;
}

struct HeuristicOpts {
    int starts = 0;
    int iters = 500;
    double tol = 1e-12;
    std::uint64_t seed = 0;
};

void add_heuristic_opts(CLI::App* cmd, HeuristicOpts& opts) {
    cmd->add_option("--starts", opts.starts, "random starts (0 = scale with order)");
    cmd->add_option("--iters", opts.iters, "iteration cap per start");
    cmd->add_option("--tol", opts.tol, "objective-gain stopping tolerance");
    cmd->add_option("--seed", opts.seed, "RNG seed");
}

gme::json interval_json(const gme::SigmaInterval& sigma, double e_lower, double e_upper,
                        double f_lower, double f_upper) {
    return gme::json{{"sigma_lower", sigma.lower},
                     {"sigma_upper", sigma.upper},
                     {"E_lower", e_lower},
                     {"E_upper", e_upper},
                     {"F_lower", f_lower},
                     {"F_upper", f_upper},
                     {"lower_method", sigma.lower_method},
                     {"upper_method", sigma.upper_method},
                     {"witness", gme::pure_to_json(sigma.witness)}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geometric measure of entanglement toolkit"};
    app.require_subcommand(1);
    int rc = 0;

    // ---- net build / net check ------------------------------------------
    auto* net_cmd = app.add_subcommand("net", "epsilon-net construction and checking");
    net_cmd->require_subcommand(1);

    struct {
        int n = 2;
        double epsilon = 0.5;
        std::uint64_t seed = 0, stop_streak = 0;
        std::string out;
    } nb;
    auto* net_build = net_cmd->add_subcommand("build", "greedily pack an epsilon-net");
    net_build->add_option("--n", nb.n, "ambient dimension")->required();
    net_build->add_option("--epsilon", nb.epsilon, "ball parameter in (0,1)")->required();
    net_build->add_option("--seed", nb.seed, "RNG seed");
    net_build->add_option("--stop-streak", nb.stop_streak,
                          "consecutive rejections before stopping (0 = default)");
    net_build->add_option("--out", nb.out, "output net file");
    net_build->callback([&] {
        emit(gme::net_to_json(gme::build_net(nb.n, nb.epsilon, nb.seed, nb.stop_streak)), nb.out);
    });

    struct {
        std::string net_file, out;
        std::uint64_t probes = 10000, seed = 0;
    } nc;
    auto* net_check = net_cmd->add_subcommand("check", "validate a net and probe its coverage");
    net_check->add_option("--net-file", nc.net_file, "net file to check")->required();
    net_check->add_option("--probes", nc.probes, "number of random probes");
    net_check->add_option("--seed", nc.seed, "probe RNG seed");
    net_check->add_option("--out", nc.out, "output report file");
    net_check->callback([&] {
        const auto net = gme::net_from_json(gme::read_json_file(nc.net_file));
        const double bound = gme::net_count_bound(net.n, net.epsilon);
        const bool count_ok = static_cast<double>(net.centers.size()) <= bound;
        const double rate = gme::covering_rate(net, nc.probes, nc.seed);
        emit(gme::json{{"n", net.n},
                       {"epsilon", net.epsilon},
                       {"centers", net.centers.size()},
                       {"count_bound", bound},
                       {"count_ok", count_ok},
                       {"probes", nc.probes},
                       {"covering_rate", rate}},
             nc.out);
        if (!count_ok) rc = 3;
    });

    // ---- sigma ------------------------------------------------------------
    struct {
        std::string tensor_file, net_file, out;
        HeuristicOpts h;
    } sg;
    auto* sigma_cmd = app.add_subcommand("sigma", "spectral norm and entanglement of a tensor");
    sigma_cmd->add_option("--tensor-file", sg.tensor_file, "dense tensor file")->required();
    sigma_cmd->add_option("--net-file", sg.net_file, "net file for a certified interval");
    add_heuristic_opts(sigma_cmd, sg.h);
    sigma_cmd->add_option("--out", sg.out, "output report file");
    sigma_cmd->callback([&] {
        auto t = gme::tensor_from_json(gme::read_json_file(sg.tensor_file));
        const double input_norm = gme::norm(t);
        if (!(input_norm > 0.0)) throw std::invalid_argument("sigma: zero tensor");
        const bool rescaled = std::abs(input_norm - 1.0) > 1e-12;
        if (rescaled)
            for (auto& c : t.coeffs) c /= input_norm;

        auto interval = gme::hopm(t, sg.h.starts, sg.h.iters, sg.h.tol, sg.h.seed);
        if (!sg.net_file.empty()) {
            const auto net = gme::net_from_json(gme::read_json_file(sg.net_file));
            interval = combine(interval, gme::sigma_certified(t, net));
        }
        const auto rep = gme::entanglement_report(t, interval);
        auto j = interval_json(rep.sigma, rep.E_lower, rep.E_upper, rep.F_lower, rep.F_upper);
        j["nuclear_lower"] = rep.nuclear_lower;
        j["nuclear_upper"] = rep.nuclear_upper;
        j["input_norm"] = input_norm;
        j["rescaled"] = rescaled;
        emit(j, sg.out);
    });

    // ---- det-tensor / tnp / witness ----------------------------------------
    struct {
        int d = 2;
        bool unsigned_variant = false, normalize = false;
        std::string out;
    } dt;
    auto* det_cmd = app.add_subcommand("det-tensor", "order-d determinant tensor");
    det_cmd->add_option("--d", dt.d, "dimension and order")->required();
    det_cmd->add_flag("--unsigned", dt.unsigned_variant, "drop the permutation signs");
    det_cmd->add_flag("--normalize", dt.normalize, "scale to unit norm");
    det_cmd->add_option("--out", dt.out, "output tensor file");
    det_cmd->callback(
        [&] { emit(gme::tensor_to_json(gme::det_tensor(dt.d, !dt.unsigned_variant, dt.normalize)), dt.out); });

    struct {
        int n = 2, p = 1;
        std::string out;
    } tp;
    auto* tnp_cmd = app.add_subcommand("tnp", "regrouped determinant tensor of shape n^(p n^p)");
    tnp_cmd->add_option("--n", tp.n, "local dimension")->required();
    tnp_cmd->add_option("--p", tp.p, "grouping exponent")->required();
    tnp_cmd->add_option("--out", tp.out, "output tensor file");
    tnp_cmd->callback([&] { emit(gme::tensor_to_json(gme::t_np(tp.n, tp.p)), tp.out); });

    struct {
        int n = 2, p = 1;
        std::string h_file, out;
    } wt;
    auto* wit_cmd = app.add_subcommand("witness", "product witness attaining the exact sigma");
    wit_cmd->add_option("--n", wt.n, "local dimension")->required();
    wit_cmd->add_option("--p", wt.p, "grouping exponent")->required();
    wit_cmd->add_option("--h-file", wt.h_file, "grouping map file (default: digit expansion)");
    wit_cmd->add_option("--out", wt.out, "output pure-tensor file");
    wit_cmd->callback([&] {
        gme::GroupingMap g = wt.h_file.empty()
                                 ? gme::default_grouping(wt.n, wt.p)
                                 : gme::grouping_from_json(gme::read_json_file(wt.h_file));
        if (g.n != wt.n || g.p != wt.p)
            throw std::invalid_argument("witness: grouping file does not match --n/--p");
        emit(gme::pure_to_json(gme::witness_u(g)), wt.out);
    });

    // ---- sym sigma ----------------------------------------------------------
    auto* sym_cmd = app.add_subcommand("sym", "symmetric-tensor operations");
    sym_cmd->require_subcommand(1);
    struct {
        std::string file, net_file, out;
        HeuristicOpts h;
    } ss;
    auto* sym_sigma_cmd = sym_cmd->add_subcommand("sigma", "symmetric spectral norm via Banach's theorem");
    sym_sigma_cmd->add_option("--file", ss.file, "symmetric tensor file")->required();
    sym_sigma_cmd->add_option("--net-file", ss.net_file, "net file for a certified interval");
    add_heuristic_opts(sym_sigma_cmd, ss.h);
    sym_sigma_cmd->add_option("--out", ss.out, "output report file");
    sym_sigma_cmd->callback([&] {
        auto s = gme::symmetric_from_json(gme::read_json_file(ss.file));
        const double input_norm = gme::vec_norm(s.coords);
        if (!(input_norm > 0.0)) throw std::invalid_argument("sym sigma: zero tensor");
        const bool rescaled = std::abs(input_norm - 1.0) > 1e-12;
        if (rescaled)
            for (auto& c : s.coords) c /= input_norm;

        auto interval = gme::banach_sigma(s, ss.h.starts, ss.h.iters, ss.h.tol, ss.h.seed);
        if (!ss.net_file.empty()) {
            const auto net = gme::net_from_json(gme::read_json_file(ss.net_file));
            interval = combine(interval, gme::sym_sigma_certified(s, net));
        }
        // Nuclear bounds work on the dense embedding, whose l1 norm is
        // sum over patterns of sqrt(multinomial) * |coord|.
        double l1 = 0.0;
        const auto exps = gme::enumerate_exponents(s.n, s.m);
        for (std::size_t i = 0; i < exps.size(); ++i)
            l1 += std::sqrt(static_cast<double>(gme::multinomial(s.m, exps[i]))) *
                  std::abs(s.coords[i]);
        const double e_lower = std::max(0.0, -2.0 * std::log2(interval.upper));
        const double e_upper = -2.0 * std::log2(interval.lower);
        auto j = interval_json(interval, e_lower, e_upper,
                               2.0 * std::log2(1.0 / interval.upper), 2.0 * std::log2(l1));
        j["nuclear_lower"] = 1.0 / interval.upper;
        j["nuclear_upper"] = l1;
        j["n"] = s.n;
        j["m"] = s.m;
        j["d_nm"] = gme::d_nm(s.n, s.m);
        j["input_norm"] = input_norm;
        j["rescaled"] = rescaled;
        emit(j, ss.out);
    });

    // ---- bounds ---------------------------------------------------------------
    struct {
        std::string which, chain, out;
        int n = 2, k = 2, m = 2;
        double epsilon = 0.5;
    } bd;
    auto* bounds_cmd = app.add_subcommand("bounds", "closed-form bounds and proof-chain audits");
    bounds_cmd
        ->add_option("--which", bd.which,
                     "one of: thm-main, cor-main, fraction, thm-sym, sym-main, sym-qubit, chains")
        ->required();
    bounds_cmd->add_option("--n", bd.n, "ambient dimension");
    bounds_cmd->add_option("--k", bd.k, "tensor order");
    bounds_cmd->add_option("--m", bd.m, "symmetric degree");
    bounds_cmd->add_option("--epsilon", bd.epsilon, "net parameter");
    bounds_cmd->add_option("--chain", bd.chain, "chain name for --which chains: cor-main, fraction, sym-main");
    bounds_cmd->add_option("--out", bd.out, "output report file");
    bounds_cmd->callback([&] {
        gme::json j{{"which", bd.which}};
        if (bd.which == "thm-main") {
            j["params"] = {{"n", bd.n}, {"k", bd.k}, {"epsilon", bd.epsilon}};
            j["value"] = gme::thm_main_c2_bound(bd.n, bd.k, bd.epsilon);
        } else if (bd.which == "cor-main") {
            j["params"] = {{"n", bd.n}, {"k", bd.k}};
            j["value"] = gme::cor_main_lower(bd.n, bd.k);
            j["valid"] = gme::cor_main_valid(bd.k);
        } else if (bd.which == "fraction") {
            j["params"] = {{"k", bd.k}};
            j["value"] = gme::fraction_threshold(bd.k);
            j["valid"] = gme::fraction_valid(bd.k);
        } else if (bd.which == "thm-sym") {
            j["params"] = {{"n", bd.n}, {"m", bd.m}, {"epsilon", bd.epsilon}};
            j["value"] = gme::thm_sym_c2_bound(bd.n, bd.m, bd.epsilon);
        } else if (bd.which == "sym-main") {
            j["params"] = {{"n", bd.n}, {"m", bd.m}};
            j["value"] = gme::sym_main_lower(bd.n, bd.m);
            j["valid"] = gme::sym_main_probe(bd.n, bd.m);
            j["m_star"] = gme::sym_main_m_star(bd.n);
        } else if (bd.which == "sym-qubit") {
            j["params"] = {{"m", bd.m}};
            j["value"] = gme::sym_qubit_lower(bd.m);
        } else if (bd.which == "chains") {
            std::string name = bd.chain;
            for (auto& c : name)
                if (c == '-') c = '_';
            const int k_or_m = name == "sym_main" ? bd.m : bd.k;
            const auto report = gme::verify_proof_chain(name, bd.n, k_or_m);
            j["chain"] = report.which;
            j["params"] = {{"n", bd.n}, {"k_or_m", k_or_m}};
            j["valid_range"] = report.valid_range;
            j["all_hold"] = report.all_hold;
            auto steps = gme::json::array();
            for (const auto& s : report.steps)
                steps.push_back(gme::json{{"name", s.name},
                                          {"lhs", s.lhs},
                                          {"rhs", s.rhs},
                                          {"relation", s.geq ? ">=" : "<="},
                                          {"holds", s.holds}});
            j["steps"] = steps;
        } else {
            throw CLI::ValidationError("--which", "unknown bound '" + bd.which + "'");
        }
        emit(j, bd.out);
    });

    // ---- census ------------------------------------------------------------------
    struct {
        gme::CensusConfig defaults;
        std::string config_file;
        std::string mode = "general", out_dir;
        int n = 2, k = 2, m = 2, starts = 0, iters = 500, workers = 1;
        std::uint64_t samples = 100, seed = 0, stop_streak = 0;
        double tol = 1e-12, epsilon = 0.0;
    } cs;
    auto* census_cmd = app.add_subcommand("census", "Monte Carlo experiments vs the bounds");
    auto* o_mode = census_cmd->add_option("--mode", cs.mode, "general, symmetric, covering or volume");
    auto* o_n = census_cmd->add_option("--n", cs.n, "ambient dimension");
    auto* o_k = census_cmd->add_option("--k", cs.k, "tensor order (general mode)");
    auto* o_m = census_cmd->add_option("--m", cs.m, "symmetric degree (symmetric mode)");
    auto* o_samples = census_cmd->add_option("--samples", cs.samples, "sample / probe count");
    auto* o_seed = census_cmd->add_option("--seed", cs.seed, "master seed");
    auto* o_starts = census_cmd->add_option("--starts", cs.starts, "heuristic starts per sample (0 = default)");
    auto* o_iters = census_cmd->add_option("--iters", cs.iters, "heuristic iteration cap");
    auto* o_tol = census_cmd->add_option("--tol", cs.tol, "heuristic stopping tolerance");
    auto* o_eps = census_cmd->add_option("--epsilon", cs.epsilon, "net / ball parameter");
    auto* o_streak = census_cmd->add_option("--net-stop-streak", cs.stop_streak, "net rejection streak");
    auto* o_workers = census_cmd->add_option("--workers", cs.workers, "worker threads");
    auto* o_out = census_cmd->add_option("--out", cs.out_dir, "output directory");
    census_cmd->add_option("--config", cs.config_file, "JSON config file (flags override it)");
    census_cmd->callback([&] {
        gme::CensusConfig cfg;
        if (!cs.config_file.empty())
            cfg = gme::census_config_from_json(gme::read_json_file(cs.config_file), cfg);
        if (o_mode->count()) cfg.mode = cs.mode;
        if (o_n->count()) cfg.n = cs.n;
        if (o_k->count()) cfg.k = cs.k;
        if (o_m->count()) cfg.m = cs.m;
        if (o_samples->count()) cfg.samples = cs.samples;
        if (o_seed->count()) cfg.seed = cs.seed;
        if (o_starts->count()) cfg.starts = cs.starts;
        if (o_iters->count()) cfg.iters = cs.iters;
        if (o_tol->count()) cfg.tol = cs.tol;
        if (o_eps->count()) cfg.epsilon = cs.epsilon;
        if (o_streak->count()) cfg.net_stop_streak = cs.stop_streak;
        if (o_workers->count()) cfg.workers = cs.workers;
        if (o_out->count()) cfg.out_dir = cs.out_dir;
        const auto report = gme::run_census(cfg);
        std::printf("%s\n", report.summary.dump(2).c_str());
        if (report.hard_violation) rc = 3;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "gme: %s\n", e.what());
        return 2;
    }
    return rc;
}
