#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gme/constructions.hpp"
#include "gme/epsilon_net.hpp"
#include "gme/symmetric.hpp"
#include "gme/tensor.hpp"
#include "gme/types.hpp"

namespace gme {

using json = nlohmann::json;

namespace detail {

inline json cplx_to_json(const cplx& c) { return json::array({c.real(), c.imag()}); }

inline cplx cplx_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::invalid_argument(std::string(what) + ": complex entries must be [re, im]");
    const cplx c{j[0].get<double>(), j[1].get<double>()};
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw std::invalid_argument(std::string(what) + ": non-finite complex entry");
    return c;
}

inline json cvec_to_json(const std::vector<cplx>& v) {
    json arr = json::array();
    for (const cplx& c : v) arr.push_back(cplx_to_json(c));
    return arr;
}

inline std::vector<cplx> cvec_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw std::invalid_argument(std::string(what) + ": expected an array");
    std::vector<cplx> v;
    v.reserve(j.size());
    for (const auto& e : j) v.push_back(cplx_from_json(e, what));
    return v;
}

inline int int_field(const json& j, const char* key, const char* what) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw std::invalid_argument(std::string(what) + ": missing integer field '" + key + "'");
    return j[key].get<int>();
}

} // namespace detail

/// JSON form of a dense tensor: {"n": int, "k": int, "coeffs": [[re, im],
/// ...]} with coefficients in row-major order.
inline json tensor_to_json(const DenseTensor& t) {
    t.validate();
    return json{{"n", t.n}, {"k", t.k}, {"coeffs", detail::cvec_to_json(t.coeffs)}};
}

inline DenseTensor tensor_from_json(const json& j) {
    DenseTensor t(detail::int_field(j, "n", "tensor"), detail::int_field(j, "k", "tensor"));
    if (!j.contains("coeffs"))
        throw std::invalid_argument("tensor: missing field 'coeffs'");
    auto coeffs = detail::cvec_from_json(j["coeffs"], "tensor");
    if (coeffs.size() != t.coeffs.size())
        throw std::invalid_argument("tensor: coeffs length does not match n^k");
    t.coeffs = std::move(coeffs);
    t.validate();
    return t;
}

/// JSON form of a pure (rank-one product) tensor: {"n": int, "k": int,
/// "factors": [[[re, im], ...], ...]} listing the k factor vectors.
inline json pure_to_json(const PureTensor& p) {
    if (p.factors.empty()) throw std::invalid_argument("pure tensor: no factors");
    json factors = json::array();
    for (const auto& f : p.factors) factors.push_back(detail::cvec_to_json(f));
    return json{{"n", p.local_dim()}, {"k", p.order()}, {"factors", factors}};
}

inline PureTensor pure_from_json(const json& j) {
    const int n = detail::int_field(j, "n", "pure tensor");
    const int k = detail::int_field(j, "k", "pure tensor");
    if (n < 1 || k < 1) throw std::invalid_argument("pure tensor: need n >= 1, k >= 1");
    if (!j.contains("factors") || !j["factors"].is_array())
        throw std::invalid_argument("pure tensor: missing array field 'factors'");
    PureTensor p;
    for (const auto& f : j["factors"]) p.factors.push_back(detail::cvec_from_json(f, "pure tensor"));
    if (static_cast<int>(p.factors.size()) != k)
        throw std::invalid_argument("pure tensor: factor count does not match k");
    for (const auto& f : p.factors)
        if (static_cast<int>(f.size()) != n)
            throw std::invalid_argument("pure tensor: factor dimension does not match n");
    return p;
}

/// JSON form of a net: {"n": int, "epsilon": real, "seed": int, "centers":
/// [[[re, im], ...], ...]}. Loading re-validates the packing invariants.
inline json net_to_json(const EpsilonNet& net) {
    json centers = json::array();
    for (const auto& c : net.centers) centers.push_back(detail::cvec_to_json(c));
    return json{
        {"n", net.n}, {"epsilon", net.epsilon}, {"seed", net.seed}, {"centers", centers}};
}

inline EpsilonNet net_from_json(const json& j) {
    EpsilonNet net;
    net.n = detail::int_field(j, "n", "net");
    if (!j.contains("epsilon") || !j["epsilon"].is_number())
        throw std::invalid_argument("net: missing numeric field 'epsilon'");
    net.epsilon = j["epsilon"].get<double>();
    if (!(net.epsilon > 0.0 && net.epsilon < 1.0))
        throw std::invalid_argument("net: epsilon must be in (0,1)");
    net.packing_radius = net.epsilon / 4.0;
    if (!j.contains("seed") || !j["seed"].is_number_integer())
        throw std::invalid_argument("net: missing integer field 'seed'");
    net.seed = j["seed"].get<std::uint64_t>();
    if (!j.contains("centers") || !j["centers"].is_array())
        throw std::invalid_argument("net: missing array field 'centers'");
    for (const auto& c : j["centers"]) net.centers.push_back(detail::cvec_from_json(c, "net"));
    validate_net(net);
    return net;
}

/// JSON form of a grouping map: {"n": int, "p": int, "h": [[digit, ...],
/// ...]} with 0-based digits.
inline json grouping_to_json(const GroupingMap& g) {
    validate_grouping(g);
    return json{{"n", g.n}, {"p", g.p}, {"h", g.h}};
}

inline GroupingMap grouping_from_json(const json& j) {
    GroupingMap g;
    g.n = detail::int_field(j, "n", "grouping");
    g.p = detail::int_field(j, "p", "grouping");
    if (!j.contains("h") || !j["h"].is_array())
        throw std::invalid_argument("grouping: missing array field 'h'");
    for (const auto& row : j["h"]) {
        if (!row.is_array()) throw std::invalid_argument("grouping: h rows must be arrays");
        std::vector<int> digits;
        for (const auto& d : row) {
            if (!d.is_number_integer())
                throw std::invalid_argument("grouping: digits must be integers");
            digits.push_back(d.get<int>());
        }
        g.h.push_back(std::move(digits));
    }
    validate_grouping(g);
    return g;
}

/// JSON form of a symmetric tensor: {"n": int, "m": int, "coords": [[re,
/// im], ...], "normalization": "isometric"|"monomial"}. Monomial input
/// stores plain polynomial coefficients a_alpha; they are converted on load
/// via c_alpha = a_alpha / sqrt(multinomial(m; alpha)). Output is always
/// isometric.
inline json symmetric_to_json(const SymmetricTensor& s) {
    s.validate();
    return json{{"n", s.n},
                {"m", s.m},
                {"coords", detail::cvec_to_json(s.coords)},
                {"normalization", "isometric"}};
}

inline SymmetricTensor symmetric_from_json(const json& j) {
    SymmetricTensor s(detail::int_field(j, "n", "symmetric tensor"),
                      detail::int_field(j, "m", "symmetric tensor"));
    if (!j.contains("coords"))
        throw std::invalid_argument("symmetric tensor: missing field 'coords'");
    auto coords = detail::cvec_from_json(j["coords"], "symmetric tensor");
    if (coords.size() != s.coords.size())
        throw std::invalid_argument("symmetric tensor: coords length must be d_nm");
    std::string normalization = "isometric";
    if (j.contains("normalization")) {
        if (!j["normalization"].is_string())
            throw std::invalid_argument("symmetric tensor: normalization must be a string");
        normalization = j["normalization"].get<std::string>();
    }
    if (normalization == "monomial") {
        const auto exps = enumerate_exponents(s.n, s.m);
        for (std::size_t r = 0; r < coords.size(); ++r)
            coords[r] /= std::sqrt(static_cast<double>(multinomial(s.m, exps[r])));
    } else if (normalization != "isometric") {
        throw std::invalid_argument(
            "symmetric tensor: normalization must be 'isometric' or 'monomial'");
    }
    s.coords = std::move(coords);
    s.validate();
    return s;
}

/// Reads a whole JSON document from a file; throws on parse errors.
inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

/// Writes a JSON document with stable formatting (2-space indent, sorted
/// keys are the library default for objects, trailing newline).
inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace gme
