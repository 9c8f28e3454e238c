#pragma once

#include <complex>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qmix/algebra.hpp"
#include "qmix/bipartite.hpp"
#include "qmix/errors.hpp"
#include "qmix/matrix.hpp"
#include "qmix/mixtures.hpp"

// File formats (JSON; complex numbers as [re, im] pairs):
//
// Ensemble file:
//   { "dim": 2, "label": "optional text",
//     "states": [ { "amplitudes": [[re, im], ...], "prob": 0.5 }, ... ] }
// Amplitudes are normalized on load, so integer-valued kets like [1, 1]
// are fine.
//
// Scenario file (matrices are row-major grids of [re, im] pairs):
//   { "dims": [d1, d2], "label": "optional",
//     "h1": <d1 x d1>, "h2": <d2 x d2>, "hint": <d1*d2 x d1*d2>,
//     "h1_post": <d1 x d1, optional>,
//     "psi1": [[re, im], ...], "psi2": [[re, im], ...],
//     "t0": 0.0, "t1": 3.14, "sample_times": [ ... ascending ... ] }

namespace qmix::io {

using json = nlohmann::ordered_json;

inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string digest(std::string_view bytes) {
    std::ostringstream os;
    os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(bytes);
    return os.str();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline json parse_json(const std::string& text, const std::string& path) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

inline std::complex<double> parse_complex(const json& j, const std::string& ctx) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw parse_error(ctx + ": expected a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline std::vector<std::complex<double>> parse_amplitudes(const json& j, const std::string& ctx) {
    if (!j.is_array() || j.empty()) throw parse_error(ctx + ": expected a nonempty array");
    std::vector<std::complex<double>> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(parse_complex(j[i], ctx + "[" + std::to_string(i) + "]"));
    return out;
}

inline cmatrix parse_matrix(const json& j, std::size_t dim, const std::string& ctx) {
    if (!j.is_array() || j.size() != dim)
        throw parse_error(ctx + ": expected " + std::to_string(dim) + " rows");
    cmatrix m(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        const auto& row = j[r];
        const std::string rctx = ctx + "[" + std::to_string(r) + "]";
        if (!row.is_array() || row.size() != dim)
            throw parse_error(rctx + ": expected " + std::to_string(dim) + " entries");
        for (std::size_t c = 0; c < dim; ++c)
            m(r, c) = parse_complex(row[c], rctx + "[" + std::to_string(c) + "]");
    }
    return m;
}

/// Parses the ensemble-file document. Structural problems raise
/// parse_error with the field path; semantic problems surface as the
/// corresponding library error, with the state index in the message.
inline ensemble parse_ensemble(const json& j, const std::string& ctx = "ensemble") {
    if (!j.is_object()) throw parse_error(ctx + ": expected an object");
    if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long>() < 1)
        throw parse_error(ctx + ".dim: expected a positive integer");
    const auto dim = j["dim"].get<std::size_t>();
    if (!j.contains("states") || !j["states"].is_array())
        throw parse_error(ctx + ".states: expected an array");
    std::vector<ensemble_member<double>> members;
    members.reserve(j["states"].size());
    for (std::size_t i = 0; i < j["states"].size(); ++i) {
        const auto& s = j["states"][i];
        const std::string sctx = ctx + ".states[" + std::to_string(i) + "]";
        if (!s.is_object() || !s.contains("amplitudes") || !s.contains("prob") ||
            !s["prob"].is_number())
            throw parse_error(sctx + ": expected {\"amplitudes\": ..., \"prob\": ...}");
        auto amps = parse_amplitudes(s["amplitudes"], sctx + ".amplitudes");
        if (amps.size() != dim)
            throw dimension_mismatch(sctx + ".amplitudes: has " + std::to_string(amps.size()) +
                                     " entries, file declares dim " + std::to_string(dim));
        try {
            members.push_back({make_ket(std::move(amps)), s["prob"].get<double>()});
        } catch (const zero_vector& e) {
            throw zero_vector(sctx + ".amplitudes: " + e.what());
        }
    }
    return make_ensemble(std::move(members));
}

struct loaded_ensemble {
    ensemble data;
    std::string label;
    std::string path;
    std::string content_digest;
};

inline loaded_ensemble load_ensemble(const std::string& path) {
    const std::string text = read_file(path);
    const json j = parse_json(text, path);
    ensemble e = parse_ensemble(j, path);
    std::string label = j.contains("label") && j["label"].is_string()
                            ? j["label"].get<std::string>()
                            : std::string{};
    return {std::move(e), std::move(label), path, digest(text)};
}

inline scenario_spec parse_scenario(const json& j, const std::string& ctx = "scenario") {
    if (!j.is_object()) throw parse_error(ctx + ": expected an object");
    if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].size() != 2 ||
        !j["dims"][0].is_number_integer() || !j["dims"][1].is_number_integer())
        throw parse_error(ctx + ".dims: expected [d1, d2]");
    const auto d1 = j["dims"][0].get<std::size_t>();
    const auto d2 = j["dims"][1].get<std::size_t>();
    if (d1 < 1 || d2 < 1) throw parse_error(ctx + ".dims: dimensions must be positive");

    auto require = [&](const char* key) -> const json& {
        if (!j.contains(key)) throw parse_error(ctx + ": missing field '" + key + "'");
        return j[key];
    };
    auto make_obs = [&](const json& m, std::size_t dim, const std::string& name) {
        try {
            return observable(parse_matrix(m, dim, ctx + "." + name), name);
        } catch (const not_hermitian& e) {
            throw not_hermitian(ctx + "." + name + ": " + e.what());
        }
    };

    auto number = [&](const char* key) {
        const json& v = require(key);
        if (!v.is_number()) throw parse_error(ctx + "." + key + ": expected a number");
        return v.get<double>();
    };

    scenario_spec spec{
        make_obs(require("h1"), d1, "h1"),
        make_obs(require("h2"), d2, "h2"),
        make_obs(require("hint"), d1 * d2, "hint"),
        make_ket(parse_amplitudes(require("psi1"), ctx + ".psi1")),
        make_ket(parse_amplitudes(require("psi2"), ctx + ".psi2")),
        number("t0"),
        number("t1"),
        {},
        std::nullopt,
    };
    const json& times = require("sample_times");
    if (!times.is_array() || times.empty())
        throw parse_error(ctx + ".sample_times: expected a nonempty array");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!times[i].is_number())
            throw parse_error(ctx + ".sample_times[" + std::to_string(i) +
                              "]: expected a number");
        spec.sample_times.push_back(times[i].get<double>());
    }
    if (j.contains("h1_post")) spec.h1_after = make_obs(j["h1_post"], d1, "h1_post");
    return spec;
}

struct loaded_scenario {
    scenario_spec spec;
    std::string label;
    std::string path;
    std::string content_digest;
};

inline loaded_scenario load_scenario(const std::string& path) {
    const std::string text = read_file(path);
    const json j = parse_json(text, path);
    scenario_spec spec = parse_scenario(j, path);
    std::string label = j.contains("label") && j["label"].is_string()
                            ? j["label"].get<std::string>()
                            : std::string{};
    return {std::move(spec), std::move(label), path, digest(text)};
}

// --- serialization helpers -------------------------------------------------

inline json complex_to_json(const std::complex<double>& z) {
    return json::array({z.real(), z.imag()});
}

inline json matrix_to_json(const cmatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json ket_to_json(const ket& k) {
    json out = json::array();
    for (std::size_t i = 0; i < k.dim(); ++i) out.push_back(complex_to_json(k[i]));
    return out;
}

inline json ensemble_to_json(const ensemble& e) {
    json states = json::array();
    for (const auto& m : e.members())
        states.push_back(json{{"amplitudes", ket_to_json(m.state)}, {"prob", m.prob}});
    return json{{"dim", e.dim()}, {"states", std::move(states)}};
}

}  // namespace qmix::io
