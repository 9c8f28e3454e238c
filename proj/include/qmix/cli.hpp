#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qmix/dynamics.hpp"
#include "qmix/io.hpp"
#include "qmix/moments.hpp"
#include "qmix/sampling.hpp"
#include "qmix/version.hpp"

// Report-producing command layer behind the qmix executable. Every command
// returns the machine-readable report as ordered JSON; reports are built
// from the inputs only (no clocks, no environment), so identical
// invocations serialize byte-identically.

namespace qmix::cli {

using json = io::json;

struct options {
    bool machine = false;                 // --json
    double tol = default_witness_tol;     // --tol
    std::string dump_csv;                 // --dump-csv <path>, empty = off
    std::string command_echo;
};

inline json tolerances_json(double witness_tol) {
    return json{{"norm", tol::norm},         {"herm", tol::herm}, {"eig", tol::eig},
                {"prob", tol::prob},         {"scenario", tol::scenario},
                {"witness", witness_tol}};
}

inline json envelope(const std::string& kind, const options& opts) {
    return json{{"report", kind},
                {"command", opts.command_echo},
                {"library", json{{"name", std::string(library_name)},
                                 {"version", std::string(library_version)}}},
                {"tolerances", tolerances_json(opts.tol)}};
}

inline json input_entry(const std::string& path, const std::string& label,
                        const std::string& digest) {
    json j{{"path", path}, {"digest", digest}};
    if (!label.empty()) j["label"] = label;
    return j;
}

/// Observable spec syntax: sx | sy | sz | dir:<nx>,<ny>,<nz>. Direction
/// components are normalized, so any nonzero vector is accepted.
inline observable parse_observable_spec(const std::string& spec) {
    if (spec == "sx") return spin_x();
    if (spec == "sy") return spin_y();
    if (spec == "sz") return spin_z();
    if (spec.rfind("dir:", 0) == 0) {
        std::istringstream in(spec.substr(4));
        double n[3];
        char sep = ',';
        for (int i = 0; i < 3; ++i) {
            if (i > 0 && (!(in >> sep) || sep != ',')) sep = '!';
            if (sep == '!' || !(in >> n[i]))
                throw parse_error("observable spec '" + spec +
                                  "': expected dir:<nx>,<ny>,<nz>");
        }
        return spin_component(spin_direction::normalized(n[0], n[1], n[2]));
    }
    throw parse_error("observable spec '" + spec + "': expected sx|sy|sz|dir:<nx>,<ny>,<nz>");
}

inline json witness_to_json(const moment_witness<double>& w) {
    return json{{"observable", w.observable}, {"order", w.order},  {"value_a", w.value_a},
                {"value_b", w.value_b},       {"gap", w.gap}};
}

inline json profile_to_json(const std::vector<std::pair<unsigned, double>>& profile) {
    json out = json::array();
    for (const auto& [n, mu] : profile) out.push_back(json{{"n", n}, {"value", mu}});
    return out;
}

namespace detail {

inline std::ofstream open_csv(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error(path + ": cannot write CSV file");
    out << std::setprecision(17);
    return out;
}

}  // namespace detail

/// The canned two-mixtures demonstration: both ensembles share the density
/// operator I/2 (and hence the entropy ln 2), yet the even moments of the
/// s_x expectation-value variable tell them apart.
inline json run_zeh_demo(const options& opts) {
    const auto m1 = zeh_mixture_1();
    const auto m2 = zeh_mixture_2();
    const auto rho1 = density_of(m1);
    const auto rho2 = density_of(m2);
    const std::vector<observable> axes{spin_x(), spin_y(), spin_z()};
    constexpr unsigned max_order = 6;
    const auto witness = distinguish<double>(m1, m2, axes, max_order, opts.tol);

    const auto sx = spin_x();
    const auto sz = spin_z();
    const auto prof_x1 = moment_profile(m1, sx, max_order);
    const auto prof_x2 = moment_profile(m2, sx, max_order);
    const auto prof_z1 = moment_profile(m1, sz, max_order);
    const auto prof_z2 = moment_profile(m2, sz, max_order);

    json j = envelope("zeh-demo", opts);
    j["results"] = json{
        {"mixture_1", io::ensemble_to_json(m1)},
        {"mixture_2", io::ensemble_to_json(m2)},
        {"density_1", io::matrix_to_json(rho1.matrix())},
        {"density_2", io::matrix_to_json(rho2.matrix())},
        {"density_equal", density_equal(m1, m2, opts.tol)},
        {"density_gap", max_abs_diff(rho1.matrix(), rho2.matrix())},
        {"moment_profiles",
         json{{"s_x", json{{"mixture_1", profile_to_json(prof_x1)},
                           {"mixture_2", profile_to_json(prof_x2)}}},
              {"s_z", json{{"mixture_1", profile_to_json(prof_z1)},
                           {"mixture_2", profile_to_json(prof_z2)}}}}},
        {"entropy_nats", json{{"mixture_1", von_neumann_entropy(rho1)},
                              {"mixture_2", von_neumann_entropy(rho2)}}},
        {"note", "equal entropy, distinct ensembles: the density operator does not "
                 "determine the member collection"},
    };
    j["witnesses"] = json::array();
    if (witness) j["witnesses"].push_back(witness_to_json(*witness));

    if (!opts.dump_csv.empty()) {
        auto csv = detail::open_csv(opts.dump_csv);
        csv << "observable,order,mixture_1,mixture_2\n";
        for (unsigned n = 0; n < max_order; ++n)
            csv << "s_x," << prof_x1[n].first << "," << prof_x1[n].second << ","
                << prof_x2[n].second << "\n";
        for (unsigned n = 0; n < max_order; ++n)
            csv << "s_z," << prof_z1[n].first << "," << prof_z1[n].second << ","
                << prof_z2[n].second << "\n";
    }
    return j;
}

inline json run_moments(const std::string& path, const std::string& obs_spec,
                        unsigned max_order, const options& opts) {
    const auto loaded = io::load_ensemble(path);
    const auto obs = parse_observable_spec(obs_spec);
    const auto profile = moment_profile(loaded.data, obs, max_order);
    const auto rho = density_of(loaded.data);

    json j = envelope("moments", opts);
    j["inputs"] = json{{"ensemble", input_entry(loaded.path, loaded.label,
                                                loaded.content_digest)}};
    j["results"] = json{
        {"observable", obs.label()},
        {"profile", profile_to_json(profile)},
        {"central_variance", central_moment(loaded.data, obs, 2)},
        {"trace_mean", mean_value(rho, obs)},
    };
    if (!opts.dump_csv.empty()) {
        auto csv = detail::open_csv(opts.dump_csv);
        csv << "order,moment\n";
        for (const auto& [n, mu] : profile) csv << n << "," << mu << "\n";
    }
    return j;
}

inline json run_distinguish(const std::string& path_a, const std::string& path_b,
                            std::size_t grid, unsigned max_order, const options& opts) {
    const auto a = io::load_ensemble(path_a);
    const auto b = io::load_ensemble(path_b);
    std::vector<observable> obs;
    for (const auto& d : axis_directions()) obs.push_back(spin_component(d));
    for (const auto& d : fibonacci_directions(grid)) obs.push_back(spin_component(d));
    const auto witness = distinguish<double>(a.data, b.data, obs, max_order, opts.tol);

    json j = envelope("distinguish", opts);
    j["inputs"] = json{{"ensemble_a", input_entry(a.path, a.label, a.content_digest)},
                       {"ensemble_b", input_entry(b.path, b.label, b.content_digest)}};
    j["results"] = json{
        {"observables_scanned", obs.size()},
        {"max_order", max_order},
        {"density_equal", density_equal(a.data, b.data, opts.tol)},
        {"density_gap",
         max_abs_diff(density_of(a.data).matrix(), density_of(b.data).matrix())},
        {"witness_found", witness.has_value()},
    };
    j["witnesses"] = json::array();
    if (witness) j["witnesses"].push_back(witness_to_json(*witness));

    if (!opts.dump_csv.empty()) {
        auto csv = detail::open_csv(opts.dump_csv);
        csv << "observable,order,moment_a,moment_b,gap\n";
        for (const auto& o : obs) {
            const auto pa = moment_profile(a.data, o, max_order);
            const auto pb = moment_profile(b.data, o, max_order);
            for (unsigned n = 0; n < max_order; ++n)
                csv << o.label() << "," << pa[n].first << "," << pa[n].second << ","
                    << pb[n].second << "," << std::abs(pa[n].second - pb[n].second) << "\n";
        }
    }
    return j;
}

inline json run_entropy(const std::string& path, const options& opts) {
    const auto loaded = io::load_ensemble(path);
    const auto rho = density_of(loaded.data);
    const auto eig = hermitian_eigen(rho.matrix());

    json j = envelope("entropy", opts);
    j["inputs"] = json{{"ensemble", input_entry(loaded.path, loaded.label,
                                                loaded.content_digest)}};
    j["results"] = json{
        {"entropy_nats", von_neumann_entropy(rho, entropy_base::nats)},
        {"entropy_bits", von_neumann_entropy(rho, entropy_base::bits)},
        {"purity", purity(rho)},
        {"eigenvalues", json(eig.values)},
        {"density", io::matrix_to_json(rho.matrix())},
    };
    if (!opts.dump_csv.empty()) {
        auto csv = detail::open_csv(opts.dump_csv);
        csv << "quantity,value\n";
        csv << "entropy_nats," << von_neumann_entropy(rho, entropy_base::nats) << "\n";
        csv << "entropy_bits," << von_neumann_entropy(rho, entropy_base::bits) << "\n";
        csv << "purity," << purity(rho) << "\n";
    }
    return j;
}

inline json run_simulate(const std::string& path, const std::string& obs_spec, unsigned order,
                         std::uint64_t seed, std::size_t n_outer, std::size_t m_inner,
                         const options& opts) {
    const auto loaded = io::load_ensemble(path);
    const auto obs = parse_observable_spec(obs_spec);
    const sampler_config cfg{seed, n_outer, m_inner};
    const auto est = estimate_moment(loaded.data, obs, order, cfg);
    const double closed = moment(loaded.data, obs, order);

    json j = envelope("simulate", opts);
    j["inputs"] = json{{"ensemble", input_entry(loaded.path, loaded.label,
                                                loaded.content_digest)}};
    j["rng"] = json{{"algorithm", std::string(splitmix64::algorithm)},
                    {"seed", seed},
                    {"n_outer", n_outer},
                    {"m_inner", m_inner}};
    j["results"] = json{
        {"observable", obs.label()}, {"order", order},
        {"estimate", est.value},     {"std_error", est.std_error},
        {"closed_form", closed},     {"abs_error", std::abs(est.value - closed)},
    };
    if (!opts.dump_csv.empty()) {
        auto csv = detail::open_csv(opts.dump_csv);
        csv << "order,estimate,std_error,closed_form\n";
        csv << order << "," << est.value << "," << est.std_error << "," << closed << "\n";
    }
    return j;
}

inline json run_landau_feynman(const std::string& path, const options& opts) {
    const auto loaded = io::load_scenario(path);
    const auto trajectory = run_scenario(loaded.spec);

    bool all_ok = true;
    json points = json::array();
    for (const auto& p : trajectory) {
        all_ok = all_ok && p.lvn_ok;
        json e{{"t", p.t},
               {"purity", p.purity},
               {"entropy_nats", p.entropy},
               {"global_purity", p.global_purity},
               {"lvn_gap", p.lvn_gap ? json(*p.lvn_gap) : json(nullptr)},
               {"lvn_ok", p.lvn_ok},
               {"rho1", io::matrix_to_json(p.rho1.matrix())}};
        points.push_back(std::move(e));
    }

    json j = envelope("landau-feynman", opts);
    j["inputs"] = json{{"scenario", input_entry(loaded.path, loaded.label,
                                                loaded.content_digest)}};
    j["results"] = json{
        {"subsystem_1_state", "reduced operator (improper mixture)"},
        {"coupling_window", json::array({loaded.spec.t0, loaded.spec.t1})},
        {"lvn_all_ok", all_ok},
        {"trajectory", std::move(points)},
    };
    if (!opts.dump_csv.empty()) {
        auto csv = detail::open_csv(opts.dump_csv);
        csv << "t,purity,entropy_nats,global_purity,lvn_gap\n";
        for (const auto& p : trajectory) {
            csv << p.t << "," << p.purity << "," << p.entropy << "," << p.global_purity << ",";
            if (p.lvn_gap) csv << *p.lvn_gap;
            csv << "\n";
        }
    }
    return j;
}

// --- human-readable rendering ----------------------------------------------

namespace detail {

inline bool is_complex_pair(const json& j) {
    return j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number();
}

inline bool is_complex_matrix(const json& j) {
    if (!j.is_array() || j.empty()) return false;
    for (const auto& row : j) {
        if (!row.is_array() || row.empty()) return false;
        for (const auto& cell : row)
            if (!is_complex_pair(cell)) return false;
    }
    return true;
}

inline std::string format_number(const json& j) {
    std::ostringstream os;
    os << std::setprecision(12);
    if (j.is_number_float()) os << j.get<double>();
    else os << j.dump();
    return os.str();
}

inline std::string format_complex(const json& j) {
    const double re = j[0].get<double>();
    const double im = j[1].get<double>();
    std::ostringstream os;
    os << std::setprecision(6) << re;
    if (im != 0.0) os << (im < 0 ? "-" : "+") << std::abs(im) << "i";
    return os.str();
}

inline std::string format_scalar(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
    if (j.is_null()) return "-";
    if (is_complex_pair(j)) return format_complex(j);
    return format_number(j);
}

inline void render_value(const std::string& key, const json& value, int indent,
                         std::ostream& out);

inline void render_table(const json& rows, int indent, std::ostream& out) {
    const std::string pad(indent, ' ');
    std::vector<std::string> keys;
    for (const auto& [k, v] : rows[0].items()) keys.push_back(k);
    std::vector<std::vector<std::string>> cells;
    cells.push_back(keys);
    for (const auto& row : rows) {
        std::vector<std::string> line;
        for (const auto& k : keys)
            line.push_back(row.contains(k) ? format_scalar(row[k]) : "-");
        cells.push_back(std::move(line));
    }
    std::vector<std::size_t> width(keys.size(), 0);
    for (const auto& line : cells)
        for (std::size_t c = 0; c < line.size(); ++c)
            width[c] = std::max(width[c], line[c].size());
    for (std::size_t r = 0; r < cells.size(); ++r) {
        out << pad;
        for (std::size_t c = 0; c < cells[r].size(); ++c)
            out << std::left << std::setw(static_cast<int>(width[c]) + 2) << cells[r][c];
        out << "\n";
    }
}

inline void render_value(const std::string& key, const json& value, int indent,
                         std::ostream& out) {
    const std::string pad(indent, ' ');
    if (value.is_object()) {
        out << pad << key << ":\n";
        for (const auto& [k, v] : value.items()) render_value(k, v, indent + 2, out);
        return;
    }
    if (value.is_array()) {
        if (is_complex_matrix(value)) {
            out << pad << key << ":\n";
            for (const auto& row : value) {
                out << pad << "  [";
                for (std::size_t c = 0; c < row.size(); ++c)
                    out << (c ? ", " : " ") << format_complex(row[c]);
                out << " ]\n";
            }
            return;
        }
        if (!value.empty() && value[0].is_object()) {
            bool tabular = true;
            for (const auto& row : value)
                if (!row.is_object()) tabular = false;
            if (tabular) {
                out << pad << key << ":\n";
                render_table(value, indent + 2, out);
                return;
            }
        }
        out << pad << key << ": [";
        for (std::size_t i = 0; i < value.size(); ++i)
            out << (i ? ", " : "") << format_scalar(value[i]);
        out << "]\n";
        return;
    }
    out << pad << key << ": " << format_scalar(value) << "\n";
}

}  // namespace detail

inline std::string render_human(const json& report) {
    std::ostringstream out;
    for (const auto& [k, v] : report.items()) detail::render_value(k, v, 0, out);
    return out.str();
}

}  // namespace qmix::cli
