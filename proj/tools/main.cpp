#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qmix/cli.hpp"
#include "qmix/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"finite-dimensional quantum statistical mixtures toolkit"};
    app.set_version_flag("--version", std::string(qmix::library_version));
    app.require_subcommand(1);

    qmix::cli::options opts;
    app.add_flag("--json", opts.machine, "emit the machine-readable JSON report");
    app.add_option("--tol", opts.tol, "gap tolerance for witness and equality checks")
        ->capture_default_str();
    app.add_option("--dump-csv", opts.dump_csv, "also write the report's series as CSV");

    std::string file_a, file_b, scenario_file;
    std::string obs_spec = "sx";
    unsigned max_order = 6;
    unsigned order = 2;
    std::size_t grid = 64;
    std::uint64_t seed = 0;
    std::size_t n_outer = 10000, m_inner = 10000;

    auto* zeh = app.add_subcommand(
        "zeh-demo", "two distinct spin-1/2 mixtures with one density operator");
    zeh->fallthrough();

    auto* moments = app.add_subcommand("moments", "moment profile of an ensemble file");
    moments->fallthrough();
    moments->add_option("file", file_a, "ensemble JSON file")->required();
    moments->add_option("-o,--observable", obs_spec, "sx|sy|sz|dir:<nx>,<ny>,<nz>")
        ->capture_default_str();
    moments->add_option("-n,--max-order", max_order, "highest moment order")
        ->capture_default_str();

    auto* dist = app.add_subcommand(
        "distinguish", "search for a moment witness separating two ensemble files");
    dist->fallthrough();
    dist->add_option("file_a", file_a, "first ensemble JSON file")->required();
    dist->add_option("file_b", file_b, "second ensemble JSON file")->required();
    dist->add_option("-g,--grid", grid, "Fibonacci-sphere directions scanned after the axes")
        ->capture_default_str();
    dist->add_option("-n,--max-order", max_order, "highest moment order")
        ->capture_default_str();

    auto* entropy = app.add_subcommand("entropy", "von Neumann entropy of an ensemble file");
    entropy->fallthrough();
    entropy->add_option("file", file_a, "ensemble JSON file")->required();

    auto* simulate = app.add_subcommand(
        "simulate", "Monte-Carlo moment estimate (preparation draws + Born-rule shots)");
    simulate->fallthrough();
    simulate->add_option("file", file_a, "ensemble JSON file")->required();
    simulate->add_option("-o,--observable", obs_spec, "sx|sy|sz|dir:<nx>,<ny>,<nz>")
        ->capture_default_str();
    simulate->add_option("-n,--order", order, "moment order to estimate")
        ->capture_default_str();
    simulate->add_option("--seed", seed, "RNG seed (required; runs are reproducible)")
        ->required();
    simulate->add_option("--n-outer", n_outer, "ensemble preparations drawn")
        ->capture_default_str();
    simulate->add_option("--m-inner", m_inner, "measurement shots per preparation")
        ->capture_default_str();

    auto* landau = app.add_subcommand(
        "landau-feynman", "coupled-then-decoupled bipartite scenario from a file");
    landau->fallthrough();
    landau->add_option("file", scenario_file, "scenario JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    std::string echo;
    for (int i = 0; i < argc; ++i) {
        if (i) echo += ' ';
        echo += argv[i];
    }
    opts.command_echo = echo;

    try {
        qmix::cli::json report;
        if (*zeh) report = qmix::cli::run_zeh_demo(opts);
        else if (*moments) report = qmix::cli::run_moments(file_a, obs_spec, max_order, opts);
        else if (*dist) report = qmix::cli::run_distinguish(file_a, file_b, grid, max_order, opts);
        else if (*entropy) report = qmix::cli::run_entropy(file_a, opts);
        else if (*simulate)
            report = qmix::cli::run_simulate(file_a, obs_spec, order, seed, n_outer, m_inner, opts);
        else if (*landau) report = qmix::cli::run_landau_feynman(scenario_file, opts);

        if (opts.machine) std::cout << report.dump(2) << "\n";
        else std::cout << qmix::cli::render_human(report);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
