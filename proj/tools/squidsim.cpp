// squidsim — sweep, plot, verify and validate from the command line

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"

#include "squid/config.hpp"
#include "squid/io.hpp"
#include "squid/observables.hpp"
#include "squid/plot.hpp"
#include "squid/verification.hpp"

namespace fs = std::filesystem;
using namespace squid;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitPlot = 3;

void print_warnings(const RunConfig& cfg)
{
    for (const auto& w : cfg.warnings) std::cerr << "warning: " << w.key << ": " << w.message << "\n";
}

int cmd_sweep(const std::string& path, long workers, const std::string& output_dir, bool no_cache, bool quiet)
{
    RunConfig cfg;
    try {
        cfg = load_config(path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << path << ": " << e.what() << "\n";
        return kExitConfig;
    }
    print_warnings(cfg);
    if (workers >= 0) cfg.sweep.workers = static_cast<unsigned>(workers);
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    if (no_cache) cfg.cache = false;

    std::optional<ResultBundle> bundle;
    if (cfg.cache) {
        bundle = load_cached(cfg);
        if (bundle) std::cerr << "cache hit: " << config_hash(cfg) << " (" << cfg.cache_path() << ")\n";
    }
    if (!bundle) {
        auto progress = [quiet](std::size_t done, std::size_t total) {
            if (!quiet) std::cerr << "\r" << done << "/" << total << " points" << (done == total ? "\n" : "")
                                  << std::flush;
        };
        bundle = make_bundle(cfg, flux_sweep(cfg.sweep, progress));
        if (cfg.cache) store_cached(cfg, *bundle);
    }

    const fs::path dir(cfg.output_dir);
    const std::string csv_path = (dir / (cfg.output_stem + ".csv")).string();
    const std::string json_path = (dir / (cfg.output_stem + ".json")).string();
    write_text(csv_path, records_to_csv(bundle->records));
    write_text(json_path, bundle_to_json(*bundle));
    if (!quiet) std::cerr << "wrote " << csv_path << " and " << json_path << "\n";

    int failures = 0;
    for (std::size_t k = 0; k < bundle->records.size(); ++k) {
        const auto& r = bundle->records[k];
        if (r.ok()) continue;
        ++failures;
        std::cerr << "row " << k << " (flux_fraction=" << r.flux_fraction << ", xi=" << r.xi << "): " << r.error
                  << "\n";
    }
    return failures ? kExitFailure : 0;
}

int cmd_plot(const std::string& results, const std::string& figure_name, std::string output)
{
    const auto figure = parse_figure(figure_name);
    if (!figure) {
        std::cerr << "unknown figure '" << figure_name << "' (expected fig1, fig2 or fig3)\n";
        return kExitFailure;
    }
    CsvTable table;
    try {
        table = read_csv(results);
    } catch (const std::exception& e) {
        std::cerr << "cannot read results: " << e.what() << "\n";
        return kExitPlot;
    }
    try {
        const auto spec = figure_spec(*figure, table);
        if (output.empty()) output = (fs::path(results).replace_extension("").string()) + "_" + figure_name + ".svg";
        write_text(output, render_svg(spec));
        std::cerr << "wrote " << output << " (" << spec.series.size() << " curves)\n";
        return 0;
    } catch (const PlotError& e) {
        std::cerr << "plot error: " << e.what() << "\n";
        for (const auto& m : e.missing()) std::cerr << "  missing column: " << m << "\n";
        return kExitPlot;
    }
}

int cmd_verify(bool list, bool flip_p_sign, long basis_size, const std::vector<std::string>& only)
{
    if (list) {
        for (const auto& o : oracle_suite()) std::cout << o.name << "  " << o.description << "\n";
        return 0;
    }
    VerifyOptions opts;
    opts.flip_p_sign = flip_p_sign;
    opts.basis_size = basis_size;
    const auto reports = run_oracles(opts, only);
    int failures = 0;
    std::printf("%-26s %-6s %-12s %s\n", "oracle", "result", "value", "criterion / detail");
    for (const auto& r : reports) {
        failures += !r.outcome.passed;
        std::printf("%-26s %-6s %-12.4e %s%s%s\n", r.name.c_str(), r.outcome.passed ? "PASS" : "FAIL",
                    r.outcome.value, r.outcome.criterion.c_str(), r.outcome.detail.empty() ? "" : "; ",
                    r.outcome.detail.c_str());
    }
    if (reports.empty()) {
        std::cerr << "no oracle matched the selection\n";
        return kExitFailure;
    }
    std::printf("%zu/%zu oracles passed\n", reports.size() - failures, reports.size());
    return failures ? kExitFailure : 0;
}

int cmd_validate(const std::string& path)
{
    try {
        const auto cfg = load_config(path);
        print_warnings(cfg);
        std::cout << canonical_config(cfg) << "config_hash = " << config_hash(cfg) << "\n";
        std::cout << (cfg.warnings.empty() ? "valid\n" : "valid with warnings\n");
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << path << ": " << e.what() << "\n";
        return kExitConfig;
    }
}

int cmd_dump(const std::string& path, double flux, int order, const std::string& output_dir, bool spectrum)
{
    RunConfig cfg;
    try {
        cfg = load_config(path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << path << ": " << e.what() << "\n";
        return kExitConfig;
    }
    const auto& sw = cfg.sweep;
    const auto scales = sweep_scales(sw.squid, sw.gamma_ratio, sw.cutoff_ratios.front());
    Superoperator g;
    const bool lindblad = sw.family == GeneratorFamily::lindblad;
    if (order == 1)
        g = lindblad ? assemble_liouvillian(build_lindblad_first(scales, sw.gamma_ratio, flux, sw.basis_size, sw.generator),
                                            GeneratorKind::lindblad_first)
                     : build_cl_first(scales, sw.gamma_ratio, flux, sw.basis_size, sw.generator);
    else {
        const double zeta = sw.zeta_mode == ZetaMode::fixed ? sw.zeta : ZetaSplit::one_minus_xi(scales.xi).zeta();
        g = lindblad ? assemble_liouvillian(build_lindblad_second(scales, sw.gamma_ratio, flux,
                                                                  ZetaSplit::from_zeta(zeta), sw.basis_size, sw.generator),
                                            GeneratorKind::lindblad_second)
                     : build_cl_second(scales, sw.gamma_ratio, flux, sw.basis_size, sw.generator);
    }
    const auto ss = steady_state(g, sw.solver);
    const fs::path dir(output_dir.empty() ? cfg.output_dir : output_dir);
    const std::string stem = "rho_order" + std::to_string(order);
    write_text((dir / (stem + ".csv")).string(), matrix_to_csv(ss.rho));
    std::cout << "purity " << purity(ss.rho) << "  residual " << ss.residual_norm << "  gap " << ss.spectral_gap
              << "  min_eigenvalue " << ss.min_eigenvalue << "\n";
    if (spectrum)
        write_text((dir / ("spectrum_order" + std::to_string(order) + ".csv")).string(),
                   eigenvalues_to_csv(liouvillian_spectrum(g)));
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"squidsim: steady states of a SQUID ring coupled to an Ohmic bath"};
    app.set_version_flag("--version", version());
    app.require_subcommand(1);

    auto* sweep = app.add_subcommand("sweep", "Run a flux/cutoff sweep and write CSV + JSON");
    std::string sweep_config;
    long sweep_workers = -1;
    std::string sweep_out;
    bool no_cache = false, quiet = false, serial = false;
    sweep->add_option("config", sweep_config, "key = value config file")->required();
    sweep->add_option("-j,--workers", sweep_workers, "worker threads (0: all hardware threads)");
    sweep->add_flag("--serial", serial, "force a single worker for deterministic debugging");
    sweep->add_option("-o,--output-dir", sweep_out, "override output_dir");
    sweep->add_flag("--no-cache", no_cache, "ignore the result cache");
    sweep->add_flag("-q,--quiet", quiet, "suppress progress output");

    auto* plot = app.add_subcommand("plot", "Render fig1 (purity), fig2 (zeta*) or fig3 (current) as SVG");
    std::string plot_results, plot_figure = "fig1", plot_output;
    plot->add_option("results", plot_results, "sweep CSV")->required();
    plot->add_option("-f,--figure", plot_figure, "fig1, fig2 or fig3");
    plot->add_option("-o,--output", plot_output, "SVG path (default: <results>_<figure>.svg)");

    auto* verify = app.add_subcommand("verify", "Run the oracle suite and print a pass/fail table");
    bool verify_list = false, flip = false;
    long verify_n = 12;
    std::vector<std::string> only;
    verify->add_flag("--list", verify_list, "list oracle names without running them");
    verify->add_flag("--flip-p-sign", flip, "debug: flip the sign of the P coefficient in the first-order Lindblad");
    verify->add_option("-n,--basis-size", verify_n, "basis size for generator-level oracles")->check(CLI::Range(4, 40));
    verify->add_option("--only", only, "run only the named oracles")->delimiter(',');

    auto* validate = app.add_subcommand("validate", "Parse and check a config without running");
    std::string validate_config;
    validate->add_option("config", validate_config, "key = value config file")->required();

    auto* dump = app.add_subcommand("dump", "Write one steady-state density matrix (and optionally the spectrum)");
    std::string dump_config, dump_out;
    double dump_flux = 0.5;
    int dump_order = 1;
    bool dump_spectrum = false;
    dump->add_option("config", dump_config, "key = value config file")->required();
    dump->add_option("--flux", dump_flux, "flux fraction");
    dump->add_option("--order", dump_order, "1 or 2")->check(CLI::IsMember({1, 2}));
    dump->add_option("-o,--output-dir", dump_out, "override output_dir");
    dump->add_flag("--spectrum", dump_spectrum, "also write the Liouvillian eigenvalues");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*sweep) return cmd_sweep(sweep_config, serial ? 1 : sweep_workers, sweep_out, no_cache, quiet);
        if (*plot) return cmd_plot(plot_results, plot_figure, plot_output);
        if (*verify) return cmd_verify(verify_list, flip, verify_n, only);
        if (*validate) return cmd_validate(validate_config);
        if (*dump) return cmd_dump(dump_config, dump_flux, dump_order, dump_out, dump_spectrum);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return 0;
}
