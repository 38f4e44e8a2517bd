#include <array>
#include <cstddef>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "chebex/chebex.hpp"

// chebex: best max-norm (Chebyshev) fit of a*e^(k*t)+b to two-column CSV
// data. Exit codes: 0 success, 1 input error, 2 numeric failure, 3 when
// `verify` rejects the model.

namespace {

using namespace chebex;

TimeSeries load_series(const std::string& path) {
    if (path == "-") return parse_csv(std::cin);
    return parse_csv_file(path);
}

void emit_json(const nlohmann::ordered_json& j) { std::cout << j.dump() << '\n'; }

struct IoOpts {
    std::string input = "-";
    std::string format = "json";
};

void add_io(CLI::App* cmd, IoOpts& io, const std::string& default_format = "json") {
    io.format = default_format;
    cmd->add_option("-i,--input", io.input, "CSV file with columns t,T; '-' reads stdin");
    cmd->add_option("--format", io.format, "Output format")
        ->check(CLI::IsMember({"json", "tsv"}));
}

void print_fit(const IoOpts& io, const FitReport& report,
               const nlohmann::ordered_json& extra = {}) {
    if (io.format == "tsv") {
        std::cout << report_tsv(report);
        return;
    }
    nlohmann::ordered_json j = report_json(report);
    for (const auto& [key, value] : extra.items()) j[key] = value;
    emit_json(j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Best max-norm (Chebyshev) fit of a*e^(k*t)+b to time-series data"};
    app.require_subcommand(1);
    int rc = 0;

    // fit: search the rate, then fit amplitude and offset
    auto* fit_cmd = app.add_subcommand("fit", "Search the best rate k and fit a, b");
    IoOpts fit_io;
    add_io(fit_cmd, fit_io);
    double k_min = 0.0, k_max = 0.0;
    auto* k_min_opt = fit_cmd->add_option("--k-min", k_min, "Lower end of the rate interval");
    auto* k_max_opt = fit_cmd->add_option("--k-max", k_max, "Upper end of the rate interval");
    k_min_opt->needs(k_max_opt);
    k_max_opt->needs(k_min_opt);
    std::size_t samples = 33;
    fit_cmd->add_option("--samples", samples, "Grid points per sweep (odd, >= 3)");
    double epsilon = 0.0;
    fit_cmd->add_option("--epsilon", epsilon,
                        "Stop when the grid spacing drops below this (default: 1e-12 of the "
                        "interval width)");
    std::size_t max_sweeps = 200;
    fit_cmd->add_option("--max-sweeps", max_sweeps, "Safety cap on sampling passes");
    bool refine = false;
    fit_cmd->add_flag("--refine", refine,
                      "Refine the rate analytically from the critical indices when possible");
    fit_cmd->callback([&] {
        const TimeSeries series = load_series(fit_io.input);
        SearchConfig cfg = k_min_opt->count() ? SearchConfig{} : SearchConfig::defaults_for(series);
        if (k_min_opt->count()) {
            cfg.k_lo = k_min;
            cfg.k_hi = k_max;
        }
        cfg.samples = samples;
        cfg.epsilon = epsilon > 0.0 ? epsilon : 1e-12 * (cfg.k_hi - cfg.k_lo);
        cfg.max_sweeps = max_sweeps;
        if (!refine) {
            const SearchResult r = grid_search(series, cfg);
            print_fit(fit_io, make_report(r.fit, series, r.sweeps, r.boundary));
            return;
        }
        const RefinedSearch r = search_with_refinement(series, cfg);
        if (r.refined) {
            nlohmann::ordered_json extra;
            extra["grid"] = {{"a", r.grid.fit.model.amplitude},
                             {"b", r.grid.fit.model.offset},
                             {"k", r.grid.fit.model.rate},
                             {"error", r.grid.fit.error}};
            print_fit(fit_io, make_report(*r.refined, series, r.grid.sweeps, r.grid.boundary),
                      extra);
        } else {
            nlohmann::ordered_json extra;
            extra["refine_rejected"] = r.rejection;
            print_fit(fit_io, make_report(r.grid.fit, series, r.grid.sweeps, r.grid.boundary),
                      extra);
        }
    });

    // fit-fixed-k: best amplitude and offset for a user-chosen rate
    auto* fixed_cmd = app.add_subcommand("fit-fixed-k", "Fit a, b for a fixed rate k");
    IoOpts fixed_io;
    add_io(fixed_cmd, fixed_io);
    double fixed_k = 0.0;
    fixed_cmd->add_option("--k", fixed_k, "Rate (k = 0 fits the best constant)")->required();
    std::string method = "remainders";
    fixed_cmd->add_option("--method", method, "Solver")
        ->check(CLI::IsMember({"remainders", "exhaustive"}));
    fixed_cmd->callback([&] {
        const TimeSeries series = load_series(fixed_io.input);
        ExpFit fit;
        if (fixed_k == 0.0)
            fit = solve_constant(series);
        else if (method == "exhaustive")
            fit = solve_exhaustive(series, fixed_k);
        else
            fit = solve_remainders(series, fixed_k);
        print_fit(fixed_io, make_report(fit, series));
    });

    // residuals: evaluate a user-supplied model
    auto* res_cmd = app.add_subcommand("residuals", "Residuals of a given model on the data");
    IoOpts res_io;
    add_io(res_cmd, res_io);
    ExponentialModel res_model;
    res_cmd->add_option("--a", res_model.amplitude, "Amplitude")->required();
    res_cmd->add_option("--b", res_model.offset, "Offset")->required();
    res_cmd->add_option("--k", res_model.rate, "Rate")->required();
    res_cmd->callback([&] {
        const TimeSeries series = load_series(res_io.input);
        const ExpFit fit = error_of(series, res_model);
        if (res_io.format == "tsv") {
            std::cout << "t\tT\tfit\tresidual\n";
            for (std::size_t i = 0; i < series.size(); ++i)
                std::cout << format_double(series.times[i]) << '\t'
                          << format_double(series.values[i]) << '\t'
                          << format_double(series.values[i] - fit.residuals[i]) << '\t'
                          << format_double(fit.residuals[i]) << '\n';
            return;
        }
        nlohmann::ordered_json j;
        j["a"] = res_model.amplitude;
        j["b"] = res_model.offset;
        j["k"] = res_model.rate;
        j["error"] = fit.error;
        j["critical"] = critical_json(fit.critical);
        j["residuals"] = fit.residuals;
        emit_json(j);
    });

    // verify: optimality certificate for a user-supplied model
    auto* verify_cmd = app.add_subcommand("verify", "Check the optimality certificate of a model");
    IoOpts verify_io;
    add_io(verify_cmd, verify_io);
    ExponentialModel verify_model;
    verify_cmd->add_option("--a", verify_model.amplitude, "Amplitude")->required();
    verify_cmd->add_option("--b", verify_model.offset, "Offset")->required();
    verify_cmd->add_option("--k", verify_model.rate, "Rate")->required();
    verify_cmd->callback([&] {
        const TimeSeries series = load_series(verify_io.input);
        const bool ok = verify_optimal(series, verify_model);
        const ExpFit fit = error_of(series, verify_model);
        const std::size_t alternating = alternation_length(fit.critical);
        if (verify_io.format == "tsv") {
            std::cout << "optimal\terror\talternating\n"
                      << (ok ? "true" : "false") << '\t' << format_double(fit.error) << '\t'
                      << alternating << '\n';
        } else {
            nlohmann::ordered_json j;
            j["optimal"] = ok;
            j["error"] = fit.error;
            j["alternating"] = alternating;
            emit_json(j);
        }
        if (!ok) rc = 3;
    });

    // profile: table of best fixed-k error over a rate grid
    auto* prof_cmd = app.add_subcommand("profile", "Tabulate the best error over a rate grid");
    IoOpts prof_io;
    add_io(prof_cmd, prof_io, "tsv");
    double prof_min = 0.0, prof_max = 0.0;
    auto* prof_min_opt = prof_cmd->add_option("--k-min", prof_min, "Lower end of the rate grid");
    auto* prof_max_opt = prof_cmd->add_option("--k-max", prof_max, "Upper end of the rate grid");
    prof_min_opt->needs(prof_max_opt);
    prof_max_opt->needs(prof_min_opt);
    std::size_t prof_samples = 33;
    prof_cmd->add_option("--samples", prof_samples, "Number of grid points (>= 2)");
    prof_cmd->callback([&] {
        const TimeSeries series = load_series(prof_io.input);
        double lo = prof_min, hi = prof_max;
        if (!prof_min_opt->count()) {
            const SearchConfig cfg = SearchConfig::defaults_for(series);
            lo = cfg.k_lo;
            hi = cfg.k_hi;
        }
        const std::vector<double> grid = rate_grid(lo, hi, prof_samples);
        const ScanResult scan = dense_k_scan(series, grid);
        if (prof_io.format == "tsv") {
            std::cout << "k\terror\n";
            for (const auto& p : scan.table)
                std::cout << format_double(p.rate) << '\t' << format_double(p.error) << '\n';
            return;
        }
        nlohmann::ordered_json j;
        j["best_k"] = scan.best_rate;
        j["best_error"] = scan.best_error;
        nlohmann::ordered_json table = nlohmann::ordered_json::array();
        for (const auto& p : scan.table) table.push_back({{"k", p.rate}, {"error", p.error}});
        j["table"] = table;
        emit_json(j);
    });

    // synth: generate a synthetic series
    auto* synth_cmd = app.add_subcommand("synth", "Generate synthetic data from a model");
    IoOpts synth_io;
    synth_io.format = "csv";
    synth_cmd->add_option("--format", synth_io.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    SynthSpec spec;
    synth_cmd->add_option("--a", spec.model.amplitude, "Amplitude")->required();
    synth_cmd->add_option("--b", spec.model.offset, "Offset")->required();
    synth_cmd->add_option("--k", spec.model.rate, "Rate")->required();
    double t_min = 0.0, t_max = 1.0;
    std::size_t count = 0;
    synth_cmd->add_option("--t-min", t_min, "First instant")->required();
    synth_cmd->add_option("--t-max", t_max, "Last instant")->required();
    synth_cmd->add_option("--n", count, "Number of equispaced instants (>= 2)")->required();
    std::string noise = "none";
    synth_cmd->add_option("--noise", noise, "Noise shape")
        ->check(CLI::IsMember({"none", "alternating", "uniform"}));
    synth_cmd->add_option("--delta", spec.noise_bound, "Noise magnitude bound");
    synth_cmd->add_option("--seed", spec.seed, "Seed for uniform noise");
    synth_cmd->callback([&] {
        if (count < 2 || !(t_min < t_max))
            throw ConfigError("synth requires --n >= 2 and --t-min < --t-max");
        spec.noise = noise == "alternating" ? NoiseShape::Alternating
                     : noise == "uniform"   ? NoiseShape::Uniform
                                            : NoiseShape::None;
        spec.times.resize(count);
        for (std::size_t i = 0; i < count; ++i)
            spec.times[i] = (i == count - 1)
                                ? t_max
                                : t_min + static_cast<double>(i) * (t_max - t_min) /
                                      static_cast<double>(count - 1);
        const TimeSeries series = synth(spec);
        if (synth_io.format == "json") {
            nlohmann::ordered_json j;
            j["seed"] = spec.seed;
            j["t"] = series.times;
            j["T"] = series.values;
            emit_json(j);
            return;
        }
        write_csv(std::cout, series);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const CsvError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const SeriesError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return rc;
}
