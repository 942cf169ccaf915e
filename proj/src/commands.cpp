#include "edgefutures/commands.hpp"

#include "edgefutures/errors.hpp"
#include "edgefutures/format.hpp"
#include "edgefutures/report.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace edgefutures {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::filesystem::filesystem_error("cannot read config", path,
                                                     std::make_error_code(std::errc::io_error));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ScenarioSpec base_scenario(const RunManifest& manifest, const MarketConfig& cfg) {
    ScenarioSpec spec;
    spec.config = cfg;
    spec.n_trading = manifest.n_trading;
    spec.seed = manifest.seed;
    return spec;
}

// Creates the output directory and records the drawn configuration next to the results.
void prepare_out(const RunManifest& manifest, const MarketConfig& cfg) {
    std::filesystem::create_directories(manifest.out_dir);
    write_file_atomic(manifest.out_dir / "config", emit_config(cfg));
}

MetricsOptions metrics_options(const RunManifest& manifest) {
    return {.tfair_include_failures = manifest.tfair_include_failures};
}

}  // namespace

MarketConfig load_config(const RunManifest& manifest) {
    ConfigTemplate tmpl;
    if (manifest.config_path) tmpl = ConfigTemplate::parse(read_file(*manifest.config_path));
    for (const auto& [key, value] : manifest.overrides) {
        try {
            tmpl.set(key, value);
        } catch (const ConfigError& e) {
            throw ConfigError("--set " + key + ": " + e.what());
        }
    }
    return draw_config(tmpl, manifest.seed, manifest.require_contract);
}

int cmd_negotiate(const RunManifest& manifest, std::ostream& out) {
    const MarketConfig cfg = load_config(manifest);
    prepare_out(manifest, cfg);
    const NegotiationResult result = negotiate_futures(cfg);
    const std::string trace = format_trace(result.trace);
    write_file_atomic(manifest.out_dir / "trace.txt", trace);

    out << trace;
    out << "iterations: " << result.trace.iteration_count() << '\n';
    if (result.failed()) {
        out << "contract: none (trading failed)\n";
        return exit_status::trading_failure;
    }
    const ContractTerm term = *result.contract;
    out << "contract: A=" << term.amount << " P=" << format_double(term.price) << '\n';
    out << "expected seller utility: "
        << format_double(expected_seller_utility(term, cfg.seller)) << '\n';
    out << "expected buyer utility: " << format_double(expected_buyer_utility(term, cfg.buyer))
        << '\n';
    const double rs = seller_risk(term, cfg.seller);
    const double rb = buyer_risk(term, cfg.buyer);
    out << "seller risk: " << format_double(rs) << " (limit " << format_double(cfg.seller.lambda2)
        << ")\n";
    out << "buyer risk: " << format_double(rb) << " (limit " << format_double(cfg.buyer.lambda2)
        << ")\n";
    if (rs > cfg.seller.lambda2 || rb > cfg.buyer.lambda2) {
        throw std::logic_error("signed contract violates a risk constraint");
    }
    return exit_status::ok;
}

int cmd_simulate(const RunManifest& manifest, std::ostream& out) {
    const MarketConfig cfg = load_config(manifest);
    prepare_out(manifest, cfg);
    ScenarioSpec spec = base_scenario(manifest, cfg);
    spec.strategy = manifest.strategy;
    const StrategyRun run{spec.strategy, run_trading_sequence(spec)};
    const std::span<const StrategyRun> runs(&run, 1);
    const std::string summary = summary_csv(runs, metrics_options(manifest), manifest.with_timing);
    write_file_atomic(manifest.out_dir / "trading.csv", trading_csv(runs, manifest.with_timing));
    write_file_atomic(manifest.out_dir / "summary.csv", summary);
    out << summary;
    return exit_status::ok;
}

int cmd_compare(const RunManifest& manifest, std::ostream& out) {
    const MarketConfig cfg = load_config(manifest);
    prepare_out(manifest, cfg);
    std::vector<StrategyRun> runs;
    for (Strategy strategy : kAllStrategies) {
        ScenarioSpec spec = base_scenario(manifest, cfg);
        spec.strategy = strategy;
        runs.push_back({strategy, run_trading_sequence(spec)});
    }
    const std::string summary = summary_csv(runs, metrics_options(manifest), manifest.with_timing);
    write_file_atomic(manifest.out_dir / "trading.csv", trading_csv(runs, manifest.with_timing));
    write_file_atomic(manifest.out_dir / "summary.csv", summary);
    out << summary;
    return exit_status::ok;
}

int cmd_sweep(const RunManifest& manifest, std::ostream& out) {
    if (manifest.values.empty()) throw ValidationError("sweep needs at least one value");
    const MarketConfig cfg = load_config(manifest);
    prepare_out(manifest, cfg);

    std::vector<Strategy> strategies = manifest.strategies;
    if (strategies.empty()) strategies.assign(std::begin(kAllStrategies), std::end(kAllStrategies));

    SweepOptions options;
    options.execution = manifest.execution;
    options.seed_policy = manifest.seed_policy;
    options.metrics = metrics_options(manifest);

    std::vector<std::vector<MetricsReport>> per_strategy;
    for (Strategy strategy : strategies) {
        ScenarioSpec spec = base_scenario(manifest, cfg);
        spec.strategy = strategy;
        per_strategy.push_back(run_sweep(spec, manifest.axis, manifest.values, options));
    }
    std::vector<SweepRow> rows;
    for (std::size_t cell = 0; cell < manifest.values.size(); ++cell) {
        for (std::size_t k = 0; k < strategies.size(); ++k) {
            rows.push_back({manifest.values[cell], strategies[k], per_strategy[k][cell]});
        }
    }
    const std::string csv =
        sweep_csv(manifest.axis, rows, manifest.log10_columns, manifest.with_timing);
    write_file_atomic(manifest.out_dir / "sweep.csv", csv);
    out << csv;
    return exit_status::ok;
}

int run_manifest(const RunManifest& manifest, std::ostream& out, std::ostream& err) {
    try {
        switch (manifest.command) {
            case Command::negotiate: return cmd_negotiate(manifest, out);
            case Command::simulate: return cmd_simulate(manifest, out);
            case Command::compare: return cmd_compare(manifest, out);
            case Command::sweep: return cmd_sweep(manifest, out);
        }
        return exit_status::usage;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_status::config_error;
    } catch (const ValidationError& e) {
        err << "invalid configuration: " << e.what() << '\n';
        return exit_status::config_error;
    } catch (const DomainError& e) {
        err << "invalid configuration: " << e.what() << '\n';
        return exit_status::config_error;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "i/o error: " << e.what() << '\n';
        return exit_status::io_error;
    }
}

}  // namespace edgefutures
