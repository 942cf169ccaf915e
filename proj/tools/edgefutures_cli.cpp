// Command-line front end: negotiate, simulate, compare, sweep.

#include "edgefutures/commands.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <iostream>
#include <map>
#include <sstream>

using namespace edgefutures;

namespace {

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> values;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc{} || ptr != item.data() + item.size() || item.empty()) {
            throw CLI::ValidationError("--values", "not a number: '" + item + "'");
        }
        values.push_back(v);
    }
    return values;
}

std::pair<std::string, std::string> split_override(const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw CLI::ValidationError("--set", "expected key=value, got '" + kv + "'");
    }
    return {kv.substr(0, eq), kv.substr(eq + 1)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Risk-aware futures trading of edge computing resources"};
    app.require_subcommand(1);

    RunManifest m;
    std::string config_path;
    std::vector<std::string> overrides;
    bool tfair_exclude = false;

    app.add_option("--config", config_path, "Config file (key = value, ranges lo..hi)")
        ->check(CLI::ExistingFile);
    app.add_option("--seed", m.seed, "Run seed");
    app.add_option("--out", m.out_dir, "Output directory (created if absent)");
    app.add_option("--set", overrides, "Override a config key: key=value (repeatable)");
    app.add_flag("--require-contract", m.require_contract,
                 "Redraw ranged parameters until a futures contract exists");
    app.add_flag("--with-timing", m.with_timing, "Add wall-clock NL columns to CSVs");
    app.add_flag("--tfair-exclude-failures", tfair_exclude,
                 "Leave failed trading out of TFair");

    auto* negotiate = app.add_subcommand("negotiate", "Negotiate one forward contract");
    negotiate->fallthrough();

    std::string strategy = "futures";
    auto* simulate = app.add_subcommand("simulate", "Run one strategy over N trading");
    simulate->fallthrough();
    simulate->add_option("--strategy", strategy, "futures | futures-no-risk | onsite")
        ->check(CLI::IsMember({"futures", "futures-no-risk", "onsite"}));
    simulate->add_option("--n", m.n_trading, "Number of trading")->check(CLI::PositiveNumber);

    auto* compare = app.add_subcommand("compare", "Run all strategies on paired environments");
    compare->fallthrough();
    compare->add_option("--n", m.n_trading, "Number of trading")->check(CLI::PositiveNumber);

    std::string axis;
    std::string values;
    std::vector<std::string> strategies;
    std::string seed_policy = "shared";
    bool parallel = false;
    auto* sweep = app.add_subcommand("sweep", "Sweep one parameter");
    sweep->fallthrough();
    sweep->add_option("--axis", axis, "M | delta_p | n_trading | lambda2")
        ->required()
        ->check(CLI::IsMember({"M", "delta_p", "n_trading", "lambda2"}));
    sweep->add_option("--values", values, "Comma separated values")->required();
    sweep->add_option("--n", m.n_trading, "Trading per cell")->check(CLI::PositiveNumber);
    sweep->add_option("--strategy", strategies, "Restrict to strategies (repeatable)")
        ->check(CLI::IsMember({"futures", "futures-no-risk", "onsite"}));
    sweep->add_flag("--log10", m.log10_columns, "Add log10 columns for NC (and NL)");
    sweep->add_flag("--parallel", parallel, "Run cells concurrently");
    sweep->add_option("--seed-policy", seed_policy, "shared | per-cell")
        ->check(CLI::IsMember({"shared", "per-cell"}));

    try {
        app.parse(argc, argv);
        if (!config_path.empty()) m.config_path = config_path;
        for (const auto& kv : overrides) m.overrides.push_back(split_override(kv));
        m.tfair_include_failures = !tfair_exclude;
        if (*negotiate) m.command = Command::negotiate;
        if (*simulate) {
            m.command = Command::simulate;
            m.strategy = *parse_strategy(strategy);
        }
        if (*compare) m.command = Command::compare;
        if (*sweep) {
            m.command = Command::sweep;
            m.axis = *parse_sweep_axis(axis);
            m.values = parse_values(values);
            for (const auto& s : strategies) m.strategies.push_back(*parse_strategy(s));
            m.execution = parallel ? Execution::parallel : Execution::serial;
            m.seed_policy = seed_policy == "per-cell" ? SeedPolicy::per_cell : SeedPolicy::shared;
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_status::usage;
    }

    return run_manifest(m, std::cout, std::cerr);
}
