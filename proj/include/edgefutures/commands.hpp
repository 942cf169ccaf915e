#pragma once

#include "edgefutures/config.hpp"
#include "edgefutures/sim_harness.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace edgefutures {

enum class Command { negotiate, simulate, compare, sweep };

/// Everything one CLI invocation needs.
struct RunManifest {
    Command command = Command::negotiate;
    std::optional<std::filesystem::path> config_path;  ///< built-in defaults when absent
    std::vector<std::pair<std::string, std::string>> overrides;
    std::filesystem::path out_dir = "out";
    std::uint64_t seed = 0;
    bool require_contract = false;  ///< redraw ranged parameters until a contract exists
    bool with_timing = false;       ///< add wall-clock NL columns (not reproducible)
    bool tfair_include_failures = true;

    // simulate
    Strategy strategy = Strategy::futures;
    // simulate, compare, sweep
    int n_trading = 200;
    // sweep
    SweepAxis axis = SweepAxis::delta_p;
    std::vector<double> values;
    std::vector<Strategy> strategies;  ///< empty means all three
    bool log10_columns = false;
    Execution execution = Execution::serial;
    SeedPolicy seed_policy = SeedPolicy::shared;
};

namespace exit_status {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int config_error = 2;
inline constexpr int trading_failure = 3;
inline constexpr int io_error = 4;
}  // namespace exit_status

/// Reads the config file (if any), applies overrides, draws the scenario.
MarketConfig load_config(const RunManifest& manifest);

/// The commands write their files under manifest.out_dir (created if absent) and
/// return an exit status. Config and validation errors propagate as exceptions.
int cmd_negotiate(const RunManifest& manifest, std::ostream& out);
int cmd_simulate(const RunManifest& manifest, std::ostream& out);
int cmd_compare(const RunManifest& manifest, std::ostream& out);
int cmd_sweep(const RunManifest& manifest, std::ostream& out);

/// Dispatches and maps exceptions to exit statuses, printing errors to `err`.
int run_manifest(const RunManifest& manifest, std::ostream& out, std::ostream& err);

}  // namespace edgefutures
