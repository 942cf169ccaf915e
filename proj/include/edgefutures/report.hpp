#pragma once

#include "edgefutures/sim_harness.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace edgefutures {

/// Outcomes of one strategy over a trading sequence.
struct StrategyRun {
    Strategy strategy;
    std::vector<TradingOutcome> outcomes;
};

/// Per-trading rows. Columns:
///   strategy,trading,n_l,gamma,amount,price,seller_utility,buyer_utility,failed,nc[,nl_ms]
std::string trading_csv(std::span<const StrategyRun> runs, bool with_timing);

/// One row per strategy. Columns:
///   method,n_trading,TFail,ABAR,NC,NC_mean,TFair,Sum(Ub),Sum(Us)[,NL_mean]
std::string summary_csv(std::span<const StrategyRun> runs, const MetricsOptions& options,
                        bool with_timing);

struct SweepRow {
    double value;
    Strategy strategy;
    MetricsReport report;
};

/// One row per (cell, strategy). Columns:
///   axis,value,method,n_trading,TFail,ABAR,NC,NC_mean,TFair,Sum(Ub),Sum(Us)
///   [,log10_NC_mean][,NL_mean[,log10_NL_mean]]
std::string sweep_csv(SweepAxis axis, std::span<const SweepRow> rows, bool with_log10,
                      bool with_timing);

/// Writes `content` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace edgefutures
