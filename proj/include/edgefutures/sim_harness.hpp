#pragma once

#include "edgefutures/market_model.hpp"
#include "edgefutures/negotiation.hpp"
#include "edgefutures/rng.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace edgefutures {

enum class Strategy { futures, futures_no_risk, onsite };

inline constexpr Strategy kAllStrategies[] = {Strategy::futures, Strategy::onsite,
                                              Strategy::futures_no_risk};

std::string_view to_string(Strategy strategy);
std::optional<Strategy> parse_strategy(std::string_view name);

struct EnvironmentSample {
    int n_l = 0;
    double gamma = 0.0;

    bool operator==(const EnvironmentSample&) const = default;
};

struct TradingOutcome {
    EnvironmentSample sample;
    ContractTerm term;
    double seller_utility = 0.0;
    double buyer_utility = 0.0;
    bool failed = false;
    int nc = 0;          ///< negotiation iterations charged to this trading
    double nl_ms = 0.0;  ///< negotiation wall time charged to this trading; not compared

    bool operator==(const TradingOutcome& o) const {
        return sample == o.sample && term == o.term && seller_utility == o.seller_utility &&
               buyer_utility == o.buyer_utility && failed == o.failed && nc == o.nc;
    }
};

struct MetricsReport {
    int n_trading = 0;
    int tfail = 0;
    double abar = 0.0;      ///< failures per 100 trading
    long long nc_total = 0;
    double nc_mean = 0.0;   ///< nc_total / n_trading
    double nl_mean = 0.0;   ///< mean per-trading negotiation time (ms)
    double tfair = 0.0;     ///< population variance of recorded prices
    double sum_buyer = 0.0;
    double sum_seller = 0.0;

    bool operator==(const MetricsReport& o) const {
        return n_trading == o.n_trading && tfail == o.tfail && abar == o.abar &&
               nc_total == o.nc_total && nc_mean == o.nc_mean && tfair == o.tfair &&
               sum_buyer == o.sum_buyer && sum_seller == o.sum_seller;
    }
};

struct MetricsOptions {
    /// Failed trading enter TFair with price 0. When false they are left out.
    bool tfair_include_failures = true;
};

struct ScenarioSpec {
    MarketConfig config;
    Strategy strategy = Strategy::futures;
    int n_trading = 200;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Draws n_l ~ U{0..M} and gamma ~ U[eps1, eps2] (uniform in dB when configured).
EnvironmentSample sample_environment(Rng& rng, const MarketConfig& cfg);

/// The sample of trading `index` in a sequence seeded with `seed`.
EnvironmentSample sample_environment(std::uint64_t seed, int index, const MarketConfig& cfg);

/// Realized utilities of a fixed contract under one environment sample. The failure
/// term yields a failed outcome: the seller keeps n_l p_l and the buyer gets 0.
TradingOutcome fulfill_contract(const ContractTerm& contract, const EnvironmentSample& sample,
                                const MarketConfig& cfg);

/// Runs `negotiate` while measuring wall time into trace.elapsed_ms.
template <typename Fn>
NegotiationResult timed_negotiation(Fn&& negotiate) {
    const auto start = std::chrono::steady_clock::now();
    NegotiationResult result = negotiate();
    const auto stop = std::chrono::steady_clock::now();
    result.trace.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    return result;
}

/// Futures strategies negotiate once and charge NC/NL to the first trading; onsite
/// renegotiates every trading. Trading i always sees sample_environment(seed, i), so
/// strategies run with one seed face identical environments.
std::vector<TradingOutcome> run_trading_sequence(const ScenarioSpec& spec);

/// Throws std::invalid_argument for an empty outcome list.
MetricsReport compute_metrics(std::span<const TradingOutcome> outcomes,
                              const MetricsOptions& options = {});

enum class SweepAxis { M, delta_p, n_trading, lambda2 };

std::string_view to_string(SweepAxis axis);
std::optional<SweepAxis> parse_sweep_axis(std::string_view name);

enum class Execution { serial, parallel };

/// `shared` runs every cell on the base seed (common random numbers across cells);
/// `per_cell` uses derive_seed(base seed, cell index).
enum class SeedPolicy { shared, per_cell };

struct SweepOptions {
    Execution execution = Execution::serial;
    SeedPolicy seed_policy = SeedPolicy::shared;
    MetricsOptions metrics;
};

/// The scenario of each cell. Sweeping delta_p rescales kappa so that p_s^max stays
/// (up to grid rounding) where the base put it; sweeping lambda2 sets both sides.
std::vector<ScenarioSpec> sweep_cells(const ScenarioSpec& base, SweepAxis axis,
                                      std::span<const double> values, SeedPolicy policy);

std::vector<MetricsReport> run_sweep(const ScenarioSpec& base, SweepAxis axis,
                                     std::span<const double> values,
                                     const SweepOptions& options = {});

}  // namespace edgefutures
