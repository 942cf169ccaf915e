#include "edgefutures/sim_harness.hpp"

#include "edgefutures/errors.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <string>

namespace edgefutures {

std::string_view to_string(Strategy strategy) {
    switch (strategy) {
        case Strategy::futures: return "futures";
        case Strategy::futures_no_risk: return "futures-no-risk";
        case Strategy::onsite: return "onsite";
    }
    return "?";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
    for (Strategy s : kAllStrategies) {
        if (to_string(s) == name) return s;
    }
    return std::nullopt;
}

std::string_view to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::M: return "M";
        case SweepAxis::delta_p: return "delta_p";
        case SweepAxis::n_trading: return "n_trading";
        case SweepAxis::lambda2: return "lambda2";
    }
    return "?";
}

std::optional<SweepAxis> parse_sweep_axis(std::string_view name) {
    for (SweepAxis a : {SweepAxis::M, SweepAxis::delta_p, SweepAxis::n_trading,
                        SweepAxis::lambda2}) {
        if (to_string(a) == name) return a;
    }
    return std::nullopt;
}

void ScenarioSpec::validate() const {
    config.validate();
    if (n_trading < 1) throw ValidationError("n_trading must be >= 1");
}

EnvironmentSample sample_environment(Rng& rng, const MarketConfig& cfg) {
    EnvironmentSample sample;
    sample.n_l = rng.uniform_int(0, cfg.seller.M);
    const auto& b = cfg.buyer;
    if (cfg.snr_sampling == SnrSampling::decibel) {
        const double db = rng.uniform(10.0 * std::log10(b.eps1), 10.0 * std::log10(b.eps2));
        sample.gamma = std::clamp(std::pow(10.0, db / 10.0), b.eps1, b.eps2);
    } else {
        sample.gamma = rng.uniform(b.eps1, b.eps2);
    }
    return sample;
}

EnvironmentSample sample_environment(std::uint64_t seed, int index, const MarketConfig& cfg) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(index)));
    return sample_environment(rng, cfg);
}

TradingOutcome fulfill_contract(const ContractTerm& contract, const EnvironmentSample& sample,
                                const MarketConfig& cfg) {
    TradingOutcome out;
    out.sample = sample;
    out.term = contract;
    out.failed = contract.is_failure();
    if (out.failed) out.term = ContractTerm::failure();
    out.seller_utility = seller_utility(sample.n_l, out.term, cfg.seller);
    out.buyer_utility = buyer_utility(sample.gamma, out.term, cfg.buyer);
    return out;
}

namespace {

std::vector<TradingOutcome> run_futures(const ScenarioSpec& spec) {
    const auto& cfg = spec.config;
    const bool with_risk = spec.strategy == Strategy::futures;
    const NegotiationResult deal = timed_negotiation([&] {
        return with_risk ? negotiate_futures(cfg) : negotiate_futures_no_risk(cfg);
    });

    std::vector<TradingOutcome> outcomes;
    outcomes.reserve(static_cast<std::size_t>(spec.n_trading));
    for (int i = 0; i < spec.n_trading; ++i) {
        outcomes.push_back(fulfill_contract(deal.term(), sample_environment(spec.seed, i, cfg), cfg));
    }
    outcomes.front().nc = deal.trace.iteration_count();
    outcomes.front().nl_ms = deal.trace.elapsed_ms;
    return outcomes;
}

std::vector<TradingOutcome> run_onsite(const ScenarioSpec& spec) {
    const auto& cfg = spec.config;
    std::vector<TradingOutcome> outcomes;
    outcomes.reserve(static_cast<std::size_t>(spec.n_trading));
    for (int i = 0; i < spec.n_trading; ++i) {
        const EnvironmentSample sample = sample_environment(spec.seed, i, cfg);
        const NegotiationResult deal =
            timed_negotiation([&] { return negotiate_onsite(sample.n_l, sample.gamma, cfg); });
        TradingOutcome out = fulfill_contract(deal.term(), sample, cfg);
        out.nc = deal.trace.iteration_count();
        out.nl_ms = deal.trace.elapsed_ms;
        outcomes.push_back(out);
    }
    return outcomes;
}

}  // namespace

std::vector<TradingOutcome> run_trading_sequence(const ScenarioSpec& spec) {
    spec.validate();
    return spec.strategy == Strategy::onsite ? run_onsite(spec) : run_futures(spec);
}

MetricsReport compute_metrics(std::span<const TradingOutcome> outcomes,
                              const MetricsOptions& options) {
    if (outcomes.empty()) throw std::invalid_argument("compute_metrics: empty outcome list");

    MetricsReport m;
    m.n_trading = static_cast<int>(outcomes.size());
    double nl_sum = 0.0;
    std::vector<double> prices;
    prices.reserve(outcomes.size());
    for (const auto& o : outcomes) {
        if (o.failed) ++m.tfail;
        m.nc_total += o.nc;
        nl_sum += o.nl_ms;
        m.sum_buyer += o.buyer_utility;
        m.sum_seller += o.seller_utility;
        if (!o.failed || options.tfair_include_failures) prices.push_back(o.term.price);
    }
    m.abar = 100.0 * m.tfail / m.n_trading;
    m.nc_mean = static_cast<double>(m.nc_total) / m.n_trading;
    m.nl_mean = nl_sum / m.n_trading;

    // Deviations from the first price: identical prices give exactly zero.
    if (!prices.empty()) {
        const double origin = prices.front();
        double shift = 0.0;
        for (double p : prices) shift += p - origin;
        shift /= static_cast<double>(prices.size());
        double ss = 0.0;
        for (double p : prices) {
            const double dev = (p - origin) - shift;
            ss += dev * dev;
        }
        m.tfair = ss / static_cast<double>(prices.size());
    }
    return m;
}

std::vector<ScenarioSpec> sweep_cells(const ScenarioSpec& base, SweepAxis axis,
                                      std::span<const double> values, SeedPolicy policy) {
    std::vector<ScenarioSpec> cells;
    cells.reserve(values.size());
    const auto as_count = [axis](double v) {
        if (!(v >= 1.0) || v != std::floor(v) || v > 1e9) {
            throw ValidationError(std::string(to_string(axis)) +
                                  " sweep values must be integers >= 1");
        }
        return static_cast<int>(v);
    };
    for (std::size_t i = 0; i < values.size(); ++i) {
        ScenarioSpec cell = base;
        const double v = values[i];
        switch (axis) {
            case SweepAxis::M: cell.config.seller.M = as_count(v); break;
            case SweepAxis::n_trading: cell.n_trading = as_count(v); break;
            case SweepAxis::delta_p: {
                if (!(v > 0.0)) throw ValidationError("delta_p sweep values must be > 0");
                const auto& s = base.config.seller;
                const double span = s.kappa * s.delta_p;
                cell.config.seller.delta_p = v;
                cell.config.seller.kappa = static_cast<int>(std::floor(span / v + 1e-9));
                break;
            }
            case SweepAxis::lambda2:
                cell.config.seller.lambda2 = v;
                cell.config.buyer.lambda2 = v;
                break;
        }
        if (policy == SeedPolicy::per_cell) cell.seed = derive_seed(base.seed, i);
        cell.validate();
        cells.push_back(cell);
    }
    return cells;
}

std::vector<MetricsReport> run_sweep(const ScenarioSpec& base, SweepAxis axis,
                                     std::span<const double> values,
                                     const SweepOptions& options) {
    const auto cells = sweep_cells(base, axis, values, options.seed_policy);
    const auto run_cell = [&options](const ScenarioSpec& cell) {
        const auto outcomes = run_trading_sequence(cell);
        return compute_metrics(outcomes, options.metrics);
    };

    std::vector<MetricsReport> reports;
    reports.reserve(cells.size());
    if (options.execution == Execution::serial) {
        for (const auto& cell : cells) reports.push_back(run_cell(cell));
        return reports;
    }
    std::vector<std::future<MetricsReport>> pending;
    pending.reserve(cells.size());
    for (const auto& cell : cells) {
        pending.push_back(std::async(std::launch::async, run_cell, std::cref(cell)));
    }
    for (auto& f : pending) reports.push_back(f.get());
    return reports;
}

}  // namespace edgefutures
