#pragma once

#include "edgefutures/market_model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace edgefutures {

/// A (price, amount) pair acceptable to both sides at one quoted price.
struct CandidateTerm {
    int amount = 0;
    int price_index = 0;
    double price = 0.0;
    double buyer_utility = 0.0;   ///< buyer's objective (expected or realized)
    double seller_utility = 0.0;  ///< seller's objective (expected or realized)

    ContractTerm term() const { return {amount, price}; }

    bool operator==(const CandidateTerm&) const = default;
};

/// One quote of the descending-price loop.
struct NegotiationStep {
    int price_index = 0;
    double price = 0.0;
    std::vector<int> seller_amounts;  ///< ascending
    std::vector<int> buyer_amounts;   ///< ascending
    std::optional<CandidateTerm> candidate;

    bool operator==(const NegotiationStep&) const = default;
};

struct NegotiationTrace {
    std::vector<NegotiationStep> iterations;
    /// Wall-clock duration of the negotiation in ms, filled by callers that time it.
    /// Excluded from equality.
    double elapsed_ms = 0.0;

    int iteration_count() const { return static_cast<int>(iterations.size()); }

    bool operator==(const NegotiationTrace& other) const { return iterations == other.iterations; }
};

struct NegotiationResult {
    std::optional<ContractTerm> contract;  ///< nullopt when the trading fails
    NegotiationTrace trace;
    std::vector<CandidateTerm> candidates;

    bool failed() const { return !contract.has_value(); }
    /// The contract, or the (0, 0) failure term.
    ContractTerm term() const { return contract.value_or(ContractTerm::failure()); }

    bool operator==(const NegotiationResult&) const = default;
};

/// Amounts A in [1, M] whose seller risk at `price` is within lambda2_s. Ascending.
std::vector<int> seller_feasible_amounts(double price, const SellerParams& s);

/// Amounts A in [1, M] whose buyer risk at `price` is within lambda2_b. Ascending.
std::vector<int> buyer_feasible_amounts(double price, int M, const BuyerParams& b);

/// Risk-constrained bilateral negotiation of a forward contract.
///
/// The buyer reports its tolerable price (grid-snapped, evaluated at eps2); the seller
/// then quotes every grid price from min(p_b^max, p_s^max) down to p_min. At each
/// quote both sides name the amounts meeting their risk tolerance; on overlap the
/// buyer picks the amount maximizing its expected utility (ties to smaller A). The
/// seller finally signs the candidate maximizing its expected utility (ties to higher
/// price, then smaller A).
NegotiationResult negotiate_futures(const MarketConfig& cfg);

/// The same mechanism with both risk constraints dropped: every A in [1, M] is
/// acceptable to both sides. Price presetting is kept.
NegotiationResult negotiate_futures_no_risk(const MarketConfig& cfg);

/// Per-trading negotiation under the realized (n_l, gamma). Same descending loop;
/// the buyer presets its price at the realized gamma and accepts A with positive
/// realized utility, the seller accepts A with positive marginal gain A P - C^s, and
/// the seller signs the candidate with the highest realized utility.
NegotiationResult negotiate_onsite(int n_l, double gamma, const MarketConfig& cfg);

/// Compressed ascending set, e.g. "1-4,7,9-10"; "-" when empty.
std::string format_amounts(const std::vector<int>& amounts);

/// One line per iteration: `k=<index> price=<p> seller=<set> buyer=<set> candidate=<A@P|none>`.
std::string format_trace(const NegotiationTrace& trace);

}  // namespace edgefutures
