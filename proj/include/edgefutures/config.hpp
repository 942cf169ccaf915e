#pragma once

#include "edgefutures/market_model.hpp"
#include "edgefutures/rng.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace edgefutures {

/// A parsed configuration document whose numeric values may still be `lo..hi` ranges.
///
/// Format: one `key = value` per line, `#` starts a comment. Numeric values are either
/// a number or a closed range `lo..hi`; ranges are drawn once per scenario. Keys:
///
///   M, p_l, c_l, p_min, delta_p, kappa | p_max, lambda1_s, lambda2_s,
///   tau, omega, d, W, eps1 | eps1_db, eps2 | eps2_db, u_min, lambda1_b, lambda2_b,
///   lambda2 (sets lambda2_s and lambda2_b to one shared draw), snr_sampling (linear|db)
///
/// `d` is in bits and `W` in Hz. Keys that are absent keep the defaults of
/// SellerParams / BuyerParams.
class ConfigTemplate {
public:
    /// Throws ConfigError carrying the offending line number.
    static ConfigTemplate parse(std::string_view text);

    /// Adds or replaces one key, as a `--set key=value` override would.
    void set(std::string_view key, std::string_view value);

    bool has_ranges() const;

    /// Draws every range in a fixed key order, applies the values, and validates.
    MarketConfig sample(Rng& rng) const;

    const std::vector<std::string>& keys() const { return order_; }

private:
    struct Entry {
        double lo = 0.0;
        double hi = 0.0;
        std::string text;  // non-numeric keys
        bool is_range() const { return lo != hi; }
    };

    void put(std::string_view key, std::string_view value, int line);

    std::map<std::string, Entry, std::less<>> entries_;
    std::vector<std::string> order_;
};

/// Parses and samples with the first draw_config attempt; documents without ranges
/// ignore the seed. Throws ConfigError (syntax) or ValidationError (invariants).
MarketConfig parse_config(std::string_view text, std::uint64_t seed = 0);

/// Renders every key with shortest round-trip numbers; parse_config inverts it.
std::string emit_config(const MarketConfig& cfg);

/// Samples attempt a = 0, 1, ... from a substream of `seed` disjoint from the
/// environment substreams. With
/// `require_contract`, draws for which the risk-constrained futures negotiation signs
/// no contract are rejected. Throws ValidationError after `max_attempts` rejections.
MarketConfig draw_config(const ConfigTemplate& tmpl, std::uint64_t seed, bool require_contract,
                         int max_attempts = 1000);

}  // namespace edgefutures
