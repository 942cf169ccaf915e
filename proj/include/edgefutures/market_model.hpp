#pragma once

#include <optional>
#include <vector>

namespace edgefutures {

/// Seller (edge server) parameters.
struct SellerParams {
    int M = 25;              ///< VMs owned by the seller.
    double p_l = 0.5;        ///< revenue per local user
    double c_l = 0.4;        ///< refund per waiting local user
    double p_min = 0.7;      ///< lowest admissible unit price
    double delta_p = 0.1;    ///< price adjustment granularity
    int kappa = 10;          ///< grid extent: p_max = p_min + kappa * delta_p
    double lambda1 = 0.95;   ///< utility-ratio threshold of the risk event
    double lambda2 = 0.3;    ///< tolerated risk probability

    /// Throws ValidationError naming the first violated invariant.
    void validate() const;

    bool operator==(const SellerParams&) const = default;
};

/// Buyer (vehicle) parameters. SNR values are linear ratios.
struct BuyerParams {
    double tau = 1.0;        ///< execution time saved per offloaded task (s)
    double omega = 1.0;      ///< weight converting payment into time units
    double d = 6.5e6;        ///< task data size (bits)
    double W = 5.5e6;        ///< V2I bandwidth (Hz)
    double eps1 = 10.0;      ///< lower SNR bound
    double eps2 = 199.52623149688787;  ///< upper SNR bound
    double u_min = 1e-8;     ///< utility floor
    double lambda1 = 1.0;    ///< floor multiplier of the risk event
    double lambda2 = 0.3;    ///< tolerated risk probability

    void validate() const;

    bool operator==(const BuyerParams&) const = default;
};

/// How the realized SNR is drawn. The closed forms always assume `linear`.
enum class SnrSampling { linear, decibel };

struct MarketConfig {
    SellerParams seller;
    BuyerParams buyer;
    SnrSampling snr_sampling = SnrSampling::linear;

    void validate() const;

    bool operator==(const MarketConfig&) const = default;
};

/// An (amount, unit price) pair. The failure term is (0, 0).
struct ContractTerm {
    int amount = 0;
    double price = 0.0;

    static constexpr ContractTerm failure() { return {}; }
    constexpr bool is_failure() const { return amount == 0; }

    bool operator==(const ContractTerm&) const = default;
};

/// Admissible unit prices p_min + k * delta_p, k = 0..kappa. Prices are addressed by
/// their integer index; the money value is materialized from the index on demand.
class PriceGrid {
public:
    explicit PriceGrid(const SellerParams& s)
        : p_min_(s.p_min), delta_p_(s.delta_p), kappa_(s.kappa) {}

    double price(int index) const { return p_min_ + index * delta_p_; }
    int max_index() const { return kappa_; }
    int size() const { return kappa_ + 1; }
    std::vector<double> prices() const;

private:
    double p_min_;
    double delta_p_;
    int kappa_;
};

std::vector<double> price_grid(const SellerParams& s);

// Seller side.

/// Refund owed to local users who wait because A VMs were sold.
double seller_cost(int n_l, int amount, const SellerParams& s);

double seller_utility(int n_l, const ContractTerm& term, const SellerParams& s);

/// Closed form (c_l A^2 + c_l A) / (2 (M + 1)).
double expected_seller_cost(int amount, const SellerParams& s);

double expected_seller_utility(const ContractTerm& term, const SellerParams& s);

/// Local revenue minus refund, S(n_l) = U^s - C^s, for the realized n_l.
double local_surplus(int n_l, int amount, const SellerParams& s);

/// Right-hand side r of the seller's risk event {S <= r}.
double seller_risk_threshold(const ContractTerm& term, const SellerParams& s);

/// Pr{S <= r} by the four-branch closed-form CDF. Requires amount >= 1 and c_l < p_l.
double seller_risk(const ContractTerm& term, const SellerParams& s);

/// Pr{S <= r} by enumerating the M + 1 equiprobable values of n_l. Also valid for c_l == p_l.
double seller_risk_oracle(const ContractTerm& term, const SellerParams& s);

// Buyer side.

/// Uplink transmission delay of `amount` tasks at realized SNR gamma.
double buyer_delay(double gamma, int amount, const BuyerParams& b);

double buyer_utility(double gamma, const ContractTerm& term, const BuyerParams& b);

double expected_buyer_utility(const ContractTerm& term, const BuyerParams& b);

/// Exponent r' of the buyer's risk event {gamma <= 2^r' - 1}; nullopt when the
/// denominator A tau - u_min lambda1 - omega A P is not positive.
std::optional<double> buyer_risk_exponent(const ContractTerm& term, const BuyerParams& b);

/// Pr{U^b <= lambda1 * u_min} under gamma ~ U(eps1, eps2). Requires amount >= 1.
double buyer_risk(const ContractTerm& term, const BuyerParams& b);

/// Grid index of the highest price the buyer tolerates at SNR `gamma`:
/// floor((tau/omega - d / (omega W log2(1 + gamma)) - p_min) / delta_p).
/// May be negative (nothing affordable) or exceed kappa (seller cap binds).
int tolerable_price_index(double gamma, const MarketConfig& cfg);

/// The buyer's reported tolerable price at gamma = eps2, snapped to the grid;
/// nullopt when it falls below p_min (the trading fails before negotiation).
std::optional<double> buyer_max_price(const MarketConfig& cfg);

}  // namespace edgefutures
