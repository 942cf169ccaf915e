#include "edgefutures/market_model.hpp"

#include "edgefutures/errors.hpp"
#include "edgefutures/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace edgefutures {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw ValidationError(what);
}

void check_counts(int n_l, int amount, const SellerParams& s, const char* fn) {
    if (n_l < 0 || n_l > s.M || amount < 0 || amount > s.M) {
        throw DomainError(std::string(fn) + ": need 0 <= n_l <= M and 0 <= A <= M");
    }
}

void check_sold_amount(const ContractTerm& term, int M, const char* fn) {
    if (term.amount < 1 || term.amount > M) {
        throw DomainError(std::string(fn) + ": amount must lie in [1, M]");
    }
}

// Tolerance, in grid steps, for snapping a price quotient onto an integer before flooring.
constexpr double kGridSnap = 1e-9;

}  // namespace

void SellerParams::validate() const {
    require(M >= 1, "M must be >= 1");
    require(std::isfinite(p_l) && std::isfinite(c_l) && std::isfinite(p_min),
            "seller prices must be finite");
    require(c_l > 0.0, "c_l must be > 0");
    require(c_l < p_l,
            "c_l must be < p_l: the closed-form seller risk CDF divides by (p_l - c_l)");
    require(p_l <= p_min, "p_min must be >= p_l");
    require(std::isfinite(delta_p) && delta_p > 0.0, "delta_p must be > 0");
    require(kappa >= 0, "kappa must be >= 0");
    require(lambda1 > 0.0 && lambda1 < 1.0, "lambda1_s must lie in (0, 1)");
    require(lambda2 >= 0.0 && lambda2 <= 1.0, "lambda2_s must lie in [0, 1]");
}

void BuyerParams::validate() const {
    require(std::isfinite(tau) && tau > 0.0, "tau must be > 0");
    require(std::isfinite(omega) && omega > 0.0, "omega must be > 0");
    require(std::isfinite(d) && d > 0.0, "d must be > 0");
    require(std::isfinite(W) && W > 0.0, "W must be > 0");
    require(eps1 > 0.0, "eps1 must be > 0");
    require(std::isfinite(eps2) && eps2 > eps1, "eps2 must be > eps1");
    require(std::isfinite(u_min) && u_min > 0.0, "u_min must be > 0");
    require(std::isfinite(lambda1) && lambda1 >= 0.0, "lambda1_b must be >= 0");
    require(lambda2 >= 0.0 && lambda2 <= 1.0, "lambda2_b must lie in [0, 1]");
}

void MarketConfig::validate() const {
    seller.validate();
    buyer.validate();
}

std::vector<double> PriceGrid::prices() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (int k = 0; k <= kappa_; ++k) out.push_back(price(k));
    return out;
}

std::vector<double> price_grid(const SellerParams& s) { return PriceGrid(s).prices(); }

double seller_cost(int n_l, int amount, const SellerParams& s) {
    check_counts(n_l, amount, s, "seller_cost");
    const int waiting = n_l - (s.M - amount);
    return waiting > 0 ? s.c_l * waiting : 0.0;
}

double seller_utility(int n_l, const ContractTerm& term, const SellerParams& s) {
    return n_l * s.p_l + term.amount * term.price - seller_cost(n_l, term.amount, s);
}

double expected_seller_cost(int amount, const SellerParams& s) {
    if (amount < 0 || amount > s.M) throw DomainError("expected_seller_cost: need 0 <= A <= M");
    const double a = amount;
    return (s.c_l * a * a + s.c_l * a) / (2.0 * (s.M + 1));
}

double expected_seller_utility(const ContractTerm& term, const SellerParams& s) {
    return s.p_l * discrete_uniform_mean(s.M) + term.amount * term.price -
           expected_seller_cost(term.amount, s);
}

double local_surplus(int n_l, int amount, const SellerParams& s) {
    const int free = s.M - amount;
    if (n_l <= free) return s.p_l * n_l;
    return (s.p_l - s.c_l) * n_l + s.c_l * free;
}

double seller_risk_threshold(const ContractTerm& term, const SellerParams& s) {
    return s.lambda1 * expected_seller_utility(term, s) - term.amount * term.price;
}

double seller_risk(const ContractTerm& term, const SellerParams& s) {
    check_sold_amount(term, s.M, "seller_risk");
    if (!(s.c_l < s.p_l)) throw DomainError("seller_risk: closed form requires c_l < p_l");

    const int A = term.amount;
    const int free = s.M - A;
    const double r = seller_risk_threshold(term, s);

    if (r < 0.0) return 0.0;
    if (r > local_surplus(s.M, A, s)) return 1.0;

    // Largest n_l with S(n_l) <= r. The floors give it up to rounding of r; the two
    // loops move at most one step so the count agrees with S evaluated point-wise.
    const double step = s.p_l - s.c_l;
    const double knee = s.p_l * free + step;
    int n = 0;
    if (r < knee) {
        n = std::clamp(static_cast<int>(std::floor(r / s.p_l)), 0, free);
    } else {
        const int j = static_cast<int>(std::floor((r - s.p_l * free) / step));
        n = std::clamp(free + j, free + 1, s.M);
    }
    while (n < s.M && local_surplus(n + 1, A, s) <= r) ++n;
    while (n >= 0 && local_surplus(n, A, s) > r) --n;

    return (n + 1) / (s.M + 1.0);
}

double seller_risk_oracle(const ContractTerm& term, const SellerParams& s) {
    check_sold_amount(term, s.M, "seller_risk_oracle");
    const double r = seller_risk_threshold(term, s);
    int count = 0;
    for (int n = 0; n <= s.M; ++n) {
        if (local_surplus(n, term.amount, s) <= r) ++count;
    }
    return count / (s.M + 1.0);
}

double buyer_delay(double gamma, int amount, const BuyerParams& b) {
    if (!(gamma > 0.0)) throw DomainError("buyer_delay: gamma must be > 0");
    if (amount < 0) throw DomainError("buyer_delay: amount must be >= 0");
    return amount * b.d / (b.W * std::log2(1.0 + gamma));
}

double buyer_utility(double gamma, const ContractTerm& term, const BuyerParams& b) {
    return term.amount * b.tau - b.omega * term.amount * term.price -
           buyer_delay(gamma, term.amount, b);
}

double expected_buyer_utility(const ContractTerm& term, const BuyerParams& b) {
    const double per_vm =
        b.tau - b.omega * term.price - b.d / b.W * expected_inv_log_snr(b.eps1, b.eps2);
    return term.amount * per_vm;
}

std::optional<double> buyer_risk_exponent(const ContractTerm& term, const BuyerParams& b) {
    const double a = term.amount;
    const double denom = b.W * (a * b.tau - b.u_min * b.lambda1 - b.omega * a * term.price);
    if (!(denom > 0.0)) return std::nullopt;
    return a * b.d / denom;
}

double buyer_risk(const ContractTerm& term, const BuyerParams& b) {
    if (term.amount < 1) throw DomainError("buyer_risk: amount must be >= 1");
    const auto exponent = buyer_risk_exponent(term, b);
    if (!exponent) return 1.0;
    const double rp = *exponent;
    if (rp < std::log2(b.eps1 + 1.0)) return 0.0;
    if (rp > std::log2(b.eps2 + 1.0)) return 1.0;
    const double p = (std::exp2(rp) - b.eps1 - 1.0) / (b.eps2 - b.eps1);
    return std::clamp(p, 0.0, 1.0);
}

int tolerable_price_index(double gamma, const MarketConfig& cfg) {
    if (!(gamma > 0.0)) throw DomainError("tolerable_price_index: gamma must be > 0");
    const auto& b = cfg.buyer;
    const auto& s = cfg.seller;
    const double tolerable = b.tau / b.omega - b.d / (b.omega * b.W * std::log2(1.0 + gamma));
    const double steps = (tolerable - s.p_min) / s.delta_p;
    const double k = std::floor(steps + kGridSnap);
    return static_cast<int>(std::clamp(k, -1.0, 1e9));
}

std::optional<double> buyer_max_price(const MarketConfig& cfg) {
    const int k = tolerable_price_index(cfg.buyer.eps2, cfg);
    if (k < 0) return std::nullopt;
    return PriceGrid(cfg.seller).price(k);
}

}  // namespace edgefutures
