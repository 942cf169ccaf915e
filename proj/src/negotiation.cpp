#include "edgefutures/negotiation.hpp"

#include "edgefutures/errors.hpp"
#include "edgefutures/format.hpp"

#include <algorithm>
#include <sstream>

namespace edgefutures {

namespace {

// Buyer line 9: maximize, ties toward the smaller amount.
bool buyer_prefers(const CandidateTerm& a, const CandidateTerm& b) {
    if (a.buyer_utility != b.buyer_utility) return a.buyer_utility > b.buyer_utility;
    return a.amount < b.amount;
}

// Seller line 14: maximize, ties toward higher price then smaller amount.
bool seller_prefers(const CandidateTerm& a, const CandidateTerm& b) {
    if (a.seller_utility != b.seller_utility) return a.seller_utility > b.seller_utility;
    if (a.price_index != b.price_index) return a.price_index > b.price_index;
    return a.amount < b.amount;
}

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<int> all_amounts(int M) {
    std::vector<int> out(static_cast<std::size_t>(M));
    for (int a = 1; a <= M; ++a) out[static_cast<std::size_t>(a - 1)] = a;
    return out;
}

// Quote loop shared by all mechanisms. `Sides` provides
//   seller_amounts(price), buyer_amounts(price),
//   buyer_objective(A, price), seller_objective(A, price).
template <typename Sides>
NegotiationResult descend(const MarketConfig& cfg, int tolerable_index, Sides& sides) {
    NegotiationResult result;
    if (tolerable_index < 0) return result;

    const PriceGrid grid(cfg.seller);
    const int top = std::min(tolerable_index, grid.max_index());

    for (int k = top; k >= 0; --k) {
        NegotiationStep step;
        step.price_index = k;
        step.price = grid.price(k);
        step.seller_amounts = sides.seller_amounts(step.price);
        step.buyer_amounts = sides.buyer_amounts(step.price);

        const auto overlap = intersect(step.seller_amounts, step.buyer_amounts);
        if (!overlap.empty()) {
            std::optional<CandidateTerm> best;
            for (int a : overlap) {
                CandidateTerm c{a, k, step.price, sides.buyer_objective(a, step.price), 0.0};
                if (!best || buyer_prefers(c, *best)) best = c;
            }
            best->seller_utility = sides.seller_objective(best->amount, step.price);
            step.candidate = best;
            result.candidates.push_back(*best);
        }
        result.trace.iterations.push_back(std::move(step));
    }

    if (!result.candidates.empty()) {
        const auto chosen = std::min_element(result.candidates.begin(), result.candidates.end(),
                                             seller_prefers);
        result.contract = chosen->term();
    }
    return result;
}

struct FuturesSides {
    const MarketConfig& cfg;
    bool with_risk;

    std::vector<int> seller_amounts(double price) const {
        return with_risk ? seller_feasible_amounts(price, cfg.seller) : all_amounts(cfg.seller.M);
    }
    std::vector<int> buyer_amounts(double price) const {
        return with_risk ? buyer_feasible_amounts(price, cfg.seller.M, cfg.buyer)
                         : all_amounts(cfg.seller.M);
    }
    double buyer_objective(int a, double price) const {
        return expected_buyer_utility({a, price}, cfg.buyer);
    }
    double seller_objective(int a, double price) const {
        return expected_seller_utility({a, price}, cfg.seller);
    }
};

struct OnsiteSides {
    const MarketConfig& cfg;
    int n_l;
    double gamma;

    std::vector<int> seller_amounts(double price) const {
        std::vector<int> out;
        for (int a = 1; a <= cfg.seller.M; ++a) {
            if (a * price - seller_cost(n_l, a, cfg.seller) > 0.0) out.push_back(a);
        }
        return out;
    }
    std::vector<int> buyer_amounts(double price) const {
        std::vector<int> out;
        for (int a = 1; a <= cfg.seller.M; ++a) {
            if (buyer_utility(gamma, {a, price}, cfg.buyer) > 0.0) out.push_back(a);
        }
        return out;
    }
    double buyer_objective(int a, double price) const {
        return buyer_utility(gamma, {a, price}, cfg.buyer);
    }
    double seller_objective(int a, double price) const {
        return seller_utility(n_l, {a, price}, cfg.seller);
    }
};

}  // namespace

std::vector<int> seller_feasible_amounts(double price, const SellerParams& s) {
    std::vector<int> out;
    for (int a = 1; a <= s.M; ++a) {
        if (seller_risk({a, price}, s) <= s.lambda2) out.push_back(a);
    }
    return out;
}

std::vector<int> buyer_feasible_amounts(double price, int M, const BuyerParams& b) {
    std::vector<int> out;
    for (int a = 1; a <= M; ++a) {
        if (buyer_risk({a, price}, b) <= b.lambda2) out.push_back(a);
    }
    return out;
}

NegotiationResult negotiate_futures(const MarketConfig& cfg) {
    cfg.validate();
    FuturesSides sides{cfg, true};
    return descend(cfg, tolerable_price_index(cfg.buyer.eps2, cfg), sides);
}

NegotiationResult negotiate_futures_no_risk(const MarketConfig& cfg) {
    cfg.validate();
    FuturesSides sides{cfg, false};
    return descend(cfg, tolerable_price_index(cfg.buyer.eps2, cfg), sides);
}

NegotiationResult negotiate_onsite(int n_l, double gamma, const MarketConfig& cfg) {
    cfg.validate();
    if (n_l < 0 || n_l > cfg.seller.M) throw DomainError("negotiate_onsite: n_l outside [0, M]");
    if (!(gamma > 0.0)) throw DomainError("negotiate_onsite: gamma must be > 0");
    OnsiteSides sides{cfg, n_l, gamma};
    return descend(cfg, tolerable_price_index(gamma, cfg), sides);
}

std::string format_amounts(const std::vector<int>& amounts) {
    if (amounts.empty()) return "-";
    std::ostringstream out;
    std::size_t i = 0;
    while (i < amounts.size()) {
        std::size_t j = i;
        while (j + 1 < amounts.size() && amounts[j + 1] == amounts[j] + 1) ++j;
        if (i > 0) out << ',';
        out << amounts[i];
        if (j > i) out << '-' << amounts[j];
        i = j + 1;
    }
    return out.str();
}

std::string format_trace(const NegotiationTrace& trace) {
    std::ostringstream out;
    for (const auto& step : trace.iterations) {
        out << "k=" << step.price_index << " price=" << format_double(step.price)
            << " seller=" << format_amounts(step.seller_amounts)
            << " buyer=" << format_amounts(step.buyer_amounts) << " candidate=";
        if (step.candidate) {
            out << step.candidate->amount << '@' << format_double(step.candidate->price);
        } else {
            out << "none";
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace edgefutures
