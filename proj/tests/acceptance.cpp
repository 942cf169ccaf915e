// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "edgefutures/commands.hpp"
#include "edgefutures/config.hpp"
#include "edgefutures/market_model.hpp"
#include "edgefutures/negotiation.hpp"
#include "edgefutures/numerics.hpp"
#include "edgefutures/report.hpp"
#include "edgefutures/sim_harness.hpp"
#include "oracles.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace edgefutures;
namespace fs = std::filesystem;
using Rational = boost::multiprecision::cpp_rational;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double limit_s;  // 0: no runtime limit
    std::function<Verdict()> run;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const ConfigTemplate& table2_template() {
    static const ConfigTemplate t =
        ConfigTemplate::parse(slurp(EDGEFUTURES_SOURCE_DIR "/configs/table2.cfg"));
    return t;
}

constexpr int kSeeds = 30;
constexpr int kTrading = 200;

struct SeedRun {
    MarketConfig config;
    MetricsReport futures, onsite, no_risk;
};

// The 30-seed battery shared by the Table 2 criteria: one conditioned draw per seed,
// all strategies on the same environment stream.
const std::vector<SeedRun>& battery() {
    static const std::vector<SeedRun> runs = [] {
        std::vector<SeedRun> out;
        for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
            SeedRun r;
            r.config = draw_config(table2_template(), seed, true);
            ScenarioSpec spec;
            spec.config = r.config;
            spec.n_trading = kTrading;
            spec.seed = seed;
            for (Strategy s : kAllStrategies) {
                spec.strategy = s;
                const MetricsReport m = compute_metrics(run_trading_sequence(spec));
                (s == Strategy::futures ? r.futures : s == Strategy::onsite ? r.onsite : r.no_risk) = m;
            }
            out.push_back(r);
        }
        return out;
    }();
    return runs;
}

// ---------------------------------------------------------------------------------

Verdict closed_form_risk() {
    long cases = 0;
    long mismatches = 0;
    const std::pair<double, double> costs[] = {{0.5, 0.4}, {0.6, 0.5}};
    for (int M = 1; M <= 25; ++M) {
        for (const auto& [p_l, c_l] : costs) {
            for (double l1 : {0.95, 0.99}) {
                SellerParams s;
                s.M = M;
                s.p_l = p_l;
                s.c_l = c_l;
                s.p_min = 0.6;
                s.delta_p = 0.1;
                s.kappa = 4;
                s.lambda1 = l1;
                s.validate();
                for (double P : price_grid(s)) {
                    for (int A = 1; A <= M; ++A) {
                        ++cases;
                        if (seller_risk({A, P}, s) != seller_risk_oracle({A, P}, s)) ++mismatches;
                    }
                }
            }
        }
    }
    return {mismatches == 0, fmt("%ld lattice points, %ld mismatches", cases, mismatches)};
}

Rational exact(double x) { return Rational(x); }

Verdict expectation_identities() {
    // E[C^s]: closed form and enumeration as exact rationals of the stored c_l, and the
    // double result within a few ulp of that rational (correctly rounded for dyadic c_l).
    long cost_cases = 0;
    long cost_bad = 0;
    for (double c_l : {0.4, 0.45, 0.375, 0.25, 0.4321}) {
        for (int M = 1; M <= 25; ++M) {
            SellerParams s;
            s.M = M;
            s.p_l = 0.5;
            s.c_l = c_l;
            for (int A = 0; A <= M; ++A) {
                ++cost_cases;
                Rational enumerated = 0;
                for (int n = 0; n <= M; ++n) enumerated += exact(c_l) * std::max(0, n - (M - A));
                enumerated /= M + 1;
                const Rational closed = exact(c_l) * (A * A + A) / (2 * (M + 1));
                const Rational got = exact(expected_seller_cost(A, s));
                const double ulp = std::nextafter(static_cast<double>(enumerated), 1e300) -
                                   static_cast<double>(enumerated);
                const bool dyadic = c_l * 16 == std::floor(c_l * 16);
                const Rational gap = abs(got - enumerated);
                const bool ok = closed == enumerated &&
                                (dyadic ? expected_seller_cost(A, s) == static_cast<double>(enumerated)
                                        : gap <= exact(4 * ulp));
                if (!ok) ++cost_bad;
            }
        }
    }

    // E[1/log2(1+g)] against quadrature on a spread of supports.
    double worst_quad = 0.0;
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::pair<double, double>> supports = {{1.0, 3.0}, {10.0, db_to_linear(23.0)}};
    for (int i = 0; i < 48; ++i) {
        const double a = 0.05 + 50.0 * u(gen);
        supports.push_back({a, a + 0.01 + 500.0 * u(gen)});
    }
    for (const auto& [a, b] : supports) {
        const double d = std::fabs(expected_inv_log_snr(a, b) -
                                   static_cast<double>(oracle::mean_inv_log_snr(a, b)));
        worst_quad = std::max(worst_quad, d);
    }

    // Sampling check with 10^7 draws on two supports.
    double worst_z = 0.0;
    for (const auto& [a, b] : {std::pair{10.0, db_to_linear(23.0)}, std::pair{1.0, 3.0}}) {
        const auto est = oracle::monte_carlo(20240101, 10'000'000, [a, b](auto& g) {
            std::uniform_real_distribution<double> gamma(a, b);
            return 1.0 / std::log2(1.0 + gamma(g));
        });
        worst_z = std::max(worst_z, std::fabs(est.mean - expected_inv_log_snr(a, b)) / est.stderr_);
    }

    const bool pass = cost_bad == 0 && worst_quad <= 1e-9 && worst_z <= 3.0;
    return {pass, fmt("E[C]: %ld/%ld exact; E[1/log2]: max |quad diff| %.2e (<= 1e-9), "
                      "max MC z %.2f (<= 3)",
                      cost_cases - cost_bad, cost_cases, worst_quad, worst_z)};
}

oracle::Deal as_deal(const NegotiationResult& r) {
    if (r.failed()) return {};
    for (const auto& c : r.candidates) {
        if (c.term() == *r.contract) return {false, c.amount, c.price_index};
    }
    return {false, -1, -1};
}

Verdict negotiation_oracle() {
    std::mt19937_64 gen(3);
    const int configs = 600;
    int futures_bad = 0;
    int onsite_bad = 0;
    int contracts = 0;
    int onsite_deals = 0;
    for (int i = 0; i < configs; ++i) {
        const MarketConfig c = oracle::random_small_config(gen);
        const auto f = negotiate_futures(c);
        contracts += f.failed() ? 0 : 1;
        if (!(as_deal(f) == oracle::futures(c, true))) ++futures_bad;
        if (!(as_deal(negotiate_futures_no_risk(c)) == oracle::futures(c, false))) ++futures_bad;
        for (int j = 0; j < 3; ++j) {
            const int n_l = std::uniform_int_distribution<int>(0, c.seller.M)(gen);
            const double g = std::uniform_real_distribution<double>(c.buyer.eps1, c.buyer.eps2)(gen);
            const auto o = negotiate_onsite(n_l, g, c);
            onsite_deals += o.failed() ? 0 : 1;
            if (!(as_deal(o) == oracle::onsite(c, n_l, g))) ++onsite_bad;
        }
    }
    return {futures_bad == 0 && onsite_bad == 0,
            fmt("%d configs (M <= 10, kappa <= 6): futures %d mismatches (%d contracts), "
                "onsite %d mismatches over %d markets (%d deals)",
                configs, futures_bad, contracts, onsite_bad, 3 * configs, onsite_deals)};
}

Verdict table2_structure() {
    int futures_ok = 0;
    int onsite_failing = 0;
    int nc_ok = 0;
    double min_ratio = 1e300;
    for (const auto& r : battery()) {
        const bool f = r.futures.tfail == 0 && r.futures.tfair == 0.0 && r.no_risk.tfail == 0 &&
                       r.no_risk.tfair == 0.0;
        futures_ok += f ? 1 : 0;
        onsite_failing += r.onsite.tfail > 0 ? 1 : 0;
        const double ratio = static_cast<double>(r.onsite.nc_total) /
                             std::max(r.futures.nc_total, r.no_risk.nc_total);
        min_ratio = std::min(min_ratio, ratio);
        nc_ok += ratio >= 10.0 ? 1 : 0;
    }
    const bool pass = futures_ok == kSeeds && onsite_failing * 10 >= kSeeds * 8 && nc_ok == kSeeds;
    return {pass, fmt("futures TFail=TFair=0 in %d/%d; onsite TFail>0 in %d/%d (need >= 24); "
                      "onsite/futures NC >= 10x in %d/%d (min %.1fx)",
                      futures_ok, kSeeds, onsite_failing, kSeeds, nc_ok, kSeeds, min_ratio)};
}

// One-sided paired t statistic of mean(a - b) > 0.
double paired_t(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += a[i] - b[i];
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) ss += (a[i] - b[i] - mean) * (a[i] - b[i] - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (sd == 0.0) return mean > 0.0 ? INFINITY : (mean < 0.0 ? -INFINITY : 0.0);
    return mean / (sd / std::sqrt(static_cast<double>(n)));
}

Verdict utility_ordering() {
    std::vector<double> ub_f, ub_o, ub_n, us_f, us_o, us_n;
    for (const auto& r : battery()) {
        ub_f.push_back(r.futures.sum_buyer);
        ub_o.push_back(r.onsite.sum_buyer);
        ub_n.push_back(r.no_risk.sum_buyer);
        us_f.push_back(r.futures.sum_seller);
        us_o.push_back(r.onsite.sum_seller);
        us_n.push_back(r.no_risk.sum_seller);
    }
    const boost::math::students_t dist(kSeeds - 1);
    const double crit = boost::math::quantile(dist, 0.95);
    const double t1 = paired_t(ub_f, ub_o);
    const double t2 = paired_t(ub_o, ub_n);
    const double t3 = paired_t(us_n, us_f);
    const double t4 = paired_t(us_n, us_o);
    const auto mean = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };
    const bool pass = t1 > crit && t2 > crit && t3 > crit && t4 > crit;
    return {pass,
            fmt("t crit %.3f; Ub proposed>onsite t=%.2f, onsite>no-risk t=%.2f; "
                "Us no-risk>proposed t=%.2f, no-risk>onsite t=%.2f; "
                "mean Ub %.1f/%.1f/%.1f, mean Us %.1f/%.1f/%.1f (proposed/onsite/no-risk)",
                crit, t1, t2, t3, t4, mean(ub_f), mean(ub_o), mean(ub_n), mean(us_f), mean(us_o),
                mean(us_n))};
}

Verdict sweep_trends() {
    ScenarioSpec base;
    base.strategy = Strategy::onsite;
    base.n_trading = 2000;
    base.seed = 1;
    const std::vector<double> dps = {0.2, 0.01, 0.001};
    const auto reports = run_sweep(base, SweepAxis::delta_p, dps);
    bool increasing = true;
    bool abar_ok = true;
    for (std::size_t i = 1; i < reports.size(); ++i) {
        increasing = increasing && reports[i].nc_mean > reports[i - 1].nc_mean;
        abar_ok = abar_ok && reports[i].abar <= reports[i - 1].abar;
    }
    const double ratio = reports[2].nc_mean / reports[0].nc_mean;
    return {increasing && ratio > 50.0 && abar_ok,
            fmt("onsite NC/trading %.4g, %.4g, %.4g (ratio %.1fx, need > 50x); "
                "ABAR %.4g, %.4g, %.4g %%",
                reports[0].nc_mean, reports[1].nc_mean, reports[2].nc_mean, ratio,
                reports[0].abar, reports[1].abar, reports[2].abar)};
}

MarketConfig random_config(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    MarketConfig c;
    auto& s = c.seller;
    auto& b = c.buyer;
    s.M = 1 + static_cast<int>(u(gen) * 50);
    s.p_l = 0.3 + 0.4 * u(gen);
    s.c_l = s.p_l * (0.05 + 0.9 * u(gen));
    s.p_min = s.p_l + 0.5 * u(gen);
    s.delta_p = 0.001 + 0.2 * u(gen);
    s.kappa = 1 + static_cast<int>(u(gen) * 20);
    s.lambda1 = 0.5 + 0.49999 * u(gen);
    b.tau = 0.5 + u(gen);
    b.omega = 0.5 + u(gen);
    b.d = 1e6 + 9e6 * u(gen);
    b.W = 1e6 + 9e6 * u(gen);
    b.eps1 = 1.0 + 20.0 * u(gen);
    b.eps2 = b.eps1 + 1.0 + 300.0 * u(gen);
    c.validate();
    return c;
}

Verdict monotonicity() {
    std::mt19937_64 gen(7);
    long checks = 0;
    long violations = 0;
    const auto expect = [&](bool ok) {
        ++checks;
        violations += ok ? 0 : 1;
    };
    for (int i = 0; i < 1000; ++i) {
        const MarketConfig c = random_config(gen);
        const auto& s = c.seller;
        const auto& b = c.buyer;
        const PriceGrid grid(s);
        for (int k = 0; k < s.kappa; ++k) {
            const double P = grid.price(k);
            const double Q = grid.price(k + 1);
            for (int A = 1; A <= s.M; ++A) {
                expect(expected_seller_utility({A, Q}, s) > expected_seller_utility({A, P}, s));
                expect(expected_buyer_utility({A, Q}, b) < expected_buyer_utility({A, P}, b));
                expect(expected_buyer_utility({A, P}, b) == A * expected_buyer_utility({1, P}, b));
            }
            for (int A = 0; A + 2 <= s.M; ++A) {
                const double second = expected_seller_utility({A + 2, P}, s) -
                                      2.0 * expected_seller_utility({A + 1, P}, s) +
                                      expected_seller_utility({A, P}, s);
                expect(second < 0.0);
            }
            expect(expected_buyer_utility({0, P}, b) == 0.0);
        }
        for (int j = 0; j < 20; ++j) {
            const double g = b.eps1 + (b.eps2 - b.eps1) * j / 20.0;
            const int A = 1 + j % s.M;
            expect(buyer_utility(g * 1.001, {A, s.p_min}, b) > buyer_utility(g, {A, s.p_min}, b));
        }
    }
    return {violations == 0, fmt("1000 configs, %ld sign checks, %ld violations", checks, violations)};
}

Verdict determinism() {
    const fs::path root = fs::temp_directory_path() / "edgefutures_acceptance";
    fs::remove_all(root);
    RunManifest m;
    m.command = Command::compare;
    m.config_path = EDGEFUTURES_SOURCE_DIR "/configs/table2.cfg";
    m.require_contract = true;
    m.seed = 11;
    std::ostringstream sink;
    bool same_files = true;
    for (const char* run : {"a", "b"}) {
        m.out_dir = root / run;
        if (run_manifest(m, sink, sink) != exit_status::ok) same_files = false;
    }
    for (const char* f : {"trading.csv", "summary.csv", "config"}) {
        const std::string a = slurp(root / "a" / f);
        same_files = same_files && !a.empty() && a == slurp(root / "b" / f);
    }

    bool same_sweeps = true;
    int cells = 0;
    ScenarioSpec base;
    base.config = draw_config(table2_template(), 12, true);
    base.n_trading = 300;
    base.seed = 12;
    const std::vector<double> ms = {5, 10, 25, 40};
    const std::vector<double> dps = {0.2, 0.05, 0.01};
    for (Strategy s : kAllStrategies) {
        base.strategy = s;
        for (auto [axis, values] : {std::pair{SweepAxis::M, &ms}, std::pair{SweepAxis::delta_p, &dps}}) {
            SweepOptions serial;
            SweepOptions parallel;
            parallel.execution = Execution::parallel;
            same_sweeps = same_sweeps && run_sweep(base, axis, *values, serial) ==
                                             run_sweep(base, axis, *values, parallel);
            cells += static_cast<int>(values->size());
        }
    }
    return {same_files && same_sweeps,
            fmt("compare reruns byte-identical: %s; serial == parallel over %d sweep cells: %s",
                same_files ? "yes" : "no", cells, same_sweeps ? "yes" : "no")};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "closed-form seller risk equals enumeration", 10, closed_form_risk},
        {2, "expectation identities", 30, expectation_identities},
        {3, "negotiation equals exhaustive grid search", 60, negotiation_oracle},
        {4, "trading-sequence structure (30 seeds, N = 200)", 60, table2_structure},
        {5, "utility ordering at 95% (paired, 30 seeds)", 0, utility_ordering},
        {6, "price-step sweep trends (N = 2000)", 120, sweep_trends},
        {7, "monotonicity of the utility closed forms", 0, monotonicity},
        {8, "determinism of compare and sweeps", 0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.limit_s <= 0.0 || secs < c.limit_s;
        const bool pass = v.pass && in_time;
        failed += pass ? 0 : 1;
        std::string timing = fmt("%.2f s", secs);
        if (c.limit_s > 0.0) timing += fmt(" < %.0f s%s", c.limit_s, in_time ? "" : " EXCEEDED");
        std::cout << (pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.title << ": "
                  << v.detail << " (" << timing << ")" << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed"
              << std::endl;
    return failed == 0 ? 0 : 1;
}
