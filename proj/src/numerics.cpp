#include "edgefutures/numerics.hpp"

#include "edgefutures/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace edgefutures {

namespace {

constexpr double kSeriesLimit = 40.0;

// Ei(x) = gamma + ln x + sum_{k>=1} x^k / (k * k!). All terms are positive for x > 0.
double ei_series(double x) {
    double term = 1.0;  // x^k / k!
    double sum = 0.0;
    for (int k = 1; k < 500; ++k) {
        term *= x / k;
        const double add = term / k;
        sum += add;
        if (add <= sum * 1e-17) break;
    }
    return std::numbers::egamma + std::log(x) + sum;
}

// Ei(x) ~ e^x / x * sum_k k! / x^k, truncated at the smallest term.
double ei_asymptotic(double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double next = term * k / x;
        if (next > term) break;
        term = next;
        sum += term;
        if (term <= sum * 1e-17) break;
    }
    return std::exp(x) / x * sum;
}

}  // namespace

double exp_integral_ei(double x) {
    if (!std::isfinite(x) || x <= 0.0) {
        throw DomainError("exp_integral_ei: argument must be positive and finite, got " +
                          std::to_string(x));
    }
    if (x > 709.0) throw DomainError("exp_integral_ei: argument overflows double");
    return x < kSeriesLimit ? ei_series(x) : ei_asymptotic(x);
}

double expected_inv_log_snr(double eps1, double eps2) {
    if (!(eps1 > 0.0) || !(eps2 > eps1) || !std::isfinite(eps2)) {
        throw DomainError("expected_inv_log_snr: requires 0 < eps1 < eps2");
    }
    const double scale = std::numbers::ln2 / (eps2 - eps1);
    return scale * (exp_integral_ei(std::log1p(eps2)) - exp_integral_ei(std::log1p(eps1)));
}

double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

double discrete_uniform_mean(int m) {
    if (m < 1) throw DomainError("discrete_uniform_mean: m must be >= 1");
    return m / 2.0;
}

}  // namespace edgefutures
