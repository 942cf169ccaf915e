#pragma once

namespace edgefutures {

/// Exponential integral Ei(x) = PV of the integral of e^t/t over (-inf, x], for x > 0.
///
/// Power series below x = 40, asymptotic expansion above. Relative error is a few
/// ulp over (0, 700]; near the root x0 ~ 0.3725 the error is absolute (~1e-16).
/// Throws DomainError for x <= 0 or non-finite x.
double exp_integral_ei(double x);

/// E[1 / log2(1 + g)] for g ~ U(eps1, eps2), via
///   ln2 / (eps2 - eps1) * (Ei(ln(1 + eps2)) - Ei(ln(1 + eps1))).
/// Requires 0 < eps1 < eps2 (linear SNR, not dB).
double expected_inv_log_snr(double eps1, double eps2);

/// 10^(x_db / 10).
double db_to_linear(double x_db);

/// Mean of the discrete uniform distribution on {0, 1, ..., m}.
double discrete_uniform_mean(int m);

}  // namespace edgefutures
