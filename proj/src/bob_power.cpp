#include "uavsec/bob_power.hpp"

#include <algorithm>
#include <cmath>

namespace uavsec {

BobSlotCoeffs p3_coefficients(double alpha, double p_a, const SlotLink& link) {
    const double h = link.h_ab;
    return {alpha * p_a * h * h, alpha * p_a * h, h, (1.0 - alpha) * p_a * h + 1.0};
}

double bob_power_root(const BobSlotCoeffs& k, double lambda, double p_hat) {
    const double gain = k.k0 * k.k3 - k.k1 * k.k2; // marginal-rate numerator
    const double a2 = k.k2 * (k.k0 + k.k2);
    if (a2 <= 0.0 || gain <= 0.0) return 0.0;
    const double a1 = k.k1 * k.k2 + 2.0 * k.k2 * k.k3 + k.k0 * k.k3;
    const double a0 = k.k3 * (k.k1 + k.k3) - gain / lambda;
    const double disc = a1 * a1 - 4.0 * a0 * a2;
    if (disc <= 0.0) return 0.0;
    // (sqrt(disc) - a1)/(2 a2) rewritten to avoid cancellation for a0 near 0.
    const double root = -2.0 * a0 / (a1 + std::sqrt(disc));
    return std::clamp(root, 0.0, p_hat);
}

std::vector<double> solve_bob_power(std::span<const BobSlotCoeffs> coeffs,
                                    double p_bar, double p_hat, double bisection_tol) {
    const auto n = coeffs.size();
    const double budget = static_cast<double>(n) * p_bar;

    // lambda -> 0+: every slot with positive marginal rate rails at the peak.
    std::vector<double> p(n);
    double peak_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& k = coeffs[i];
        p[i] = (k.k0 * k.k3 - k.k1 * k.k2 > 0.0 && k.k2 > 0.0) ? p_hat : 0.0;
        peak_sum += p[i];
    }
    if (peak_sum <= budget) return p;

    auto eval = [&](double lambda, std::vector<double>& out) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = bob_power_root(coeffs[i], lambda, p_hat);
            sum += out[i];
        }
        return sum;
    };

    double lam_lo = 1e-12, lam_hi = 1.0;
    std::vector<double> scratch(n);
    while (eval(lam_hi, scratch) > budget) {
        lam_lo = lam_hi;
        lam_hi *= 2.0;
        if (lam_hi > 1e60) break; // sum -> 0 as lambda grows; safety stop
    }
    p = scratch; // feasible side
    for (int it = 0; it < 400; ++it) {
        const double lambda = 0.5 * (lam_lo + lam_hi);
        const double sum = eval(lambda, scratch);
        if (sum > budget) {
            lam_lo = lambda;
        } else {
            lam_hi = lambda;
            p = scratch;
            if (budget - sum <= static_cast<double>(n) * bisection_tol) break;
        }
    }
    return p;
}

} // namespace uavsec
