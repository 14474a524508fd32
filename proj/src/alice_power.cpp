#include "uavsec/alice_power.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uavsec {

namespace {

double clamp_interior(double alpha, double alpha_clamp) {
    if (alpha < 0.0 || alpha > 1.0)
        throw std::invalid_argument("alpha outside [0,1]");
    return std::clamp(alpha, alpha_clamp, 1.0 - alpha_clamp);
}

} // namespace

AliceSlotCoeffs p1_coefficients(double alpha, double p_b, const SlotLink& link,
                                double alpha_clamp) {
    const double al = clamp_interior(alpha, alpha_clamp);
    const double one_minus = 1.0 - al;
    AliceSlotCoeffs k;
    k.a = al / one_minus * (1.0 + p_b * link.h_ab);
    k.b = (p_b * link.h_ab + 1.0) / (one_minus * link.h_ab);
    k.c = al / one_minus;
    k.d = 1.0 / (one_minus * link.h_ae);
    // Both fractional-SINR terms are concave and non-decreasing only with
    // strictly positive constants; refuse degenerate slots outright.
    if (!(k.a > 0.0 && k.b > 0.0 && k.c > 0.0 && k.d > 0.0))
        throw std::invalid_argument("degenerate slot coefficients");
    return k;
}

double eve_term_linear_coeff(double p_a_prev, double c, double d) {
    return c * d / ((p_a_prev + d) * (d + (c + 1.0) * p_a_prev));
}

AliceSlotCoeffs make_alice_coeffs(double alpha, double p_b, const SlotLink& link,
                                  double p_a_prev, double alpha_clamp) {
    AliceSlotCoeffs k = p1_coefficients(alpha, p_b, link, alpha_clamp);
    k.a_lin = eve_term_linear_coeff(p_a_prev, k.c, k.d);
    return k;
}

double slot_alice_power_given_dual(const AliceSlotCoeffs& k, double mu, double p_hat) {
    const double slope = k.a_lin + mu;
    if (slope >= k.a / k.b) return 0.0; // objective already decreasing at p = 0
    // Stationarity a b / (((1+a)p + b)(p + b)) = slope gives
    // (1+a) p^2 + b (2+a) p + (b^2 - a b / slope) = 0; the constant term is
    // negative here, so the positive root is stable in this form.
    const double c2 = 1.0 + k.a;
    const double c1 = k.b * (2.0 + k.a);
    const double c0 = k.b * k.b - k.a * k.b / slope;
    const double root = -2.0 * c0 / (c1 + std::sqrt(c1 * c1 - 4.0 * c0 * c2));
    return std::clamp(root, 0.0, p_hat);
}

std::vector<double> solve_alice_power(std::span<const AliceSlotCoeffs> coeffs,
                                      double p_bar, double p_hat, double bisection_tol) {
    const auto n = coeffs.size();
    const double budget = static_cast<double>(n) * p_bar;
    auto eval = [&](double mu, std::vector<double>& p) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = slot_alice_power_given_dual(coeffs[i], mu, p_hat);
            sum += p[i];
        }
        return sum;
    };

    std::vector<double> p(n);
    if (eval(0.0, p) <= budget) return p;

    double mu_lo = 0.0, mu_hi = 1.0;
    std::vector<double> scratch(n);
    while (eval(mu_hi, scratch) > budget) {
        mu_lo = mu_hi;
        mu_hi *= 2.0;
        if (mu_hi > 1e30) break; // cannot happen with positive a_lin; safety stop
    }
    p = scratch; // feasible side
    for (int it = 0; it < 400; ++it) {
        const double mu = 0.5 * (mu_lo + mu_hi);
        const double sum = eval(mu, scratch);
        if (sum > budget) {
            mu_lo = mu;
        } else {
            mu_hi = mu;
            p = scratch;
            if (budget - sum <= static_cast<double>(n) * bisection_tol) break;
        }
    }
    return p;
}

} // namespace uavsec
