#pragma once

// UAV transmit-power subproblem: per-slot concave information term minus a
// linearized eavesdropper term, maximized under average and peak power
// constraints by dual decomposition with bisection on the multiplier.

#include <span>
#include <vector>

#include "uavsec/secrecy_model.hpp"

namespace uavsec {

struct AliceSlotCoeffs {
    double a = 0.0; // numerator gain of the receiver-side fractional SINR
    double b = 0.0; // its saturation power (watts)
    double c = 0.0; // same pair for the eavesdropper side
    double d = 0.0;
    double a_lin = 0.0; // slope of the linearized eavesdropper term (>= 0)
};

// Coefficients of ln(1 + a p/(p+b)) - ln(1 + c p/(p+d)). alpha is clamped to
// [alpha_clamp, 1-alpha_clamp] before the 1/(1-alpha) divisions; values
// outside [0,1] throw std::invalid_argument.
AliceSlotCoeffs p1_coefficients(double alpha, double p_b, const SlotLink& link,
                                double alpha_clamp);

// Derivative of ln(1 + c p/(p+d)) at p_prev: the tangent slope used by the
// surrogate.
double eve_term_linear_coeff(double p_a_prev, double c, double d);

AliceSlotCoeffs make_alice_coeffs(double alpha, double p_b, const SlotLink& link,
                                  double p_a_prev, double alpha_clamp);

// argmax over [0, p_hat] of ln(1 + a p/(p+b)) - (a_lin + mu) p, in closed form.
double slot_alice_power_given_dual(const AliceSlotCoeffs& k, double mu, double p_hat);

// Full subproblem: per-slot closed forms at the bisected multiplier. The
// average constraint holds exactly; |sum - N p_bar| <= N bisection_tol when it
// binds.
std::vector<double> solve_alice_power(std::span<const AliceSlotCoeffs> coeffs,
                                      double p_bar, double p_hat, double bisection_tol);

} // namespace uavsec
