#pragma once

// Receiver AN-power subproblem: exact per-slot closed form from the KKT
// stationarity condition plus bisection on the average-power multiplier.

#include <span>
#include <vector>

#include "uavsec/secrecy_model.hpp"

namespace uavsec {

struct BobSlotCoeffs {
    double k0 = 0.0;
    double k1 = 0.0;
    double k2 = 0.0;
    double k3 = 0.0;
};

// Coefficients of ln(1 + (k0 p + k1)/(k2 p + k3)) as a function of the
// receiver power.
BobSlotCoeffs p3_coefficients(double alpha, double p_a, const SlotLink& link);

// min{p_hat, max{0, positive root of the stationarity quadratic}} at the given
// multiplier. Degenerate slots (constant objective) return 0.
double bob_power_root(const BobSlotCoeffs& k, double lambda, double p_hat);

std::vector<double> solve_bob_power(std::span<const BobSlotCoeffs> coeffs,
                                    double p_bar, double p_hat, double bisection_tol);

} // namespace uavsec
