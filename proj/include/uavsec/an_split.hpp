#pragma once

// Power-split subproblem: per-slot optimal information/AN split from the
// closed form, with a unimodal scalar search fallback where the closed form
// does not apply.

#include <optional>
#include <span>
#include <vector>

#include "uavsec/scenario.hpp"

namespace uavsec {

struct GammaTriple {
    double g1 = 0.0; // p_a * h_ab
    double g2 = 0.0; // p_b * h_ab
    double g3 = 0.0; // p_a * h_ae
};

// Objective ratio: exp of the per-slot unclamped secrecy exponent,
// psi(x) = (1+g_b)/(1+g_e) as a function of the split x.
double psi(double x, const GammaTriple& g);

// Stationary point of psi, clamped to [0,1]. Empty when the radicand is not
// positive (g2 g3 <= g1) and the caller must fall back to the scalar search.
std::optional<double> alpha_closed_form(const GammaTriple& g);

// High-SNR limit of the closed form; diagnostic only. Throws on p_a = 0.
double alpha_high_snr(double p_a, double p_b);

// Per-slot maximizer of psi, clamped to [alpha_clamp, 1-alpha_clamp]. Slots
// with g1 = 0 keep their previous split (constant objective).
std::vector<double> solve_alpha(std::span<const GammaTriple> gammas,
                                std::span<const double> alpha_prev,
                                const SolverTolerances& tol);

} // namespace uavsec
