#pragma once

// Trajectory subproblem: concave surrogate of the slot rates in the waypoint
// sequence (affine bound on the receiver term, linearized eavesdropper
// distance), maximized by projected gradient ascent over the mobility
// constraints with the terminal waypoint pinned to the final location.

#include <optional>
#include <span>
#include <vector>

#include "uavsec/scenario.hpp"

namespace uavsec {

struct AffineForm2 {
    Vec2 grad{0.0, 0.0};
    double offset = 0.0;

    double operator()(Vec2 w) const { return dot(grad, w) + offset; }
};

struct P5Coeffs {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    bool degenerate = false; // no transmit power: slot rate constant in position
};

// Constants of ln(c0 + c1/s) - ln(1 + c2/(c3 + v)) in the squared distances.
// alpha is interior-clamped before the divisions.
P5Coeffs p5_coefficients(double alpha, double p_a, double p_b,
                         const ScenarioConfig& cfg);

// Slope of the affine bound of ln(c0 + c1/s) at s_prev; never positive.
double bob_term_linear_coeff(double s_prev, double c0, double c1);

// Affine global lower bound of ||w - eve||^2 + H^2, tight at w_prev.
AffineForm2 eve_distance_linearization(Vec2 w_prev, Vec2 eve_xy,
                                       const ScenarioConfig& cfg);

struct TrajSlotCoeffs {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double b_lin = 0.0;   // slope of the receiver-term bound at the expansion point
    AffineForm2 eve_lin;  // lower bound of the squared eavesdropper distance
    double offset = 0.0;  // affine constant dropped from the surrogate objective
    Vec2 bob_xy{0.0, 0.0}; // anchor of the receiver distance term
    double h_sq = 0.0;     // squared altitude added inside squared distances
    bool degenerate = false;
};

// Per-slot surrogate data expanded at the previous trajectory.
std::vector<TrajSlotCoeffs> make_traj_coeffs(const ScenarioConfig& cfg,
                                             const Trajectory& prev,
                                             std::span<const double> alpha,
                                             std::span<const double> p_a,
                                             std::span<const double> p_b);

// sum_n b_lin (||w - bob||^2 + H^2) - ln(1 + c2/(c3 + v_lb(w))), skipping
// degenerate slots. Empty when the linearized distance undershoots the domain
// guard (step rejection).
std::optional<double> surrogate_objective(const Trajectory& traj,
                                          std::span<const TrajSlotCoeffs> coeffs);

struct TrajSolveResult {
    Trajectory trajectory;
    std::vector<double> s; // ||w - bob||^2 + H^2 at the output
    std::vector<double> v; // linearized eavesdropper squared distance at the output
    bool null_step = false;
    double residual = 0.0; // gradient-mapping norm at the last accepted step
    int inner_iters = 0;
};

// Maximizes the surrogate from a feasible previous trajectory. The output is
// always C1-C3 feasible and never decreases the surrogate; a null step is
// returned when no feasible improving step exists.
TrajSolveResult solve_trajectory(const ScenarioConfig& cfg, const Trajectory& prev,
                                 std::span<const double> alpha,
                                 std::span<const double> p_a,
                                 std::span<const double> p_b);

} // namespace uavsec
