#pragma once

// Physical scenario: geometry, time discretization, channel constant, power
// budgets and solver knobs, plus the mobility constraints (C1-C3) and the
// best-effort reference trajectory.

#include <vector>

#include "uavsec/geometry.hpp"

namespace uavsec {

struct PowerBudget {
    double p_ave_w = 1e-3;    // average network power P_ave (watts)
    double split = 0.5;       // fraction of P_ave budgeted to the UAV transmitter
    double peak_factor = 4.0; // peak power as a multiple of P_ave, both ends

    double p_bar_a() const { return split * p_ave_w; }
    double p_bar_b() const { return (1.0 - split) * p_ave_w; }
    double p_hat_a() const { return peak_factor * p_ave_w; }
    double p_hat_b() const { return peak_factor * p_ave_w; }
};

struct SolverTolerances {
    double epsilon = 1e-4;        // outer termination: fractional ASR increase
    int max_outer_iters = 50;
    double bisection_tol = 1e-12; // dual bisection: per-slot average power slack
    double inner_tol = 1e-6;      // trajectory subproblem first-order residual
    double alpha_clamp = 1e-6;    // interior clamp for the power-split factor
};

struct ScenarioConfig {
    int n_slots = 100;        // N
    double horizon_s = 100.0; // T
    double altitude_m = 100.0;
    double speed_mps = 4.0;
    double gamma0 = 1e8;      // normalized reference SNR at 1 m, linear scale (1/W)
    Vec2 bob_xy{0.0, 0.0};
    Vec2 eve_xy{100.0, 0.0};
    Vec2 start_xy{50.0, 200.0};
    Vec2 end_xy{50.0, -200.0};
    PowerBudget budgets;
    SolverTolerances solver;

    double slot_len_s() const { return horizon_s / n_slots; }

    // Throws std::invalid_argument on a broken invariant or an infeasible
    // start/end pair.
    void validate() const;
};

// Horizontal waypoints, one per slot, at the fixed altitude.
struct Trajectory {
    std::vector<Vec2> waypoints;
};

struct TrajectoryViolation {
    enum class Kind { InitialStep, SlotStep, FinalStep }; // C1 / C2 / C3
    Kind kind;
    int slot;        // 1-based slot of the offending waypoint
    double excess_m; // distance beyond the per-slot displacement bound
};

// Normalized channel power gain gamma0 / (||uav - ground||^2 + H^2).
double channel_gain(Vec2 uav_xy, Vec2 ground_xy, const ScenarioConfig& cfg);

// Per-slot displacement bound V * T / N.
double max_displacement(const ScenarioConfig& cfg);

// Checks C1-C3 with 1e-9 m absolute slack. Empty result means feasible.
// Throws std::invalid_argument on waypoint-count mismatch.
std::vector<TrajectoryViolation> validate_trajectory(const Trajectory& traj,
                                                     const ScenarioConfig& cfg);

struct BaselinePlan {
    Trajectory trajectory;
    double path_length_m = 0.0; // length of the continuous best-effort path
    bool hovers = false;        // true when the fly-hover-fly branch applies
};

// Best-effort reference path: fly straight to the receiver at full speed,
// hover overhead as long as the horizon allows, then fly to the terminal
// point; when time is too short, turn at the point of the outbound segment
// that exactly exhausts the travel budget. Sampled at slot boundaries.
BaselinePlan plan_baseline(const ScenarioConfig& cfg);
Trajectory baseline_trajectory(const ScenarioConfig& cfg);

} // namespace uavsec
