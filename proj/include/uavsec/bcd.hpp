#pragma once

// Outer block-coordinate loop: UAV power, receiver power, power split,
// trajectory, cycled until the fractional ASR increase drops below epsilon.
// Benchmark schemes freeze subsets of the blocks.

#include <optional>
#include <string_view>
#include <utility>

#include "uavsec/secrecy_model.hpp"

namespace uavsec {

enum class SchemeKind {
    JTDORA, // joint trajectory design and resource allocation (all blocks)
    ANOPC,  // AN with optimized powers, fixed split, reference trajectory
    ANTD,   // AN with trajectory design, fixed powers and split
    ANERA,  // AN with equal resource allocation (the initial point, no iteration)
    TDPC,   // trajectory design and power control without AN
};

const char* scheme_name(SchemeKind scheme);
std::optional<SchemeKind> scheme_from_name(std::string_view name);

struct SolveReport {
    std::vector<double> asr_trace; // exact ASR (bps/Hz), entry 0 = initial point
    Trajectory final_trajectory;
    PowerAllocation final_alloc;
    int iterations = 0;
    bool converged = false;
    double wall_time_s = 0.0;
};

// Reference trajectory plus the equal-allocation powers and split.
std::pair<Trajectory, PowerAllocation> initial_point(const ScenarioConfig& cfg);

SolveReport bcd_solve(const ScenarioConfig& cfg, SchemeKind scheme);

} // namespace uavsec
