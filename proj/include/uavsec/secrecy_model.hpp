#pragma once

// Per-slot SINRs at the receiver (AN removed) and the eavesdropper (AN kept),
// and the resulting secrecy rates. Everything here reports bps/Hz with base-2
// logs; the subproblem solvers keep their own natural-log objectives and the
// conversion happens only in this module.

#include <vector>

#include "uavsec/scenario.hpp"

namespace uavsec {

struct PowerAllocation {
    std::vector<double> p_a;   // UAV transmit power per slot (watts)
    std::vector<double> p_b;   // receiver AN power per slot (watts)
    std::vector<double> alpha; // information-signal power fraction per slot
};

// Normalized gains of the UAV-receiver and UAV-eavesdropper links for one slot.
struct SlotLink {
    double h_ab;
    double h_ae;
};

std::vector<SlotLink> make_links(const Trajectory& traj, const ScenarioConfig& cfg);

double sinr_bob(double p_a, double p_b, double alpha, double h_ab);
double sinr_eve(double p_a, double alpha, double h_ae);

// 1/2 [log2(1+g_b) - log2(1+g_e)]^+; the 1/2 accounts for the two-phase
// half-duplex protocol and is applied here only.
double slot_secrecy_rate(double p_a, double p_b, double alpha, const SlotLink& link);

// Mean slot secrecy rate with per-slot gains from channel_gain.
// Throws std::invalid_argument on length mismatch.
double average_secrecy_rate(const Trajectory& traj, const PowerAllocation& alloc,
                            const ScenarioConfig& cfg);

} // namespace uavsec
