#pragma once

// Shared helpers for the test suites: deterministic RNG and scenario builders.

#include <random>

#include "uavsec/scenario.hpp"

namespace testutil {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double log_uniform(Rng& rng, double lo, double hi) {
    return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

// Table-style defaults at the given horizon.
inline uavsec::ScenarioConfig table_scenario(double horizon_s, int n_slots = 100) {
    uavsec::ScenarioConfig cfg;
    cfg.horizon_s = horizon_s;
    cfg.n_slots = n_slots;
    return cfg;
}

// Random feasible scenario with positions in +-250 m and P_ave in [-10,10] dBm.
inline uavsec::ScenarioConfig random_scenario(Rng& rng, int n_slots = 100) {
    uavsec::ScenarioConfig cfg;
    cfg.n_slots = n_slots;
    for (;;) {
        cfg.horizon_s = uniform(rng, 110.0, 160.0);
        auto pt = [&] { return uavsec::Vec2{uniform(rng, -250, 250), uniform(rng, -250, 250)}; };
        cfg.bob_xy = pt();
        cfg.eve_xy = pt();
        cfg.start_xy = pt();
        cfg.end_xy = pt();
        cfg.budgets.p_ave_w = std::pow(10.0, (uniform(rng, -10.0, 10.0) - 30.0) / 10.0);
        if (uavsec::distance(cfg.start_xy, cfg.end_xy) <=
            cfg.n_slots * uavsec::max_displacement(cfg))
            return cfg;
    }
}

} // namespace testutil
