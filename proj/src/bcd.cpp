#include "uavsec/bcd.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "uavsec/alice_power.hpp"
#include "uavsec/an_split.hpp"
#include "uavsec/bob_power.hpp"
#include "uavsec/trajectory_opt.hpp"

namespace uavsec {

const char* scheme_name(SchemeKind scheme) {
    switch (scheme) {
        case SchemeKind::JTDORA: return "JTDORA";
        case SchemeKind::ANOPC: return "ANOPC";
        case SchemeKind::ANTD: return "ANTD";
        case SchemeKind::ANERA: return "ANERA";
        case SchemeKind::TDPC: return "TDPC";
    }
    return "?";
}

std::optional<SchemeKind> scheme_from_name(std::string_view name) {
    for (SchemeKind s : {SchemeKind::JTDORA, SchemeKind::ANOPC, SchemeKind::ANTD,
                         SchemeKind::ANERA, SchemeKind::TDPC})
        if (name == scheme_name(s)) return s;
    return std::nullopt;
}

std::pair<Trajectory, PowerAllocation> initial_point(const ScenarioConfig& cfg) {
    Trajectory traj = baseline_trajectory(cfg);
    const auto n = static_cast<std::size_t>(cfg.n_slots);
    PowerAllocation alloc;
    alloc.p_a.assign(n, cfg.budgets.p_bar_a());
    alloc.p_b.assign(n, cfg.budgets.p_bar_b());
    alloc.alpha.assign(n, 0.5);
    return {std::move(traj), std::move(alloc)};
}

namespace {

struct EffectiveBudget {
    double p_bar_a, p_hat_a, p_bar_b, p_hat_b;
};

struct BlockFlags {
    bool alice, bob, split, trajectory;
};

BlockFlags blocks_for(SchemeKind s) {
    switch (s) {
        case SchemeKind::JTDORA: return {true, true, true, true};
        case SchemeKind::ANOPC: return {true, true, false, false};
        case SchemeKind::ANTD: return {false, false, false, true};
        case SchemeKind::ANERA: return {false, false, false, false};
        case SchemeKind::TDPC: return {true, false, false, true};
    }
    return {};
}

void check_feasible(const Trajectory& traj, const PowerAllocation& alloc,
                    const ScenarioConfig& cfg, const EffectiveBudget& eb) {
    if (!validate_trajectory(traj, cfg).empty())
        throw std::logic_error("block update broke the mobility constraints");
    const double n = static_cast<double>(cfg.n_slots);
    double sum_a = 0.0, sum_b = 0.0;
    for (std::size_t i = 0; i < alloc.p_a.size(); ++i) {
        if (alloc.alpha[i] < 0.0 || alloc.alpha[i] > 1.0)
            throw std::logic_error("block update broke the split bounds");
        if (alloc.p_a[i] < 0.0 || alloc.p_a[i] > eb.p_hat_a * (1.0 + 1e-12))
            throw std::logic_error("block update broke the peak power bound");
        if (alloc.p_b[i] < 0.0 || alloc.p_b[i] > eb.p_hat_b * (1.0 + 1e-12))
            throw std::logic_error("block update broke the peak power bound");
        sum_a += alloc.p_a[i];
        sum_b += alloc.p_b[i];
    }
    if (sum_a > n * eb.p_bar_a * (1.0 + 1e-12) + 1e-300 ||
        sum_b > n * eb.p_bar_b * (1.0 + 1e-12) + 1e-300)
        throw std::logic_error("block update broke the average power budget");
}

} // namespace

SolveReport bcd_solve(const ScenarioConfig& cfg, SchemeKind scheme) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const auto n = static_cast<std::size_t>(cfg.n_slots);
    const BlockFlags run = blocks_for(scheme);

    EffectiveBudget eb{cfg.budgets.p_bar_a(), cfg.budgets.p_hat_a(),
                       cfg.budgets.p_bar_b(), cfg.budgets.p_hat_b()};

    SolveReport report;
    auto [traj, alloc] = initial_point(cfg);
    if (scheme == SchemeKind::TDPC) {
        // No AN: the whole information budget goes to the transmitter.
        eb.p_bar_a = cfg.budgets.p_ave_w;
        eb.p_bar_b = 0.0;
        alloc.p_a.assign(n, eb.p_bar_a);
        alloc.p_b.assign(n, 0.0);
        alloc.alpha.assign(n, 1.0);
    }

    double asr = average_secrecy_rate(traj, alloc, cfg);
    report.asr_trace.push_back(asr);

    // Accepts a candidate block update only when the exact objective does not
    // drop; keeps the trace non-decreasing even before the split block has
    // pulled every slot rate above zero.
    auto guarded = [&](auto&& apply, auto&& revert) {
        apply();
        const double next = average_secrecy_rate(traj, alloc, cfg);
        if (next >= asr) {
            asr = next;
        } else {
            revert();
        }
    };

    if (run.alice || run.bob || run.split || run.trajectory) {
        for (int iter = 0; iter < cfg.solver.max_outer_iters; ++iter) {
            const double asr_before = asr;
            auto links = make_links(traj, cfg);

            if (run.alice) {
                std::vector<AliceSlotCoeffs> ak(n);
                for (std::size_t i = 0; i < n; ++i)
                    ak[i] = make_alice_coeffs(alloc.alpha[i], alloc.p_b[i], links[i],
                                              alloc.p_a[i], cfg.solver.alpha_clamp);
                auto prev = alloc.p_a;
                guarded([&] { alloc.p_a = solve_alice_power(ak, eb.p_bar_a, eb.p_hat_a,
                                                            cfg.solver.bisection_tol); },
                        [&] { alloc.p_a = prev; });
            }
            if (run.bob) {
                std::vector<BobSlotCoeffs> bk(n);
                for (std::size_t i = 0; i < n; ++i)
                    bk[i] = p3_coefficients(alloc.alpha[i], alloc.p_a[i], links[i]);
                auto prev = alloc.p_b;
                guarded([&] { alloc.p_b = solve_bob_power(bk, eb.p_bar_b, eb.p_hat_b,
                                                          cfg.solver.bisection_tol); },
                        [&] { alloc.p_b = prev; });
            }
            if (run.split) {
                std::vector<GammaTriple> gk(n);
                for (std::size_t i = 0; i < n; ++i)
                    gk[i] = {alloc.p_a[i] * links[i].h_ab, alloc.p_b[i] * links[i].h_ab,
                             alloc.p_a[i] * links[i].h_ae};
                auto prev = alloc.alpha;
                guarded([&] { alloc.alpha = solve_alpha(gk, prev, cfg.solver); },
                        [&] { alloc.alpha = prev; });
            }
            if (run.trajectory) {
                auto res = solve_trajectory(cfg, traj, alloc.alpha, alloc.p_a, alloc.p_b);
                auto prev = traj;
                guarded([&] { traj = std::move(res.trajectory); },
                        [&] { traj = std::move(prev); });
            }

            check_feasible(traj, alloc, cfg, eb);
            report.asr_trace.push_back(asr);
            if ((asr - asr_before) / std::max(asr_before, 1e-12) < cfg.solver.epsilon) {
                report.converged = true;
                break;
            }
        }
    } else {
        report.converged = true; // nothing to iterate: the initial point is the answer
    }

    report.iterations = static_cast<int>(report.asr_trace.size()) - 1;
    report.final_trajectory = std::move(traj);
    report.final_alloc = std::move(alloc);
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

} // namespace uavsec
