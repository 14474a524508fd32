#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "test_util.hpp"
#include "uavsec/bcd.hpp"

using namespace uavsec;

TEST_CASE("scheme names round-trip") {
    for (SchemeKind s : {SchemeKind::JTDORA, SchemeKind::ANOPC, SchemeKind::ANTD,
                         SchemeKind::ANERA, SchemeKind::TDPC})
        CHECK(scheme_from_name(scheme_name(s)) == s);
    CHECK(!scheme_from_name("NOPE").has_value());
}

TEST_CASE("initial point is the equal-allocation configuration") {
    ScenarioConfig cfg = testutil::table_scenario(100.0);
    const auto [traj, alloc] = initial_point(cfg);
    REQUIRE(traj.waypoints.size() == 100);
    CHECK(validate_trajectory(traj, cfg).empty());
    for (int i = 0; i < 100; ++i) {
        CHECK(alloc.p_a[static_cast<std::size_t>(i)] == 0.5e-3);
        CHECK(alloc.p_b[static_cast<std::size_t>(i)] == 0.5e-3);
        CHECK(alloc.alpha[static_cast<std::size_t>(i)] == 0.5);
        CHECK(traj.waypoints[static_cast<std::size_t>(i)].x == doctest::Approx(50.0));
    }
    // the no-iteration scheme reports exactly this point
    const SolveReport report = bcd_solve(cfg, SchemeKind::ANERA);
    CHECK(report.asr_trace.size() == 1);
    CHECK(report.iterations == 0);
    CHECK(report.converged);
    CHECK(report.asr_trace[0] ==
          doctest::Approx(average_secrecy_rate(traj, alloc, cfg)).epsilon(1e-15));
}

TEST_CASE("joint design dominates the frozen initial point") {
    ScenarioConfig cfg = testutil::table_scenario(150.0, 40);
    const SolveReport anera = bcd_solve(cfg, SchemeKind::ANERA);
    const SolveReport joint = bcd_solve(cfg, SchemeKind::JTDORA);
    CHECK(joint.asr_trace.back() >= anera.asr_trace.back() - 1e-12);
    CHECK(joint.converged);
}

TEST_CASE("no-AN scheme earns nothing against a co-located eavesdropper") {
    ScenarioConfig cfg = testutil::table_scenario(120.0, 30);
    cfg.eve_xy = cfg.bob_xy; // equal gains in every slot
    const SolveReport report = bcd_solve(cfg, SchemeKind::TDPC);
    CHECK(report.asr_trace.back() == 0.0);
}

TEST_CASE("traces are monotone and blocks stay feasible for every scheme") {
    testutil::Rng rng(55);
    for (int rep = 0; rep < 4; ++rep) {
        ScenarioConfig cfg = testutil::random_scenario(rng, 30);
        for (SchemeKind s : {SchemeKind::JTDORA, SchemeKind::ANOPC, SchemeKind::ANTD,
                             SchemeKind::ANERA, SchemeKind::TDPC}) {
            const SolveReport report = bcd_solve(cfg, s); // throws if a block breaks C1-C8
            for (std::size_t k = 1; k < report.asr_trace.size(); ++k)
                CHECK(report.asr_trace[k] >= report.asr_trace[k - 1] - 1e-9);
            CHECK(report.iterations <= cfg.solver.max_outer_iters);
            CHECK(validate_trajectory(report.final_trajectory, cfg).empty());
        }
    }
}

TEST_CASE("frozen blocks keep their variables bit-identical") {
    ScenarioConfig cfg = testutil::table_scenario(130.0, 30);

    SUBCASE("trajectory-only scheme keeps the powers and split") {
        const SolveReport report = bcd_solve(cfg, SchemeKind::ANTD);
        for (std::size_t i = 0; i < 30; ++i) {
            CHECK(report.final_alloc.p_a[i] == cfg.budgets.p_bar_a());
            CHECK(report.final_alloc.p_b[i] == cfg.budgets.p_bar_b());
            CHECK(report.final_alloc.alpha[i] == 0.5);
        }
    }
    SUBCASE("power-only scheme keeps the reference trajectory and split") {
        const SolveReport report = bcd_solve(cfg, SchemeKind::ANOPC);
        const Trajectory base = baseline_trajectory(cfg);
        for (std::size_t i = 0; i < 30; ++i) {
            CHECK(report.final_trajectory.waypoints[i] == base.waypoints[i]);
            CHECK(report.final_alloc.alpha[i] == 0.5);
        }
    }
    SUBCASE("no-AN scheme keeps the split at one and the receiver silent") {
        const SolveReport report = bcd_solve(cfg, SchemeKind::TDPC);
        for (std::size_t i = 0; i < 30; ++i) {
            CHECK(report.final_alloc.alpha[i] == 1.0);
            CHECK(report.final_alloc.p_b[i] == 0.0);
        }
    }
}

TEST_CASE("no-AN scheme uses the whole network budget") {
    ScenarioConfig cfg = testutil::table_scenario(120.0, 20);
    const SolveReport report = bcd_solve(cfg, SchemeKind::TDPC);
    double sum = 0.0;
    for (double p : report.final_alloc.p_a) {
        sum += p;
        CHECK(p <= cfg.budgets.p_hat_a() * (1.0 + 1e-12));
    }
    CHECK(sum <= 20.0 * cfg.budgets.p_ave_w * (1.0 + 1e-9));
}

TEST_CASE("infeasible scenarios are rejected up front") {
    ScenarioConfig cfg = testutil::table_scenario(90.0);
    CHECK_THROWS_AS(bcd_solve(cfg, SchemeKind::JTDORA), std::invalid_argument);
    CHECK_THROWS_AS(initial_point(cfg), std::invalid_argument);
}
