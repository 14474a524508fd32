#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "test_util.hpp"
#include "uavsec/secrecy_model.hpp"

using namespace uavsec;

TEST_CASE("receiver SINR examples") {
    CHECK(sinr_bob(1e-3, 1e-3, 1.0, 1e4) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(sinr_bob(1e-3, 1e-3, 0.5, 1e4) == doctest::Approx(55.0 / 16.0).epsilon(1e-12));
    CHECK(sinr_bob(1e-3, 1e-3, 0.0, 1e4) == 0.0);
    CHECK(sinr_bob(0.0, 1e-3, 0.7, 1e4) == 0.0);
}

TEST_CASE("eavesdropper SINR examples") {
    CHECK(sinr_eve(1e-3, 0.5, 1e4) == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
    CHECK(sinr_eve(1e-3, 1.0, 1e4) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(sinr_eve(0.0, 0.5, 1e4) == 0.0);
}

TEST_CASE("slot secrecy rate examples") {
    const SlotLink link{1e4, 1e4};
    CHECK(slot_secrecy_rate(1e-3, 1e-3, 0.5, link) ==
          doctest::Approx(0.6376390007942705).epsilon(1e-12));
    // equal gains without AN give zero rate regardless of the receiver power
    CHECK(slot_secrecy_rate(1e-3, 2.5e-3, 1.0, link) == 0.0);
    // stronger eavesdropper channel clamps at zero
    CHECK(slot_secrecy_rate(1e-3, 0.0, 0.9, SlotLink{1e3, 1e5}) == 0.0);
}

TEST_CASE("average secrecy rate is the slot mean") {
    ScenarioConfig cfg = testutil::table_scenario(100.0, 2);
    cfg.start_xy = {0, 0};
    cfg.end_xy = {0, 0};
    Trajectory traj{{Vec2{0, 0}, Vec2{0, 0}}};

    PowerAllocation zero{{1e-3, 1e-3}, {1e-3, 1e-3}, {0.0, 0.0}};
    CHECK(average_secrecy_rate(traj, zero, cfg) == 0.0);

    ScenarioConfig one = cfg;
    one.n_slots = 1;
    Trajectory t1{{Vec2{0, 0}}};
    PowerAllocation a1{{1e-3}, {1e-3}, {0.5}};
    const SlotLink link{channel_gain({0, 0}, one.bob_xy, one),
                        channel_gain({0, 0}, one.eve_xy, one)};
    CHECK(average_secrecy_rate(t1, a1, one) ==
          doctest::Approx(slot_secrecy_rate(1e-3, 1e-3, 0.5, link)).epsilon(1e-15));

    PowerAllocation bad{{1e-3}, {1e-3}, {0.5}};
    CHECK_THROWS_AS(average_secrecy_rate(traj, bad, cfg), std::invalid_argument);
}

TEST_CASE("two-slot mean matches hand arithmetic") {
    // one active slot at the worked example, one silent slot
    ScenarioConfig cfg = testutil::table_scenario(100.0, 2);
    cfg.start_xy = cfg.end_xy = cfg.bob_xy = {0, 0};
    cfg.eve_xy = {0, 0};
    Trajectory traj{{Vec2{0, 0}, Vec2{0, 0}}}; // h_ab = h_ae = 1e4 at both slots
    PowerAllocation alloc{{1e-3, 0.0}, {1e-3, 0.0}, {0.5, 0.5}};
    CHECK(average_secrecy_rate(traj, alloc, cfg) ==
          doctest::Approx(0.5 * 0.6376390007942705).epsilon(1e-12));
}

// The two-phase composition: term powers of the forwarded signal, normalized
// by the noise power. The receiver cancels the AN term; the eavesdropper
// keeps it as interference.
namespace {
struct TermPowers {
    double info, an, fwd_noise;
};

TermPowers term_powers(double p_a, double p_b, double alpha, double h_ba, double h_ag) {
    TermPowers t;
    t.info = alpha * p_a * h_ag;
    t.an = (1.0 - alpha) * p_a * p_b * h_ba * h_ag / (p_b * h_ba + 1.0);
    t.fwd_noise = (1.0 - alpha) * p_a * h_ag / (p_b * h_ba + 1.0);
    return t;
}
} // namespace

TEST_CASE("analytic SINRs equal the term-power composition") {
    testutil::Rng rng(123);
    for (int i = 0; i < 10000; ++i) {
        const double p_a = testutil::log_uniform(rng, 1e-6, 1e-1);
        const double p_b = testutil::log_uniform(rng, 1e-6, 1e-1);
        const double alpha = testutil::uniform(rng, 0.0, 1.0);
        const double h_ab = testutil::log_uniform(rng, 1e1, 1e6);
        const double h_ae = testutil::log_uniform(rng, 1e1, 1e6);

        const TermPowers bob = term_powers(p_a, p_b, alpha, h_ab, h_ab);
        const double gb_ref = bob.info / (bob.fwd_noise + 1.0);
        const double gb = sinr_bob(p_a, p_b, alpha, h_ab);
        CHECK(std::abs(gb - gb_ref) <= 1e-12 * std::max(1.0, std::abs(gb_ref)));

        const TermPowers eve = term_powers(p_a, p_b, alpha, h_ab, h_ae);
        const double ge_ref = eve.info / (eve.an + eve.fwd_noise + 1.0);
        const double ge = sinr_eve(p_a, alpha, h_ae);
        CHECK(std::abs(ge - ge_ref) <= 1e-12 * std::max(1.0, std::abs(ge_ref)));
    }
}

TEST_CASE("slot rate is monotone in the link gains and never negative") {
    testutil::Rng rng(77);
    for (int i = 0; i < 2000; ++i) {
        const double p_a = testutil::log_uniform(rng, 1e-5, 1e-2);
        const double p_b = testutil::log_uniform(rng, 1e-5, 1e-2);
        const double alpha = testutil::uniform(rng, 0.0, 1.0);
        const double h_ab = testutil::log_uniform(rng, 1e2, 1e5);
        const double h_ae = testutil::log_uniform(rng, 1e2, 1e5);
        const double base = slot_secrecy_rate(p_a, p_b, alpha, {h_ab, h_ae});
        CHECK(base >= 0.0);
        CHECK(slot_secrecy_rate(p_a, p_b, alpha, {h_ab * 1.1, h_ae}) >= base - 1e-12);
        CHECK(slot_secrecy_rate(p_a, p_b, alpha, {h_ab, h_ae * 1.1}) <= base + 1e-12);
    }
}
