#include <catch2/catch_amalgamated.hpp>

#include "mpue_sim/mobility_proc.hpp"
#include "mpue_sim/rng.hpp"

using namespace mpue_sim;

namespace {

constexpr double kTtt = 80.0;
constexpr double kEvalDt = 20.0;  // L1 period

/// Step-through oracle for the A3 windowing rule: trigger at the first
/// evaluation where the condition has held for a contiguous span >= TTT.
std::vector<bool> oracle_a3_trace(const std::vector<bool>& condition, double dt, double ttt) {
    std::vector<bool> triggered(condition.size(), false);
    int run = 0;
    bool latched = false;
    for (std::size_t i = 0; i < condition.size(); ++i) {
        if (condition[i]) {
            ++run;
        } else {
            run = 0;
            latched = false;
        }
        if (!latched && run > 0 && (run - 1) * dt >= ttt) latched = true;
        triggered[i] = latched;
    }
    return triggered;
}

}  // namespace

TEST_CASE("A3 triggers after the condition holds for the full TTT") {
    // serving -85, offset 2, neighbor -82: condition -83 < -82 holds.
    TttState state;
    for (int i = 0; i < 4; ++i) {
        state = evaluate_a3(-85.0, -82.0, 2.0, state, kEvalDt, kTtt);
        CHECK(state.phase == A3Phase::kRunning);
    }
    state = evaluate_a3(-85.0, -82.0, 2.0, state, kEvalDt, kTtt);
    CHECK(state.phase == A3Phase::kTriggered);  // held 80 ms
}

TEST_CASE("A3 never triggers when the neighbor is below serving plus offset") {
    TttState state;
    for (int i = 0; i < 50; ++i) {
        state = evaluate_a3(-85.0, -84.0, 2.0, state, kEvalDt, kTtt);  // -83 < -84 is false
        CHECK(state.phase == A3Phase::kIdle);
    }
}

TEST_CASE("one violation resets the TTT window") {
    TttState state;
    for (int i = 0; i < 4; ++i) state = evaluate_a3(-85.0, -82.0, 2.0, state, kEvalDt, kTtt);
    CHECK(state.phase == A3Phase::kRunning);  // 60 ms accumulated
    state = evaluate_a3(-85.0, -90.0, 2.0, state, kEvalDt, kTtt);
    CHECK(state.phase == A3Phase::kIdle);
    for (int i = 0; i < 4; ++i) {
        state = evaluate_a3(-85.0, -82.0, 2.0, state, kEvalDt, kTtt);
        CHECK(state.phase == A3Phase::kRunning);  // another 60 ms, still not enough
    }
}

TEST_CASE("A3 windowing agrees with the step-through oracle on fuzzed traces") {
    Rng rng(11, RngStream::kDrop);
    for (int trace = 0; trace < 1000; ++trace) {
        std::vector<bool> condition;
        const int len = 10 + static_cast<int>(rng.uniform_int(40));
        for (int i = 0; i < len; ++i) condition.push_back(rng.uniform() < 0.6);

        const auto want = oracle_a3_trace(condition, kEvalDt, kTtt);
        TttState state;
        for (int i = 0; i < len; ++i) {
            const double neighbor = condition[static_cast<std::size_t>(i)] ? -80.0 : -90.0;
            state = evaluate_a3(-85.0, neighbor, 2.0, state, kEvalDt, kTtt);
            REQUIRE((state.phase == A3Phase::kTriggered) == want[static_cast<std::size_t>(i)]);
        }
    }
}

TEST_CASE("handover preparation picks the strongest triggered neighbor and beam") {
    std::vector<double> l3_cells(21, -100.0);
    std::vector<std::vector<double>> l3_beams(21, std::vector<double>(12, -100.0));

    l3_cells[3] = -75.0;
    l3_cells[5] = -72.0;
    l3_beams[5][2] = -70.0;  // beam 3
    l3_beams[5][4] = -75.0;  // beam 5
    l3_beams[3][0] = -76.0;

    const std::vector<int> triggered{3, 5};
    const auto d = prepare_handover(triggered, l3_cells, l3_beams, 0);
    CHECK(d.target_cell == 5);
    CHECK(d.prepared_beam == 3);

    const std::vector<int> serving_in{0};
    CHECK_THROWS_AS(prepare_handover(serving_in, l3_cells, l3_beams, 0), std::logic_error);
    CHECK_THROWS_AS(prepare_handover(std::vector<int>{}, l3_cells, l3_beams, 0),
                    std::logic_error);
}

TEST_CASE("RACH outcome thresholds") {
    CHECK(execute_handover_step(-5.0, 10.0, -8.0, 200.0) == RachOutcome::kSuccess);
    CHECK(execute_handover_step(-8.0, 10.0, -8.0, 200.0) == RachOutcome::kSuccess);
    CHECK(execute_handover_step(-9.0, 10.0, -8.0, 200.0) == RachOutcome::kPending);
    CHECK(execute_handover_step(-9.0, 200.0, -8.0, 200.0) == RachOutcome::kFailure);
}

TEST_CASE("handover execution step-through: late recovery still succeeds") {
    // Below threshold for 150 ms, then -7 dB: success before expiry.
    RachOutcome outcome = RachOutcome::kPending;
    int failed = 0;
    for (double t = 10.0; t <= 200.0; t += 10.0) {
        const double sinr = t <= 150.0 ? -9.5 : -7.0;
        outcome = execute_handover_step(sinr, t, -8.0, 200.0);
        if (outcome != RachOutcome::kPending) break;
        ++failed;
    }
    CHECK(outcome == RachOutcome::kSuccess);
    CHECK(failed == 15);
}

TEST_CASE("handover failure requires the full timer of failed attempts") {
    RachOutcome outcome = RachOutcome::kPending;
    int evaluations = 0;
    for (double t = 10.0; t <= 200.0; t += 10.0) {
        outcome = execute_handover_step(-9.0, t, -8.0, 200.0);
        ++evaluations;
        if (outcome != RachOutcome::kPending) break;
    }
    CHECK(outcome == RachOutcome::kFailure);
    CHECK(evaluations == 20);  // floor(200 / 10) evaluations, all failed
}

TEST_CASE("RLF timer lifecycle") {
    RlfContext ctx;  // q_out -8, q_in -6, 1000 ms

    SECTION("starts below q_out and expires after exactly 1000 ms") {
        ctx = update_rlf(ctx, -9.0, 10.0);
        CHECK(ctx.phase == RlfPhase::kTiming);
        CHECK(ctx.elapsed_ms == 0.0);
        for (int i = 0; i < 99; ++i) {
            ctx = update_rlf(ctx, -9.0, 10.0);
            CHECK(ctx.phase == RlfPhase::kTiming);
        }
        ctx = update_rlf(ctx, -9.0, 10.0);  // elapsed reaches 1000
        CHECK(ctx.phase == RlfPhase::kRlf);
    }
    SECTION("hysteresis band keeps the timer running") {
        ctx = update_rlf(ctx, -9.0, 10.0);
        ctx = update_rlf(ctx, -7.0, 10.0);  // -7 < q_in: still timing
        CHECK(ctx.phase == RlfPhase::kTiming);
        CHECK(ctx.elapsed_ms == 10.0);
    }
    SECTION("recovery above q_in cancels the timer") {
        ctx = update_rlf(ctx, -9.0, 10.0);
        ctx = update_rlf(ctx, -5.0, 10.0);
        CHECK(ctx.phase == RlfPhase::kHealthy);
        CHECK(ctx.elapsed_ms == 0.0);
    }
}

TEST_CASE("RLF timer does not start in the hysteresis band") {
    RlfContext ctx;
    for (int i = 0; i < 200; ++i) {
        ctx = update_rlf(ctx, -7.0, 10.0);  // between q_out and q_in
        CHECK(ctx.phase == RlfPhase::kHealthy);
    }
}

TEST_CASE("approach flag patterns") {
    const auto ref = ApproachConfig::make(Approach::kReference);
    CHECK_FALSE(ref.serving_link_rx_bf);
    CHECK_FALSE(ref.pre_ho_refined_acquisition);
    CHECK_FALSE(ref.l3_uses_refined);

    const auto rx1 = ApproachConfig::make(Approach::kRx1);
    CHECK(rx1.serving_link_rx_bf);
    CHECK_FALSE(rx1.pre_ho_refined_acquisition);
    CHECK_FALSE(rx1.l3_uses_refined);

    const auto rx2 = ApproachConfig::make(Approach::kRx2);
    CHECK(rx2.serving_link_rx_bf);
    CHECK(rx2.pre_ho_refined_acquisition);
    CHECK_FALSE(rx2.l3_uses_refined);

    const auto rx3 = ApproachConfig::make(Approach::kRx3);
    CHECK(rx3.serving_link_rx_bf);
    CHECK(rx3.pre_ho_refined_acquisition);
    CHECK(rx3.l3_uses_refined);
}

TEST_CASE("approach names round-trip") {
    for (auto a : {Approach::kReference, Approach::kRx1, Approach::kRx2, Approach::kRx3})
        CHECK(approach_from_name(approach_name(a)) == a);
    CHECK_FALSE(approach_from_name("rx9").has_value());
}
