#include <catch2/catch_amalgamated.hpp>

#include "mpue_sim/config.hpp"

using namespace mpue_sim;

TEST_CASE("default profiles validate and carry the scenario constants") {
    const RunConfig desk = desk_profile();
    desk.validate();
    CHECK(desk.n_ue == 100);
    CHECK(desk.sim_time_s == 10.0);
    CHECK(desk.time_step_ms == 10.0);
    CHECK(desk.ssb_period_ms == 20.0);
    CHECK(desk.l1_period_steps == 2);
    CHECK(desk.l1_filter_length == 2);
    CHECK(desk.a3_offset_db == 2.0);
    CHECK(desk.ttt_ms == 80.0);
    CHECK(desk.k_b_scheduled == 4);
    CHECK(desk.gamma_out_db == -8.0);
    CHECK(desk.gamma_in_db == -6.0);
    CHECK(desk.t_hof_ms == 200.0);
    CHECK(desk.t_rlf_ms == 1000.0);
    CHECK(desk.carrier_ghz == 28.0);
    CHECK(desk.bandwidth_mhz == 100.0);
    CHECK(desk.tx_power_dbm == 40.0);
    CHECK(desk.tx_height_m == 10.0);
    CHECK(desk.rx_height_m == 1.5);
    CHECK(desk.isd_m == 200.0);
    CHECK(desk.ue_speed_kmh == 60.0);
    CHECK(desk.fading_enabled);

    const RunConfig paper = paper_profile();
    paper.validate();
    CHECK(paper.n_ue == 420);
    CHECK(paper.sim_time_s == 30.0);
    CHECK(paper.n_steps() == 3000);
}

TEST_CASE("noise budget follows thermal density, bandwidth, and noise figure") {
    const RunConfig cfg;
    CHECK_THAT(cfg.noise_dbm(), Catch::Matchers::WithinAbs(-174.0 + 80.0 + 10.0, 1e-9));
}

TEST_CASE("unknown keys are rejected with their name") {
    CHECK_THROWS_WITH(config_from_json({{"no_such_field", 1}}),
                      Catch::Matchers::ContainsSubstring("no_such_field"));
    CHECK_THROWS_WITH(config_from_json({{"tx_element", {{"bogus", 1.0}}}}),
                      Catch::Matchers::ContainsSubstring("tx_element.bogus"));
}

TEST_CASE("field validation produces field-level messages") {
    CHECK_THROWS_WITH(config_from_json({{"n_ue", 0}}),
                      Catch::Matchers::ContainsSubstring("n_ue"));
    CHECK_THROWS_WITH(config_from_json({{"ssb_period_ms", 25.0}}),
                      Catch::Matchers::ContainsSubstring("ssb_period_ms"));
    CHECK_THROWS_WITH(config_from_json({{"ssb_period_ms", 30.0}}),
                      Catch::Matchers::ContainsSubstring("l1_period_steps"));
    CHECK_THROWS_WITH(config_from_json({{"gamma_in_db", -9.0}}),
                      Catch::Matchers::ContainsSubstring("gamma_in_db"));
    CHECK_THROWS_WITH(config_from_json({{"approach", "rx7"}}),
                      Catch::Matchers::ContainsSubstring("approach"));
    CHECK_THROWS_WITH(config_from_json({{"sinr_mode", "exact"}}),
                      Catch::Matchers::ContainsSubstring("sinr_mode"));
}

TEST_CASE("config round-trips through JSON") {
    RunConfig cfg = desk_profile();
    cfg.approach = Approach::kRx2;
    cfg.seed = 99;
    cfg.n_ue = 17;
    cfg.shadow_corr_dist_m = 11.0;
    cfg.sinr_mode = InterferenceMode::kMonteCarlo;
    const auto j = config_to_json(cfg);
    const RunConfig back = config_from_json(j);
    CHECK(back.approach == Approach::kRx2);
    CHECK(back.seed == 99);
    CHECK(back.n_ue == 17);
    CHECK(back.shadow_corr_dist_m == 11.0);
    CHECK(back.sinr_mode == InterferenceMode::kMonteCarlo);
    CHECK(config_to_json(back) == j);
}

TEST_CASE("partial configs overlay the chosen base profile") {
    const RunConfig cfg = config_from_json({{"n_ue", 50}}, paper_profile());
    CHECK(cfg.n_ue == 50);
    CHECK(cfg.sim_time_s == 30.0);  // from the paper profile
}

TEST_CASE("timing consistency is enforced") {
    // l1_period_steps * time_step must equal the SSB period.
    nlohmann::json j{{"time_step_ms", 5.0}, {"ssb_period_ms", 20.0}, {"l1_period_steps", 4}};
    const RunConfig cfg = config_from_json(j);
    CHECK(cfg.l1_period_steps == 4);
    nlohmann::json bad{{"time_step_ms", 5.0}, {"ssb_period_ms", 20.0}};
    CHECK_THROWS_AS(config_from_json(bad), std::invalid_argument);
}
