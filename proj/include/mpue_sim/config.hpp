#pragma once

#include <set>
#include <string>

#include <json.hpp>

#include "mpue_sim/antenna.hpp"
#include "mpue_sim/measurement.hpp"
#include "mpue_sim/mobility_proc.hpp"
#include "mpue_sim/sinr.hpp"

namespace mpue_sim {

/// Full parameter set of one run. Field names double as config-file keys;
/// unknown keys in a config file are errors.
struct RunConfig {
    // Time base
    double time_step_ms = 10.0;
    double sim_time_s = 10.0;
    double ssb_period_ms = 20.0;

    // Deployment and traffic
    double isd_m = 200.0;
    int n_rings = 1;
    int n_ue = 100;
    double ue_speed_kmh = 60.0;
    double tx_height_m = 10.0;
    double rx_height_m = 1.5;

    // Radio
    double carrier_ghz = 28.0;
    double bandwidth_mhz = 100.0;
    double tx_power_dbm = 40.0;
    double noise_figure_db = 10.0;
    double thermal_noise_dbm_hz = -174.0;
    int k_b_scheduled = 4;

    // Channel
    double shadow_sigma_los_db = 4.0;
    double shadow_sigma_nlos_db = 7.82;
    double shadow_corr_dist_m = 13.0;
    bool fading_enabled = true;
    int fading_sinusoids = 8;

    // Antennas
    AntennaElementPattern tx_element{8.0, 65.0, 65.0, 30.0, 30.0};
    AntennaElementPattern rx_element{5.0, 90.0, 90.0, 25.0, 25.0};
    double tx_spacing_v_lambda = 0.7;
    double tx_spacing_h_lambda = 0.5;
    std::array<double, 3> panel_offsets_deg{0.0, 120.0, -120.0};

    // Measurement chain
    int l1_period_steps = 2;   // omega
    int l1_filter_length = 2;  // N_L1
    double k_cell = 4.0;
    double k_beam = 4.0;
    double p_thr_dbm = -105.0;
    int n_str = 2;
    double meas_noise_sigma_db = 0.0;

    // Handover / failure models
    double a3_offset_db = 2.0;
    double ttt_ms = 80.0;
    double ho_prep_delay_ms = 0.0;
    double rach_period_ms = 10.0;
    double t_hof_ms = 200.0;
    double gamma_out_db = -8.0;
    double gamma_in_db = -6.0;
    double t_rlf_ms = 1000.0;
    int rlm_window = 4;
    int bfd_detect_count = 2;
    int n_batt = 4;
    double t_batt_ms = 10.0;
    double reest_outage_ms = 180.0;
    double ho_outage_ms = 55.0;
    double t_fh_s = 1.0;

    // SINR evaluation
    InterferenceMode sinr_mode = InterferenceMode::kExpectation;
    int mc_draws = 1000;

    // Run identity
    Approach approach = Approach::kReference;
    std::uint64_t seed = 1;

    FilterConfig filter_config() const {
        return {l1_period_steps, l1_filter_length, k_cell, k_beam, p_thr_dbm, n_str};
    }

    int n_steps() const {
        return static_cast<int>(std::llround(sim_time_s * 1000.0 / time_step_ms));
    }

    double ue_speed_mps() const { return ue_speed_kmh / 3.6; }

    double noise_dbm() const {
        return thermal_noise_dbm_hz + 10.0 * std::log10(bandwidth_mhz * 1e6) + noise_figure_db;
    }

    void validate() const;
};

/// Paper-scale scenario (420 UEs, 30 s); the default constructor is the
/// desk-scale profile (100 UEs, 10 s).
inline RunConfig paper_profile() {
    RunConfig cfg;
    cfg.n_ue = 420;
    cfg.sim_time_s = 30.0;
    return cfg;
}

inline RunConfig desk_profile() { return RunConfig{}; }

inline void RunConfig::validate() const {
    auto fail = [](const std::string& field, const std::string& why) {
        throw std::invalid_argument("config." + field + ": " + why);
    };
    if (time_step_ms <= 0.0) fail("time_step_ms", "must be > 0");
    if (sim_time_s <= 0.0) fail("sim_time_s", "must be > 0");
    if (ssb_period_ms <= 0.0) fail("ssb_period_ms", "must be > 0");
    const double ratio = ssb_period_ms / time_step_ms;
    if (std::abs(ratio - std::round(ratio)) > 1e-9)
        fail("ssb_period_ms", "must be an integer multiple of time_step_ms");
    if (std::abs(l1_period_steps * time_step_ms - ssb_period_ms) > 1e-9)
        fail("l1_period_steps", "l1_period_steps * time_step_ms must equal ssb_period_ms");
    if (l1_period_steps < 1) fail("l1_period_steps", "must be >= 1");
    if (l1_filter_length < 1) fail("l1_filter_length", "must be >= 1");
    if (isd_m <= 0.0) fail("isd_m", "must be > 0");
    if (n_rings < 1) fail("n_rings", "must be >= 1");
    if (n_ue < 1) fail("n_ue", "must be >= 1");
    if (ue_speed_kmh < 0.0) fail("ue_speed_kmh", "must be >= 0");
    if (carrier_ghz <= 0.0) fail("carrier_ghz", "must be > 0");
    if (bandwidth_mhz <= 0.0) fail("bandwidth_mhz", "must be > 0");
    if (k_b_scheduled < 1 || k_b_scheduled > 12) fail("k_b_scheduled", "must be in 1..12");
    if (n_str < 1) fail("n_str", "must be >= 1");
    if (ttt_ms < 0.0) fail("ttt_ms", "must be >= 0");
    if (t_hof_ms <= 0.0) fail("t_hof_ms", "must be > 0");
    if (t_rlf_ms <= 0.0) fail("t_rlf_ms", "must be > 0");
    if (gamma_in_db <= gamma_out_db) fail("gamma_in_db", "must be > gamma_out_db");
    if (rlm_window < 1) fail("rlm_window", "must be >= 1");
    if (bfd_detect_count < 1) fail("bfd_detect_count", "must be >= 1");
    if (n_batt < 1) fail("n_batt", "must be >= 1");
    if (rach_period_ms <= 0.0) fail("rach_period_ms", "must be > 0");
    if (fading_sinusoids < 1) fail("fading_sinusoids", "must be >= 1");
    if (mc_draws < 1) fail("mc_draws", "must be >= 1");
    for (const auto* e : {&tx_element, &rx_element}) {
        if (e->hpbw_az_deg <= 0.0 || e->hpbw_el_deg <= 0.0)
            fail("element pattern", "HPBW must be > 0");
        if (!std::isfinite(e->max_gain_dbi)) fail("element pattern", "max gain must be finite");
    }
}

// ---------------------------------------------------------------------------
// JSON (de)serialization

namespace detail {

inline nlohmann::json element_to_json(const AntennaElementPattern& e) {
    return {{"max_gain_dbi", e.max_gain_dbi},
            {"hpbw_az_deg", e.hpbw_az_deg},
            {"hpbw_el_deg", e.hpbw_el_deg},
            {"front_back_db", e.front_back_db},
            {"side_lobe_floor_db", e.side_lobe_floor_db}};
}

inline AntennaElementPattern element_from_json(const nlohmann::json& j,
                                               AntennaElementPattern base,
                                               const std::string& path) {
    static const std::set<std::string> known{"max_gain_dbi", "hpbw_az_deg", "hpbw_el_deg",
                                             "front_back_db", "side_lobe_floor_db"};
    for (const auto& [key, _] : j.items())
        if (!known.contains(key))
            throw std::invalid_argument("config: unknown key " + path + "." + key);
    base.max_gain_dbi = j.value("max_gain_dbi", base.max_gain_dbi);
    base.hpbw_az_deg = j.value("hpbw_az_deg", base.hpbw_az_deg);
    base.hpbw_el_deg = j.value("hpbw_el_deg", base.hpbw_el_deg);
    base.front_back_db = j.value("front_back_db", base.front_back_db);
    base.side_lobe_floor_db = j.value("side_lobe_floor_db", base.side_lobe_floor_db);
    return base;
}

}  // namespace detail

inline nlohmann::json config_to_json(const RunConfig& c) {
    return {
        {"time_step_ms", c.time_step_ms},
        {"sim_time_s", c.sim_time_s},
        {"ssb_period_ms", c.ssb_period_ms},
        {"isd_m", c.isd_m},
        {"n_rings", c.n_rings},
        {"n_ue", c.n_ue},
        {"ue_speed_kmh", c.ue_speed_kmh},
        {"tx_height_m", c.tx_height_m},
        {"rx_height_m", c.rx_height_m},
        {"carrier_ghz", c.carrier_ghz},
        {"bandwidth_mhz", c.bandwidth_mhz},
        {"tx_power_dbm", c.tx_power_dbm},
        {"noise_figure_db", c.noise_figure_db},
        {"thermal_noise_dbm_hz", c.thermal_noise_dbm_hz},
        {"k_b_scheduled", c.k_b_scheduled},
        {"shadow_sigma_los_db", c.shadow_sigma_los_db},
        {"shadow_sigma_nlos_db", c.shadow_sigma_nlos_db},
        {"shadow_corr_dist_m", c.shadow_corr_dist_m},
        {"fading_enabled", c.fading_enabled},
        {"fading_sinusoids", c.fading_sinusoids},
        {"tx_element", detail::element_to_json(c.tx_element)},
        {"rx_element", detail::element_to_json(c.rx_element)},
        {"tx_spacing_v_lambda", c.tx_spacing_v_lambda},
        {"tx_spacing_h_lambda", c.tx_spacing_h_lambda},
        {"panel_offsets_deg", c.panel_offsets_deg},
        {"l1_period_steps", c.l1_period_steps},
        {"l1_filter_length", c.l1_filter_length},
        {"k_cell", c.k_cell},
        {"k_beam", c.k_beam},
        {"p_thr_dbm", c.p_thr_dbm},
        {"n_str", c.n_str},
        {"meas_noise_sigma_db", c.meas_noise_sigma_db},
        {"a3_offset_db", c.a3_offset_db},
        {"ttt_ms", c.ttt_ms},
        {"ho_prep_delay_ms", c.ho_prep_delay_ms},
        {"rach_period_ms", c.rach_period_ms},
        {"t_hof_ms", c.t_hof_ms},
        {"gamma_out_db", c.gamma_out_db},
        {"gamma_in_db", c.gamma_in_db},
        {"t_rlf_ms", c.t_rlf_ms},
        {"rlm_window", c.rlm_window},
        {"bfd_detect_count", c.bfd_detect_count},
        {"n_batt", c.n_batt},
        {"t_batt_ms", c.t_batt_ms},
        {"reest_outage_ms", c.reest_outage_ms},
        {"ho_outage_ms", c.ho_outage_ms},
        {"t_fh_s", c.t_fh_s},
        {"sinr_mode", c.sinr_mode == InterferenceMode::kExpectation ? "expectation" : "monte_carlo"},
        {"mc_draws", c.mc_draws},
        {"approach", approach_name(c.approach)},
        {"seed", c.seed},
    };
}

/// Parses a config on top of `base`, rejecting unknown keys with their path.
inline RunConfig config_from_json(const nlohmann::json& j, RunConfig base = RunConfig{}) {
    const nlohmann::json reference = config_to_json(base);
    for (const auto& [key, _] : j.items())
        if (!reference.contains(key))
            throw std::invalid_argument("config: unknown key " + key);

    RunConfig c = base;
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("time_step_ms", c.time_step_ms);
    get("sim_time_s", c.sim_time_s);
    get("ssb_period_ms", c.ssb_period_ms);
    get("isd_m", c.isd_m);
    get("n_rings", c.n_rings);
    get("n_ue", c.n_ue);
    get("ue_speed_kmh", c.ue_speed_kmh);
    get("tx_height_m", c.tx_height_m);
    get("rx_height_m", c.rx_height_m);
    get("carrier_ghz", c.carrier_ghz);
    get("bandwidth_mhz", c.bandwidth_mhz);
    get("tx_power_dbm", c.tx_power_dbm);
    get("noise_figure_db", c.noise_figure_db);
    get("thermal_noise_dbm_hz", c.thermal_noise_dbm_hz);
    get("k_b_scheduled", c.k_b_scheduled);
    get("shadow_sigma_los_db", c.shadow_sigma_los_db);
    get("shadow_sigma_nlos_db", c.shadow_sigma_nlos_db);
    get("shadow_corr_dist_m", c.shadow_corr_dist_m);
    get("fading_enabled", c.fading_enabled);
    get("fading_sinusoids", c.fading_sinusoids);
    if (j.contains("tx_element"))
        c.tx_element = detail::element_from_json(j.at("tx_element"), c.tx_element, "tx_element");
    if (j.contains("rx_element"))
        c.rx_element = detail::element_from_json(j.at("rx_element"), c.rx_element, "rx_element");
    get("tx_spacing_v_lambda", c.tx_spacing_v_lambda);
    get("tx_spacing_h_lambda", c.tx_spacing_h_lambda);
    get("panel_offsets_deg", c.panel_offsets_deg);
    get("l1_period_steps", c.l1_period_steps);
    get("l1_filter_length", c.l1_filter_length);
    get("k_cell", c.k_cell);
    get("k_beam", c.k_beam);
    get("p_thr_dbm", c.p_thr_dbm);
    get("n_str", c.n_str);
    get("meas_noise_sigma_db", c.meas_noise_sigma_db);
    get("a3_offset_db", c.a3_offset_db);
    get("ttt_ms", c.ttt_ms);
    get("ho_prep_delay_ms", c.ho_prep_delay_ms);
    get("rach_period_ms", c.rach_period_ms);
    get("t_hof_ms", c.t_hof_ms);
    get("gamma_out_db", c.gamma_out_db);
    get("gamma_in_db", c.gamma_in_db);
    get("t_rlf_ms", c.t_rlf_ms);
    get("rlm_window", c.rlm_window);
    get("bfd_detect_count", c.bfd_detect_count);
    get("n_batt", c.n_batt);
    get("t_batt_ms", c.t_batt_ms);
    get("reest_outage_ms", c.reest_outage_ms);
    get("ho_outage_ms", c.ho_outage_ms);
    get("t_fh_s", c.t_fh_s);
    if (j.contains("sinr_mode")) {
        const std::string mode = j.at("sinr_mode").get<std::string>();
        if (mode == "expectation") {
            c.sinr_mode = InterferenceMode::kExpectation;
        } else if (mode == "monte_carlo") {
            c.sinr_mode = InterferenceMode::kMonteCarlo;
        } else {
            throw std::invalid_argument("config.sinr_mode: expected expectation|monte_carlo");
        }
    }
    get("mc_draws", c.mc_draws);
    if (j.contains("approach")) {
        const std::string name = j.at("approach").get<std::string>();
        const auto a = approach_from_name(name);
        if (!a) throw std::invalid_argument("config.approach: unknown approach " + name);
        c.approach = *a;
    }
    get("seed", c.seed);
    c.validate();
    return c;
}

}  // namespace mpue_sim
