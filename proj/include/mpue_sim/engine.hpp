#pragma once

#include <atomic>
#include <future>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "mpue_sim/antenna.hpp"
#include "mpue_sim/channel.hpp"
#include "mpue_sim/config.hpp"
#include "mpue_sim/kpi.hpp"
#include "mpue_sim/measurement.hpp"
#include "mpue_sim/mobility_proc.hpp"
#include "mpue_sim/scenario.hpp"
#include "mpue_sim/sinr.hpp"

namespace mpue_sim {

enum class EventType { kA3Trigger, kHoCmd, kHoSuccess, kHof, kRlf, kBfrOk, kBfrFail, kReest };

inline const char* event_name(EventType t) {
    switch (t) {
        case EventType::kA3Trigger: return "A3_TRIGGER";
        case EventType::kHoCmd: return "HO_CMD";
        case EventType::kHoSuccess: return "HO_SUCCESS";
        case EventType::kHof: return "HOF";
        case EventType::kRlf: return "RLF";
        case EventType::kBfrOk: return "BFR_OK";
        case EventType::kBfrFail: return "BFR_FAIL";
        case EventType::kReest: return "REEST";
    }
    return "?";
}

struct EventRecord {
    double time_ms = 0.0;
    int ue = -1;
    EventType type = EventType::kA3Trigger;
    int cell_a = -1;  // serving / source cell
    int cell_b = -1;  // neighbor / target cell
    int beam = 0;
};

struct SinrRow {
    double time_ms = 0.0;
    int ue = -1;
    double sinr_db = 0.0;
};

struct ChannelTraceRow {
    double time_ms = 0.0;
    int cell = -1;
    int beam = 0;
    double pre_rx_dbm = 0.0;       // chain without the Rx gain term
    double serving_rx_dbm = 0.0;   // with the UE's current panel/Rx beam applied
};

struct RunResult {
    RunConfig config;
    KpiReport report;
    std::vector<EventRecord> events;
    std::vector<SinrRow> sinr_rows;
    std::uint64_t channel_digest = 0;
    ChannelDiagnostics diagnostics;
    std::vector<ChannelTraceRow> channel_trace;  // only when a trace UE is set
};

enum class UePhase { kAttached, kExecutingHo, kReestablishing };

/// Discrete-time orchestration of one run: mobility, channel, measurement
/// chain, SINR, control plane, and KPI booking, in that order, every step.
class Simulation {
  public:
    explicit Simulation(RunConfig cfg) : cfg_(std::move(cfg)) {
        cfg_.validate();
        approach_ = ApproachConfig::make(cfg_.approach);
        layout_ = build_layout(cfg_.isd_m, cfg_.n_rings);
        n_cells_ = layout_.n_cells();
        n_sites_ = layout_.n_sites();
        tx_grid_ = TxBeamGrid::make(cfg_.tx_element, cfg_.tx_spacing_v_lambda,
                                    cfg_.tx_spacing_h_lambda);
        panels_ = MpuePanelSet::make(cfg_.rx_element, cfg_.panel_offsets_deg);
        doppler_hz_ = cfg_.fading_enabled ? doppler_hz(cfg_.ue_speed_mps(), cfg_.carrier_ghz) : 0.0;
        noise_dbm_ = cfg_.noise_dbm();
        refined_options_ = {1, 2, 3, 4, 5, 6, 7};
        wide_option_ = {kWideRxBeam};

        init_ues();
        channel_phase(0.0);
        for (auto& ue : ues_) initial_attach(ue);
        measurement_phase(0.0);  // t = 0 carries the first SSB burst
        for (auto& ue : ues_) serving_maintenance(ue);
        sinr_phase(0.0);
        kpi_sample_phase(0.0);
    }

    /// Advances one time step.
    void step() {
        ++step_index_;
        const double t_ms = step_index_ * cfg_.time_step_ms;
        mobility_phase();
        channel_phase(t_ms);
        if (is_l1_instant(step_index_)) {
            measurement_phase(t_ms);
            for (auto& ue : ues_)
                if (ue.phase == UePhase::kAttached) serving_maintenance(ue);
        }
        sinr_phase(t_ms);
        control_phase(t_ms);
        kpi_sample_phase(t_ms);
    }

    void run() {
        const int n = cfg_.n_steps();
        while (step_index_ < n) step();
    }

    RunResult finalize() {
        RunResult out;
        out.config = cfg_;
        std::vector<OutageLedger> ledgers;
        ledgers.reserve(ues_.size());
        for (const auto& ue : ues_) ledgers.push_back(ue.outage);
        out.report = finalize_report(counters_, ledgers, cfg_.n_ue, cfg_.sim_time_s);
        out.events = events_;
        out.sinr_rows = sinr_rows_;
        out.channel_digest = channel_digest_.value();
        out.diagnostics = diag_;
        out.channel_trace = channel_trace_;
        return out;
    }

    // ------------------------------------------------------------------
    // Introspection (tests, trace tooling)

    const NetworkLayout& layout() const { return layout_; }
    const RunConfig& config() const { return cfg_; }
    int current_step() const { return step_index_; }
    double current_time_ms() const { return step_index_ * cfg_.time_step_ms; }

    int serving_cell(int ue) const { return ues_[static_cast<std::size_t>(ue)].serving_cell; }
    int serving_beam(int ue) const { return ues_[static_cast<std::size_t>(ue)].serving_beam; }
    PanelRxSelection serving_rx(int ue) const { return ues_[static_cast<std::size_t>(ue)].serving_rx; }
    UePhase phase(int ue) const { return ues_[static_cast<std::size_t>(ue)].phase; }
    const UeKinematics& kinematics(int ue) const { return ues_[static_cast<std::size_t>(ue)].kin; }
    const std::vector<EventRecord>& events() const { return events_; }

    /// Raw RSRP of one (cell, beam, panel, rx beam) at the current step.
    double raw_rsrp(int ue, int cell, int beam, int panel, int rx_beam) const {
        const auto& u = ues_[static_cast<std::size_t>(ue)];
        return u.pre_rx_dbm[cb_index(cell, beam)] + u.rxg_db[cdr_index(cell, panel, rx_beam)];
    }

    double pre_rx_rsrp(int ue, int cell, int beam) const {
        return ues_[static_cast<std::size_t>(ue)].pre_rx_dbm[cb_index(cell, beam)];
    }

    int n_ues() const { return static_cast<int>(ues_.size()); }

    /// L1-filtered table entry for one (cell, beam, panel, rx beam).
    double l1_rsrp(int ue, int cell, int beam, int panel, int rx_beam) const {
        const auto& u = ues_[static_cast<std::size_t>(ue)];
        if (!u.l1_valid) throw std::logic_error("l1_rsrp: no L1 measurement yet");
        return u.l1_pre[static_cast<std::size_t>(cb_index(cell, beam))] +
               u.l1_rx[static_cast<std::size_t>(cdr_index(cell, panel, rx_beam))];
    }

    /// Soft-LoS link loss (pathloss + shadow) currently applied to a site.
    double soft_loss_db(int ue, int site) const {
        return ues_[static_cast<std::size_t>(ue)].softloss_db[static_cast<std::size_t>(site)];
    }

    EffectiveDistance link_geometry(int ue, int site) const {
        return ues_[static_cast<std::size_t>(ue)].geom[static_cast<std::size_t>(site)];
    }

    /// Serving-link SINR of a UE computed from the current tables.
    SinrSample serving_sinr(int ue) {
        auto& u = ues_[static_cast<std::size_t>(ue)];
        return compute_sinr(u, u.serving_cell, u.serving_beam, u.serving_rx);
    }

    /// SINR via the general operation (used to cross-check the fast path).
    SinrSample reference_sinr(int ue, int cell, int beam, PanelRxSelection sel) {
        auto& u = ues_[static_cast<std::size_t>(ue)];
        std::vector<std::vector<double>> interferers;
        for (int c = 0; c < n_cells_; ++c) {
            if (c == cell) continue;
            std::vector<double> beams(12);
            for (int b = 1; b <= 12; ++b)
                beams[static_cast<std::size_t>(b - 1)] =
                    u.pre_rx_dbm[cb_index(c, b)] + u.rxg_db[cdr_index(c, sel.panel, sel.rx_beam)];
            interferers.push_back(std::move(beams));
        }
        const double signal =
            u.pre_rx_dbm[cb_index(cell, beam)] + u.rxg_db[cdr_index(cell, sel.panel, sel.rx_beam)];
        return link_sinr(signal, interferers, noise_dbm_, cfg_.k_b_scheduled);
    }

    void set_trace_ue(int ue) { trace_ue_ = ue; }

  private:
    struct UeRuntime {
        UeKinematics kin;
        std::vector<ShadowProcess> shadow;       // per site
        std::vector<FadingProcess> fading;       // per (cell, beam)
        std::vector<EffectiveDistance> geom;     // per site
        std::vector<double> arrival_az_deg;      // per site, global frame, at the UE
        std::vector<double> departure_az_deg;    // per site, global frame, at the site
        std::vector<double> zenith_tx_deg;       // per site
        std::vector<double> zenith_rx_deg;       // per site
        std::vector<double> softloss_db;         // per site: soft-LoS pathloss + shadow

        std::vector<double> pre_rx_dbm;          // per (cell, beam)
        std::vector<double> pre_rx_mw;           // linear mirror
        std::vector<double> cell_pre_mw_sum;     // per cell: sum over beams
        std::vector<double> rxg_db;              // per (cell, panel, rx option)

        std::vector<L1Ring> ring_pre;            // per (cell, beam)
        std::vector<L1Ring> ring_rx;             // per (cell, panel, rx option)
        std::vector<double> l1_pre;              // dB means at the last L1 instant
        std::vector<double> l1_rx;
        bool l1_valid = false;

        std::vector<PanelRxSelection> best_rx;   // per cell: Eq-8 style selection
        std::vector<double> l1_cell_input;       // per (cell, beam): values feeding Eqs 2-5
        std::vector<std::optional<double>> l3_beam;  // per (cell, beam)
        std::vector<std::optional<double>> l3_cell;  // per cell

        UePhase phase = UePhase::kAttached;
        int serving_cell = -1;
        int serving_beam = 1;
        PanelRxSelection serving_rx{1, kWideRxBeam};

        std::vector<TttState> ttt;               // per cell
        RlmState rlm{4};
        RlfContext rlf;
        BfrContext bfr;

        // Pre-HO refined target acquisition (rx2/rx3)
        struct Acquisition {
            int cell = -1;
            int tx_beam = 1;
            bool ready = false;
            double ready_at_ms = 0.0;
            PanelRxSelection rx;
        };
        std::optional<Acquisition> acq;

        // Pending command (nonzero preparation delay) and execution state
        std::optional<HandoverDecision> pending_cmd;
        double pending_cmd_at_ms = 0.0;
        HandoverContext ho;
        std::optional<double> reacq_ready_at_ms;

        double reattach_at_ms = 0.0;

        bool has_sinr = false;
        SinrSample sinr;

        OutageLedger outage;
        std::vector<HoRecord> ho_history;
    };

    // Index helpers: beams/panels are 1-based ids, rx option 0 is wide.
    int cb_index(int cell, int beam) const { return cell * 12 + beam - 1; }
    int cdr_index(int cell, int panel, int rx_option) const {
        return (cell * 3 + panel - 1) * 8 + rx_option;
    }
    bool is_l1_instant(int step) const { return step % cfg_.l1_period_steps == 0; }

    std::span<const int> rx_options(bool refined) const {
        return refined ? std::span<const int>(refined_options_)
                       : std::span<const int>(wide_option_);
    }

    void init_ues() {
        const auto drops =
            drop_ues(layout_, cfg_.n_ue, cfg_.ue_speed_mps(), cfg_.rx_height_m, cfg_.seed);
        ues_.resize(drops.size());
        const double fd = doppler_hz_;
        for (std::size_t i = 0; i < drops.size(); ++i) {
            UeRuntime& ue = ues_[i];
            ue.kin = drops[i];
            ue.shadow.reserve(static_cast<std::size_t>(n_sites_));
            for (int s = 0; s < n_sites_; ++s)
                ue.shadow.emplace_back(
                    Rng(cfg_.seed, RngStream::kShadow, i, static_cast<std::uint64_t>(s)),
                    cfg_.shadow_sigma_los_db, cfg_.shadow_sigma_nlos_db,
                    cfg_.shadow_corr_dist_m, ue.kin.position);
            ue.fading.resize(static_cast<std::size_t>(n_cells_) * 12);
            if (cfg_.fading_enabled) {
                for (int c = 0; c < n_cells_; ++c)
                    for (int b = 1; b <= 12; ++b)
                        ue.fading[static_cast<std::size_t>(cb_index(c, b))] = FadingProcess(
                            Rng(cfg_.seed, RngStream::kFading, i,
                                static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(b)),
                            cfg_.fading_sinusoids, fd);
            }
            ue.geom.resize(static_cast<std::size_t>(n_sites_));
            ue.arrival_az_deg.resize(static_cast<std::size_t>(n_sites_));
            ue.departure_az_deg.resize(static_cast<std::size_t>(n_sites_));
            ue.zenith_tx_deg.resize(static_cast<std::size_t>(n_sites_));
            ue.zenith_rx_deg.resize(static_cast<std::size_t>(n_sites_));
            ue.softloss_db.resize(static_cast<std::size_t>(n_sites_));
            ue.pre_rx_dbm.resize(static_cast<std::size_t>(n_cells_) * 12);
            ue.pre_rx_mw.resize(static_cast<std::size_t>(n_cells_) * 12);
            ue.cell_pre_mw_sum.resize(static_cast<std::size_t>(n_cells_));
            ue.rxg_db.resize(static_cast<std::size_t>(n_cells_) * 3 * 8);
            ue.ring_pre.assign(static_cast<std::size_t>(n_cells_) * 12,
                               L1Ring(cfg_.l1_filter_length));
            ue.ring_rx.assign(static_cast<std::size_t>(n_cells_) * 3 * 8,
                              L1Ring(cfg_.l1_filter_length));
            ue.l1_pre.resize(ue.ring_pre.size());
            ue.l1_rx.resize(ue.ring_rx.size());
            ue.best_rx.resize(static_cast<std::size_t>(n_cells_));
            ue.l1_cell_input.resize(static_cast<std::size_t>(n_cells_) * 12);
            ue.l3_beam.resize(static_cast<std::size_t>(n_cells_) * 12);
            ue.l3_cell.resize(static_cast<std::size_t>(n_cells_));
            ue.ttt.resize(static_cast<std::size_t>(n_cells_));
            ue.rlm = RlmState(cfg_.rlm_window);
            ue.rlf.q_out_db = cfg_.gamma_out_db;
            ue.rlf.q_in_db = cfg_.gamma_in_db;
            ue.rlf.t_rlf_ms = cfg_.t_rlf_ms;
            ue.bfr.detect_count = cfg_.bfd_detect_count;
            ue.bfr.n_attempts = cfg_.n_batt;
            ue.bfr.t_attempt_ms = cfg_.t_batt_ms;
            if (cfg_.meas_noise_sigma_db > 0.0)
                meas_noise_rng_.emplace_back(cfg_.seed, RngStream::kMeasurementNoise, i);
        }
        if (cfg_.sinr_mode == InterferenceMode::kMonteCarlo)
            mc_rng_ = Rng(cfg_.seed, RngStream::kScheduling);
    }

    // ------------------------------------------------------------------
    // Phases

    void mobility_phase() {
        const double dt_s = cfg_.time_step_ms / 1000.0;
        for (auto& ue : ues_) ue.kin = step_mobility(ue.kin, dt_s, layout_);
    }

    void channel_phase(double t_ms) {
        const double t_s = t_ms / 1000.0;
        for (std::size_t i = 0; i < ues_.size(); ++i) {
            UeRuntime& ue = ues_[i];
            update_geometry(ue);
            const double heading_deg = rad_to_deg(ue.kin.heading_rad);
            for (int c = 0; c < n_cells_; ++c) {
                const int site = layout_.cells[static_cast<std::size_t>(c)].site;
                const double sector_az = layout_.cells[static_cast<std::size_t>(c)].sector_az_deg;
                const double az_cell_frame =
                    wrap_deg(ue.departure_az_deg[static_cast<std::size_t>(site)] - sector_az);
                const double theta_tx = ue.zenith_tx_deg[static_cast<std::size_t>(site)];
                const double loss = ue.softloss_db[static_cast<std::size_t>(site)];
                double cell_sum_mw = 0.0;
                for (int b = 1; b <= 12; ++b) {
                    const int idx = cb_index(c, b);
                    const double fading =
                        cfg_.fading_enabled
                            ? ue.fading[static_cast<std::size_t>(idx)].sample_db(t_s)
                            : 0.0;
                    const double v =
                        raw_rsrp_dbm(cfg_.tx_power_dbm,
                                     tx_beam_gain(tx_grid_, b, theta_tx, az_cell_frame), loss,
                                     0.0, fading);
                    ue.pre_rx_dbm[static_cast<std::size_t>(idx)] = v;
                    const double mw = dbm_to_mw(v);
                    ue.pre_rx_mw[static_cast<std::size_t>(idx)] = mw;
                    cell_sum_mw += mw;
                    channel_digest_.update(v);
                }
                ue.cell_pre_mw_sum[static_cast<std::size_t>(c)] = cell_sum_mw;

                const double az_ue_frame =
                    wrap_deg(ue.arrival_az_deg[static_cast<std::size_t>(site)] - heading_deg);
                const double theta_rx = ue.zenith_rx_deg[static_cast<std::size_t>(site)];
                for (int d = 1; d <= 3; ++d) {
                    for (int r = 0; r <= 7; ++r)
                        ue.rxg_db[static_cast<std::size_t>(cdr_index(c, d, r))] =
                            rx_gain(panels_, d, r, theta_rx, az_ue_frame);
                }
            }
            if (trace_ue_ == static_cast<int>(i)) {
                for (int c = 0; c < n_cells_; ++c)
                    for (int b = 1; b <= 12; ++b)
                        channel_trace_.push_back(
                            {t_ms, c, b, ue.pre_rx_dbm[static_cast<std::size_t>(cb_index(c, b))],
                             ue.pre_rx_dbm[static_cast<std::size_t>(cb_index(c, b))] +
                                 ue.rxg_db[static_cast<std::size_t>(cdr_index(
                                     c, ue.serving_rx.panel, ue.serving_rx.rx_beam))]});
            }
        }
    }

    void update_geometry(UeRuntime& ue) {
        for (int s = 0; s < n_sites_; ++s) {
            const Vec2 site_pos = layout_.site_positions[static_cast<std::size_t>(s)];
            const auto eff = effective_distance(ue.kin.position, site_pos, layout_,
                                                cfg_.tx_height_m, cfg_.rx_height_m);
            ue.geom[static_cast<std::size_t>(s)] = eff;
            const Vec2 img = site_pos + layout_.wrap_images[static_cast<std::size_t>(eff.image_index)];
            const Vec2 to_ue = ue.kin.position - img;
            const double az_dep = rad_to_deg(std::atan2(to_ue.y, to_ue.x));
            ue.departure_az_deg[static_cast<std::size_t>(s)] = az_dep;
            ue.arrival_az_deg[static_cast<std::size_t>(s)] = wrap_deg(az_dep + 180.0);
            const double dh = cfg_.tx_height_m - cfg_.rx_height_m;
            const double elev = rad_to_deg(std::atan2(dh, eff.distance_2d));
            ue.zenith_tx_deg[static_cast<std::size_t>(s)] = 90.0 + elev;  // looking down
            ue.zenith_rx_deg[static_cast<std::size_t>(s)] = 90.0 - elev;  // looking up

            ue.shadow[static_cast<std::size_t>(s)].update(ue.kin.position);
            const double p_los = los_probability_umi(eff.distance_2d);
            const double pl_los =
                path_loss_umi(eff.distance_3d, cfg_.carrier_ghz, true, cfg_.tx_height_m,
                              cfg_.rx_height_m, &diag_);
            const double pl_nlos =
                path_loss_umi(eff.distance_3d, cfg_.carrier_ghz, false, cfg_.tx_height_m,
                              cfg_.rx_height_m, &diag_);
            ue.softloss_db[static_cast<std::size_t>(s)] =
                soft_los_mix(pl_los, pl_nlos, p_los) +
                ue.shadow[static_cast<std::size_t>(s)].value_db(p_los);
        }
    }

    void measurement_phase(double t_ms) {
        (void)t_ms;
        const FilterConfig fc = cfg_.filter_config();
        for (std::size_t i = 0; i < ues_.size(); ++i) {
            UeRuntime& ue = ues_[i];
            // SSB burst: push the current raw components into the L1 window.
            for (std::size_t k = 0; k < ue.ring_pre.size(); ++k) {
                double v = ue.pre_rx_dbm[k];
                if (cfg_.meas_noise_sigma_db > 0.0)
                    v += meas_noise_rng_[i].gaussian(0.0, cfg_.meas_noise_sigma_db);
                ue.ring_pre[k].push(v);
            }
            for (std::size_t k = 0; k < ue.ring_rx.size(); ++k) ue.ring_rx[k].push(ue.rxg_db[k]);
            for (std::size_t k = 0; k < ue.ring_pre.size(); ++k) ue.l1_pre[k] = ue.ring_pre[k].mean();
            for (std::size_t k = 0; k < ue.ring_rx.size(); ++k) ue.l1_rx[k] = ue.ring_rx[k].mean();
            ue.l1_valid = true;

            // Cell-quality chain: the table feeding Eqs. (2)-(5) uses the
            // best-panel wide values, or the refined best (panel, beam) when
            // the approach integrates Rx-beamforming into the HO decision.
            for (int c = 0; c < n_cells_; ++c) {
                const auto sel = select_best_panel_rx(
                    [&](int b, int d, int r) {
                        return ue.l1_pre[static_cast<std::size_t>(cb_index(c, b))] +
                               ue.l1_rx[static_cast<std::size_t>(cdr_index(c, d, r))];
                    },
                    12, 3, rx_options(approach_.l3_uses_refined));
                ue.best_rx[static_cast<std::size_t>(c)] = sel.rx;
                const double rx_term =
                    ue.l1_rx[static_cast<std::size_t>(cdr_index(c, sel.rx.panel, sel.rx.rx_beam))];
                for (int b = 1; b <= 12; ++b)
                    ue.l1_cell_input[static_cast<std::size_t>(cb_index(c, b))] =
                        ue.l1_pre[static_cast<std::size_t>(cb_index(c, b))] + rx_term;

                std::span<const double> beams(&ue.l1_cell_input[static_cast<std::size_t>(cb_index(c, 1))], 12);
                const auto strongest = strongest_beam_set(beams, fc.p_thr_dbm);
                const double cq = cell_quality_l1(strongest, beams, fc.n_str);
                auto& l3c = ue.l3_cell[static_cast<std::size_t>(c)];
                l3c = l3_iir(l3c, cq, fc.k_cell);
                for (int b = 1; b <= 12; ++b) {
                    auto& l3b = ue.l3_beam[static_cast<std::size_t>(cb_index(c, b))];
                    l3b = l3_iir(l3b, beams[static_cast<std::size_t>(b - 1)], fc.k_beam);
                }
            }
        }
    }

    /// Serving Tx beam tracking (network-assisted, on the serving panel) and
    /// the serving panel / Rx beam sweep for the tracked beam.
    void serving_maintenance(UeRuntime& ue) {
        if (!ue.l1_valid || ue.serving_cell < 0) return;
        const int c0 = ue.serving_cell;
        if (!ue.bfr.in_recovery) {
            int best_b = ue.serving_beam;
            double best_v = -std::numeric_limits<double>::infinity();
            for (int b = 1; b <= 12; ++b) {
                const double v =
                    ue.l1_pre[static_cast<std::size_t>(cb_index(c0, b))] +
                    ue.l1_rx[static_cast<std::size_t>(
                        cdr_index(c0, ue.serving_rx.panel, ue.serving_rx.rx_beam))];
                if (v > best_v) {
                    best_v = v;
                    best_b = b;
                }
            }
            ue.serving_beam = best_b;
        }
        ue.serving_rx = select_serving_panel_rx(
            [&](int d, int r) {
                return ue.l1_pre[static_cast<std::size_t>(cb_index(c0, ue.serving_beam))] +
                       ue.l1_rx[static_cast<std::size_t>(cdr_index(c0, d, r))];
            },
            3, rx_options(approach_.serving_link_rx_bf));
    }

    SinrSample compute_sinr(UeRuntime& ue, int cell, int beam, PanelRxSelection sel) {
        if (cfg_.sinr_mode == InterferenceMode::kMonteCarlo) {
            return reference_sinr_for(ue, cell, beam, sel);
        }
        const double frac = static_cast<double>(cfg_.k_b_scheduled) / 12.0;
        double interference_mw = 0.0;
        for (int c = 0; c < n_cells_; ++c) {
            if (c == cell) continue;
            const double rx_factor =
                db_to_linear(ue.rxg_db[static_cast<std::size_t>(cdr_index(c, sel.panel, sel.rx_beam))]);
            interference_mw += frac * rx_factor * ue.cell_pre_mw_sum[static_cast<std::size_t>(c)];
        }
        const double signal_mw =
            ue.pre_rx_mw[static_cast<std::size_t>(cb_index(cell, beam))] *
            db_to_linear(ue.rxg_db[static_cast<std::size_t>(cdr_index(cell, sel.panel, sel.rx_beam))]);
        SinrSample out;
        out.signal_dbm = mw_to_dbm(signal_mw);
        out.noise_dbm = noise_dbm_;
        out.interference_dbm = interference_mw > 0.0
                                   ? mw_to_dbm(interference_mw)
                                   : -std::numeric_limits<double>::infinity();
        out.sinr_db = linear_to_db(signal_mw / (dbm_to_mw(noise_dbm_) + interference_mw));
        return out;
    }

    SinrSample reference_sinr_for(UeRuntime& ue, int cell, int beam, PanelRxSelection sel) {
        std::vector<std::vector<double>> interferers;
        interferers.reserve(static_cast<std::size_t>(n_cells_ - 1));
        for (int c = 0; c < n_cells_; ++c) {
            if (c == cell) continue;
            std::vector<double> beams(12);
            for (int b = 1; b <= 12; ++b)
                beams[static_cast<std::size_t>(b - 1)] =
                    ue.pre_rx_dbm[static_cast<std::size_t>(cb_index(c, b))] +
                    ue.rxg_db[static_cast<std::size_t>(cdr_index(c, sel.panel, sel.rx_beam))];
            interferers.push_back(std::move(beams));
        }
        const double signal = ue.pre_rx_dbm[static_cast<std::size_t>(cb_index(cell, beam))] +
                              ue.rxg_db[static_cast<std::size_t>(cdr_index(cell, sel.panel, sel.rx_beam))];
        return link_sinr(signal, interferers, noise_dbm_, cfg_.k_b_scheduled, cfg_.sinr_mode,
                         cfg_.mc_draws, &mc_rng_);
    }

    void sinr_phase(double t_ms) {
        (void)t_ms;
        for (auto& ue : ues_) {
            ue.has_sinr = false;
            if (ue.phase == UePhase::kAttached) {
                ue.sinr = compute_sinr(ue, ue.serving_cell, ue.serving_beam, ue.serving_rx);
                ue.has_sinr = true;
                ue.rlm.push(ue.sinr.sinr_db);
            }
        }
    }

    void control_phase(double t_ms) {
        for (std::size_t i = 0; i < ues_.size(); ++i) {
            UeRuntime& ue = ues_[i];
            switch (ue.phase) {
                case UePhase::kAttached: attached_control(static_cast<int>(i), ue, t_ms); break;
                case UePhase::kExecutingHo: execution_control(static_cast<int>(i), ue, t_ms); break;
                case UePhase::kReestablishing: reestablish_control(static_cast<int>(i), ue, t_ms); break;
            }
        }
    }

    void attached_control(int ue_id, UeRuntime& ue, double t_ms) {
        // Outage due to SINR degradation accrues per step while attached.
        if (ue.has_sinr && ue.sinr.sinr_db < cfg_.gamma_out_db)
            ue.outage.book(t_ms, t_ms + cfg_.time_step_ms, OutageCause::kSinrDegradation);

        if (is_l1_instant(step_index_)) {
            beam_failure_detection(ue, t_ms);
            a3_and_preparation(ue_id, ue, t_ms);
            acquisition_pipeline(ue, t_ms);
        }
        if (ue.phase != UePhase::kAttached) return;  // HO command may have detached

        bfr_attempts(ue_id, ue, t_ms);
        if (ue.phase != UePhase::kAttached) return;

        // Pending command after a nonzero preparation delay.
        if (ue.pending_cmd && t_ms + 1e-9 >= ue.pending_cmd_at_ms) {
            issue_ho_command(ue_id, ue, t_ms, *ue.pending_cmd);
            ue.pending_cmd.reset();
            return;
        }

        if (ue.rlm.has_value()) {
            ue.rlf = update_rlf(ue.rlf, ue.rlm.value_db(), cfg_.time_step_ms);
            if (ue.rlf.phase == RlfPhase::kRlf) declare_rlf(ue_id, ue, t_ms);
        }
    }

    void beam_failure_detection(UeRuntime& ue, double t_ms) {
        if (!ue.has_sinr || ue.bfr.in_recovery) return;
        if (ue.sinr.sinr_db < cfg_.gamma_out_db) {
            ++ue.bfr.consecutive_low;
        } else {
            ue.bfr.consecutive_low = 0;
        }
        if (ue.bfr.consecutive_low >= ue.bfr.detect_count) {
            ue.bfr.in_recovery = true;
            ue.bfr.attempts_made = 0;
            ue.bfr.recovery_beam = ue.serving_beam;  // already tracks the strongest L1 beam
            ue.bfr.next_attempt_ms = t_ms + ue.bfr.t_attempt_ms;
        }
    }

    void bfr_attempts(int ue_id, UeRuntime& ue, double t_ms) {
        if (!ue.bfr.in_recovery) return;
        if (t_ms + 1e-9 < ue.bfr.next_attempt_ms) return;
        const SinrSample s = compute_sinr(ue, ue.serving_cell, ue.bfr.recovery_beam,
                                          ue.serving_rx);
        ++ue.bfr.attempts_made;
        if (s.sinr_db >= cfg_.gamma_out_db) {
            ue.serving_beam = ue.bfr.recovery_beam;
            ue.bfr.reset();
            push_event(t_ms, ue_id, EventType::kBfrOk, ue.serving_cell, -1, ue.serving_beam);
            return;
        }
        if (ue.bfr.attempts_made >= ue.bfr.n_attempts) {
            push_event(t_ms, ue_id, EventType::kBfrFail, ue.serving_cell, -1,
                       ue.bfr.recovery_beam);
            declare_rlf(ue_id, ue, t_ms);
            return;
        }
        ue.bfr.next_attempt_ms = t_ms + ue.bfr.t_attempt_ms;
    }

    void a3_and_preparation(int ue_id, UeRuntime& ue, double t_ms) {
        if (!ue.l3_cell[static_cast<std::size_t>(ue.serving_cell)].has_value()) return;
        const double serving_l3 = *ue.l3_cell[static_cast<std::size_t>(ue.serving_cell)];
        const double dt_eval = cfg_.l1_period_steps * cfg_.time_step_ms;
        std::vector<int> triggered;
        for (int c = 0; c < n_cells_; ++c) {
            if (c == ue.serving_cell) continue;
            const auto& l3n = ue.l3_cell[static_cast<std::size_t>(c)];
            if (!l3n.has_value()) continue;
            auto& state = ue.ttt[static_cast<std::size_t>(c)];
            const bool was_triggered = state.phase == A3Phase::kTriggered;
            state = evaluate_a3(serving_l3, *l3n, cfg_.a3_offset_db, state, dt_eval, cfg_.ttt_ms);
            if (state.phase == A3Phase::kTriggered && !was_triggered) {
                triggered.push_back(c);
                push_event(t_ms, ue_id, EventType::kA3Trigger, ue.serving_cell, c, 0);
            }
        }
        if (triggered.empty() || ue.pending_cmd) return;

        std::vector<double> l3_values(static_cast<std::size_t>(n_cells_),
                                      -std::numeric_limits<double>::infinity());
        std::vector<std::vector<double>> l3_beams(static_cast<std::size_t>(n_cells_));
        for (int c : triggered) {
            l3_values[static_cast<std::size_t>(c)] = *ue.l3_cell[static_cast<std::size_t>(c)];
            auto& beams = l3_beams[static_cast<std::size_t>(c)];
            beams.resize(12, -std::numeric_limits<double>::infinity());
            for (int b = 1; b <= 12; ++b) {
                const auto& v = ue.l3_beam[static_cast<std::size_t>(cb_index(c, b))];
                if (v.has_value()) beams[static_cast<std::size_t>(b - 1)] = *v;
            }
        }
        const auto decision = prepare_handover(triggered, l3_values, l3_beams, ue.serving_cell);
        if (cfg_.ho_prep_delay_ms <= 0.0) {
            issue_ho_command(ue_id, ue, t_ms, decision);
        } else {
            ue.pending_cmd = decision;
            ue.pending_cmd_at_ms = t_ms + cfg_.ho_prep_delay_ms;
        }
    }

    /// Pre-HO refined target beam acquisition: an early report goes out when
    /// a TTT window opens; the target repeats the CSI-RS of its strongest
    /// reported beam and the sweep completes one SSB period later.
    void acquisition_pipeline(UeRuntime& ue, double t_ms) {
        if (!approach_.pre_ho_refined_acquisition) return;
        int desired = -1;
        double best = -std::numeric_limits<double>::infinity();
        for (int c = 0; c < n_cells_; ++c) {
            if (c == ue.serving_cell) continue;
            const auto& state = ue.ttt[static_cast<std::size_t>(c)];
            if (state.phase == A3Phase::kIdle) continue;
            const auto& l3n = ue.l3_cell[static_cast<std::size_t>(c)];
            if (l3n.has_value() && *l3n > best) {
                best = *l3n;
                desired = c;
            }
        }
        if (desired < 0) return;
        if (!ue.acq || ue.acq->cell != desired) {
            UeRuntime::Acquisition acq;
            acq.cell = desired;
            acq.tx_beam = strongest_l3_beam(ue, desired);
            acq.ready = false;
            acq.ready_at_ms = t_ms + cfg_.ssb_period_ms;
            ue.acq = acq;
            return;
        }
        if (!ue.acq->ready && t_ms + 1e-9 >= ue.acq->ready_at_ms) {
            ue.acq->rx = sweep_refined(ue, ue.acq->cell, ue.acq->tx_beam);
            ue.acq->ready = true;
        }
    }

    int strongest_l3_beam(const UeRuntime& ue, int cell) const {
        int best_b = 1;
        double best_v = -std::numeric_limits<double>::infinity();
        for (int b = 1; b <= 12; ++b) {
            const auto& v = ue.l3_beam[static_cast<std::size_t>(cb_index(cell, b))];
            if (v.has_value() && *v > best_v) {
                best_v = *v;
                best_b = b;
            }
        }
        return best_b;
    }

    /// Refined (panel, Rx beam) sweep against one cell's beam from the
    /// current L1 table.
    PanelRxSelection sweep_refined(const UeRuntime& ue, int cell, int tx_beam) const {
        return select_serving_panel_rx(
            [&](int d, int r) {
                return ue.l1_pre[static_cast<std::size_t>(cb_index(cell, tx_beam))] +
                       ue.l1_rx[static_cast<std::size_t>(cdr_index(cell, d, r))];
            },
            3, rx_options(true));
    }

    /// Best panel in wide mode toward one cell from current raw gains.
    PanelRxSelection best_wide_panel(const UeRuntime& ue, int cell) const {
        int best_d = 1;
        double best_v = -std::numeric_limits<double>::infinity();
        for (int d = 1; d <= 3; ++d) {
            const double v = ue.rxg_db[static_cast<std::size_t>(cdr_index(cell, d, kWideRxBeam))];
            if (v > best_v) {
                best_v = v;
                best_d = d;
            }
        }
        return {best_d, kWideRxBeam};
    }

    void issue_ho_command(int ue_id, UeRuntime& ue, double t_ms, const HandoverDecision& d) {
        push_event(t_ms, ue_id, EventType::kHoCmd, ue.serving_cell, d.target_cell, d.prepared_beam);
        ue.ho = HandoverContext{};
        ue.ho.target_cell = d.target_cell;
        ue.ho.prepared_beam = d.prepared_beam;
        ue.ho.command_time_ms = t_ms;
        ue.reacq_ready_at_ms.reset();
        if (approach_.pre_ho_refined_acquisition) {
            if (ue.acq && ue.acq->ready && ue.acq->cell == d.target_cell) {
                ue.ho.refined = RefinedTargetBeam{d.target_cell, ue.acq->tx_beam, ue.acq->rx};
            } else {
                // Target changed after (or before) the sweep: re-acquire, one
                // extra SSB period.
                ue.reacq_ready_at_ms = t_ms + cfg_.ssb_period_ms;
            }
        }
        ue.phase = UePhase::kExecutingHo;
        ue.rlf.reset();
        ue.rlm.reset();
        ue.bfr.reset();
        ue.pending_cmd.reset();
        for (auto& t : ue.ttt) t = TttState{};
    }

    void execution_control(int ue_id, UeRuntime& ue, double t_ms) {
        // Late refined acquisition lands at the first L1 instant past the
        // re-acquisition window.
        if (ue.reacq_ready_at_ms && is_l1_instant(step_index_) && ue.l1_valid &&
            t_ms + 1e-9 >= *ue.reacq_ready_at_ms) {
            const int beam = ue.ho.prepared_beam;
            ue.ho.refined = RefinedTargetBeam{ue.ho.target_cell, beam,
                                              sweep_refined(ue, ue.ho.target_cell, beam)};
            ue.reacq_ready_at_ms.reset();
        }

        const double elapsed = t_ms - ue.ho.command_time_ms;
        if (elapsed <= 1e-9) return;
        const double periods = elapsed / cfg_.rach_period_ms;
        if (std::abs(periods - std::round(periods)) > 1e-6) return;  // between attempts

        const PanelRxSelection sel = ue.ho.refined.has_value()
                                         ? ue.ho.refined->rx
                                         : best_wide_panel(ue, ue.ho.target_cell);
        const SinrSample s = compute_sinr(ue, ue.ho.target_cell, ue.ho.prepared_beam, sel);
        const RachOutcome outcome =
            execute_handover_step(s.sinr_db, elapsed, cfg_.gamma_out_db, cfg_.t_hof_ms);
        if (outcome == RachOutcome::kPending) {
            ++ue.ho.failed_attempts;
            return;
        }
        if (outcome == RachOutcome::kSuccess) {
            const int from = ue.serving_cell;
            complete_attach(ue, ue.ho.target_cell, ue.ho.prepared_beam, sel);
            ++counters_.ho_success;
            ue.outage.book(ue.ho.command_time_ms, ue.ho.command_time_ms + cfg_.ho_outage_ms,
                           OutageCause::kSuccessfulHo);
            ue.ho_history.push_back({t_ms, from, ue.serving_cell});
            switch (classify_fast_ho(ue.ho_history, cfg_.t_fh_s * 1000.0)) {
                case FastHoKind::kPingPong: ++counters_.pingpong; break;
                case FastHoKind::kShortStay: ++counters_.shortstay; break;
                case FastHoKind::kNone: break;
            }
            push_event(t_ms, ue_id, EventType::kHoSuccess, from, ue.serving_cell, ue.serving_beam);
        } else {
            ++ue.ho.failed_attempts;
            ++counters_.hof;
            push_event(t_ms, ue_id, EventType::kHof, ue.serving_cell, ue.ho.target_cell,
                       ue.ho.prepared_beam);
            begin_reestablishment(ue, t_ms);
        }
    }

    void declare_rlf(int ue_id, UeRuntime& ue, double t_ms) {
        ++counters_.rlf;
        push_event(t_ms, ue_id, EventType::kRlf, ue.serving_cell, -1, ue.serving_beam);
        begin_reestablishment(ue, t_ms);
    }

    void begin_reestablishment(UeRuntime& ue, double t_ms) {
        ue.outage.book(t_ms, t_ms + cfg_.reest_outage_ms, OutageCause::kReestablishment);
        ue.phase = UePhase::kReestablishing;
        ue.reattach_at_ms = t_ms + cfg_.reest_outage_ms;
        ue.rlf.reset();
        ue.rlm.reset();
        ue.bfr.reset();
        ue.acq.reset();
        ue.pending_cmd.reset();
        ue.ho_history.clear();
        for (auto& t : ue.ttt) t = TttState{};
    }

    void reestablish_control(int ue_id, UeRuntime& ue, double t_ms) {
        if (t_ms + 1e-9 < ue.reattach_at_ms) return;
        const auto [cell, beam] = instant_cell_selection(ue);
        // Filter memories restart from the first post-attach sample.
        for (auto& r : ue.ring_pre) r.clear();
        for (auto& r : ue.ring_rx) r.clear();
        ue.l1_valid = false;
        for (auto& v : ue.l3_beam) v.reset();
        for (auto& v : ue.l3_cell) v.reset();
        const PanelRxSelection sel = approach_.serving_link_rx_bf
                                         ? instant_refined(ue, cell)
                                         : best_wide_panel(ue, cell);
        complete_attach(ue, cell, beam, sel);
        push_event(t_ms, ue_id, EventType::kReest, -1, cell, beam);
    }

    /// Attach target from the instantaneous wide-beam cell quality of the
    /// current raw table (used at the initial drop and after the
    /// re-establishment outage, when no filtered measurements exist).
    std::pair<int, int> instant_cell_selection(const UeRuntime& ue) const {
        int best_cell = 0;
        double best_q = -std::numeric_limits<double>::infinity();
        int best_beam = 1;
        for (int c = 0; c < n_cells_; ++c) {
            const auto wide = best_wide_panel(ue, c);
            std::array<double, 12> values{};
            int arg_b = 1;
            double arg_v = -std::numeric_limits<double>::infinity();
            for (int b = 1; b <= 12; ++b) {
                const double v =
                    ue.pre_rx_dbm[static_cast<std::size_t>(cb_index(c, b))] +
                    ue.rxg_db[static_cast<std::size_t>(cdr_index(c, wide.panel, wide.rx_beam))];
                values[static_cast<std::size_t>(b - 1)] = v;
                if (v > arg_v) {
                    arg_v = v;
                    arg_b = b;
                }
            }
            const auto strongest = strongest_beam_set(values, cfg_.p_thr_dbm);
            const double q = cell_quality_l1(strongest, values, cfg_.n_str);
            if (q > best_q) {
                best_q = q;
                best_cell = c;
                best_beam = arg_b;
            }
        }
        return {best_cell, best_beam};
    }

    PanelRxSelection instant_refined(const UeRuntime& ue, int cell) const {
        return select_serving_panel_rx(
            [&](int d, int r) {
                return ue.rxg_db[static_cast<std::size_t>(cdr_index(cell, d, r))];
            },
            3, rx_options(true));
    }

    void complete_attach(UeRuntime& ue, int cell, int beam, PanelRxSelection sel) {
        ue.phase = UePhase::kAttached;
        ue.serving_cell = cell;
        ue.serving_beam = beam;
        ue.serving_rx = sel;
        ue.rlf.reset();
        ue.rlm.reset();
        ue.bfr.reset();
        ue.acq.reset();
        ue.reacq_ready_at_ms.reset();
        for (auto& t : ue.ttt) t = TttState{};
    }

    void initial_attach(UeRuntime& ue) {
        const auto [cell, beam] = instant_cell_selection(ue);
        const PanelRxSelection sel = approach_.serving_link_rx_bf
                                         ? instant_refined(ue, cell)
                                         : best_wide_panel(ue, cell);
        complete_attach(ue, cell, beam, sel);
    }

    void kpi_sample_phase(double t_ms) {
        if (!is_l1_instant(step_index_)) return;
        for (std::size_t i = 0; i < ues_.size(); ++i) {
            const UeRuntime& ue = ues_[i];
            if (ue.has_sinr)
                sinr_rows_.push_back({t_ms, static_cast<int>(i), ue.sinr.sinr_db});
        }
    }

    void push_event(double t_ms, int ue, EventType type, int cell_a, int cell_b, int beam) {
        events_.push_back({t_ms, ue, type, cell_a, cell_b, beam});
    }

    RunConfig cfg_;
    ApproachConfig approach_;
    NetworkLayout layout_;
    TxBeamGrid tx_grid_;
    MpuePanelSet panels_;
    int n_cells_ = 0;
    int n_sites_ = 0;
    double doppler_hz_ = 0.0;
    double noise_dbm_ = 0.0;
    std::array<int, 7> refined_options_{};
    std::array<int, 1> wide_option_{};

    std::vector<UeRuntime> ues_;
    std::vector<Rng> meas_noise_rng_;
    Rng mc_rng_;

    int step_index_ = 0;
    KpiCounters counters_;
    std::vector<EventRecord> events_;
    std::vector<SinrRow> sinr_rows_;
    Fnv1a channel_digest_;
    ChannelDiagnostics diag_;
    int trace_ue_ = -1;
    std::vector<ChannelTraceRow> channel_trace_;
};

inline RunResult run_simulation(const RunConfig& cfg, int trace_ue = -1) {
    Simulation sim(cfg);
    if (trace_ue >= 0) sim.set_trace_ue(trace_ue);
    sim.run();
    return sim.finalize();
}

// ---------------------------------------------------------------------------
// Campaigns

struct CampaignCell {
    Approach approach = Approach::kReference;
    std::uint64_t seed = 0;
    KpiReport report;
    std::uint64_t channel_digest = 0;
    double median_sinr_db = 0.0;
    double p2_sinr_db = 0.0;
};

struct CampaignSummary {
    Approach approach = Approach::kReference;
    double rlf_per_ue_min = 0.0;
    double hof_per_ue_min = 0.0;
    double ho_success_per_ue_min = 0.0;
    double fast_ho_per_ue_min = 0.0;
    double total_outage_pct = 0.0;
    double outage_sinr_degradation_pct = 0.0;
    double outage_reestablishment_pct = 0.0;
    double outage_successful_ho_pct = 0.0;
    double median_sinr_db = 0.0;  // pooled across seeds
    double p2_sinr_db = 0.0;
};

struct CampaignResult {
    std::vector<CampaignCell> cells;                 // one per (approach, seed)
    std::vector<CampaignSummary> summaries;          // one per approach
    std::vector<RunResult> runs;                     // aligned with cells
};

/// Runs every (approach, seed) pair. Seeds are shared across approaches, so
/// drops and channel randomness pair up; runs execute in parallel.
inline CampaignResult run_campaign(const RunConfig& base,
                                   const std::vector<Approach>& approaches,
                                   const std::vector<std::uint64_t>& seeds,
                                   unsigned n_threads = 0) {
    if (seeds.empty()) throw std::invalid_argument("run_campaign: need at least one seed");
    if (n_threads == 0) n_threads = std::max(1u, std::thread::hardware_concurrency());

    struct Job {
        Approach approach;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (const auto a : approaches)
        for (const auto s : seeds) jobs.push_back({a, s});

    std::vector<RunResult> results(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= jobs.size()) return;
            RunConfig cfg = base;
            cfg.approach = jobs[k].approach;
            cfg.seed = jobs[k].seed;
            results[k] = run_simulation(cfg);
        }
    };
    std::vector<std::future<void>> pool;
    const unsigned workers = std::min<unsigned>(n_threads, static_cast<unsigned>(jobs.size()));
    for (unsigned w = 0; w < workers; ++w)
        pool.push_back(std::async(std::launch::async, worker));
    for (auto& f : pool) f.get();

    CampaignResult out;
    for (std::size_t k = 0; k < jobs.size(); ++k) {
        CampaignCell cell;
        cell.approach = jobs[k].approach;
        cell.seed = jobs[k].seed;
        cell.report = results[k].report;
        cell.channel_digest = results[k].channel_digest;
        std::vector<double> samples;
        samples.reserve(results[k].sinr_rows.size());
        for (const auto& row : results[k].sinr_rows) samples.push_back(row.sinr_db);
        if (!samples.empty()) {
            cell.median_sinr_db = percentile(samples, 50.0);
            cell.p2_sinr_db = percentile(samples, 2.0);
        }
        out.cells.push_back(cell);
    }
    for (const auto a : approaches) {
        CampaignSummary s;
        s.approach = a;
        int n = 0;
        std::vector<double> pooled;
        for (std::size_t k = 0; k < jobs.size(); ++k) {
            if (jobs[k].approach != a) continue;
            ++n;
            const auto& r = results[k].report;
            s.rlf_per_ue_min += r.rlf_per_ue_min;
            s.hof_per_ue_min += r.hof_per_ue_min;
            s.ho_success_per_ue_min += r.ho_success_per_ue_min;
            s.fast_ho_per_ue_min += r.fast_ho_per_ue_min;
            s.total_outage_pct += r.total_outage_pct;
            s.outage_sinr_degradation_pct += r.outage_sinr_degradation_pct;
            s.outage_reestablishment_pct += r.outage_reestablishment_pct;
            s.outage_successful_ho_pct += r.outage_successful_ho_pct;
            for (const auto& row : results[k].sinr_rows) pooled.push_back(row.sinr_db);
        }
        if (n > 0) {
            const double inv = 1.0 / n;
            s.rlf_per_ue_min *= inv;
            s.hof_per_ue_min *= inv;
            s.ho_success_per_ue_min *= inv;
            s.fast_ho_per_ue_min *= inv;
            s.total_outage_pct *= inv;
            s.outage_sinr_degradation_pct *= inv;
            s.outage_reestablishment_pct *= inv;
            s.outage_successful_ho_pct *= inv;
        }
        if (!pooled.empty()) {
            s.median_sinr_db = percentile(pooled, 50.0);
            s.p2_sinr_db = percentile(pooled, 2.0);
        }
        out.summaries.push_back(s);
    }
    out.runs = std::move(results);
    return out;
}

}  // namespace mpue_sim
