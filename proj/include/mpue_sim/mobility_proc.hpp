#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpue_sim/core.hpp"
#include "mpue_sim/measurement.hpp"

namespace mpue_sim {

enum class Approach { kReference, kRx1, kRx2, kRx3 };

inline std::string approach_name(Approach a) {
    switch (a) {
        case Approach::kReference: return "reference";
        case Approach::kRx1: return "rx1";
        case Approach::kRx2: return "rx2";
        case Approach::kRx3: return "rx3";
    }
    return "?";
}

inline std::optional<Approach> approach_from_name(const std::string& s) {
    if (s == "reference") return Approach::kReference;
    if (s == "rx1") return Approach::kRx1;
    if (s == "rx2") return Approach::kRx2;
    if (s == "rx3") return Approach::kRx3;
    return std::nullopt;
}

/// Feature switches of the four Rx-beamforming approaches. The flag pattern
/// is fixed per approach: the reference design has no Rx-beamforming at all,
/// rx1 beamforms the serving link, rx2 additionally acquires the refined
/// target beam before a handover, rx3 additionally feeds the refined
/// measurements into the L3 handover decision.
struct ApproachConfig {
    Approach approach = Approach::kReference;
    bool serving_link_rx_bf = false;
    bool pre_ho_refined_acquisition = false;
    bool l3_uses_refined = false;

    static ApproachConfig make(Approach a) {
        switch (a) {
            case Approach::kReference: return {a, false, false, false};
            case Approach::kRx1: return {a, true, false, false};
            case Approach::kRx2: return {a, true, true, false};
            case Approach::kRx3: return {a, true, true, true};
        }
        return {};
    }
};

// ---------------------------------------------------------------------------
// A3 event with time-to-trigger

enum class A3Phase { kIdle, kRunning, kTriggered };

struct TttState {
    A3Phase phase = A3Phase::kIdle;
    double elapsed_ms = 0.0;
};

/// One evaluation of the A3 entering condition for a single neighbor. The
/// condition serving + offset < neighbor must hold for every evaluation in a
/// contiguous window of ttt_ms; any violation resets the window. `dt_ms` is
/// the time since the previous evaluation (the window starts at the first
/// evaluation where the condition holds).
inline TttState evaluate_a3(double serving_l3_dbm, double neighbor_l3_dbm,
                            double offset_db, TttState state, double dt_ms,
                            double ttt_ms) {
    const bool condition = serving_l3_dbm + offset_db < neighbor_l3_dbm;
    if (!condition) return {A3Phase::kIdle, 0.0};
    switch (state.phase) {
        case A3Phase::kIdle:
            state = {A3Phase::kRunning, 0.0};
            break;
        case A3Phase::kRunning:
            state.elapsed_ms += dt_ms;
            break;
        case A3Phase::kTriggered:
            return state;
    }
    if (state.elapsed_ms >= ttt_ms) state.phase = A3Phase::kTriggered;
    return state;
}

// ---------------------------------------------------------------------------
// Handover preparation and execution

struct RefinedTargetBeam {
    int cell = -1;
    int tx_beam = 0;
    PanelRxSelection rx;
};

struct HandoverContext {
    int target_cell = -1;
    int prepared_beam = 0;              // single CFRA beam (strongest reported L3 beam)
    double command_time_ms = 0.0;       // detach instant; RACH attempts follow
    std::optional<RefinedTargetBeam> refined;  // present under rx2/rx3 once acquired
    int failed_attempts = 0;
};

/// Picks the handover target among the neighbors whose A3 window expired:
/// the one with the strongest L3 cell quality. The prepared CFRA beam is the
/// strongest reported L3 beam of that cell.
struct HandoverDecision {
    int target_cell = -1;
    int prepared_beam = 0;
};

inline HandoverDecision prepare_handover(std::span<const int> triggered_cells,
                                         std::span<const double> l3_cell_quality,
                                         const std::vector<std::vector<double>>& l3_beams,
                                         int serving_cell) {
    if (triggered_cells.empty())
        throw std::logic_error("prepare_handover: no triggered neighbor");
    int target = -1;
    double best = -std::numeric_limits<double>::infinity();
    for (int c : triggered_cells) {
        if (c == serving_cell)
            throw std::logic_error("prepare_handover: serving cell cannot be the target");
        if (l3_cell_quality[static_cast<std::size_t>(c)] > best) {
            best = l3_cell_quality[static_cast<std::size_t>(c)];
            target = c;
        }
    }
    const auto& beams = l3_beams[static_cast<std::size_t>(target)];
    int best_beam = 1;
    double best_val = -std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < beams.size(); ++b) {
        if (beams[b] > best_val) {
            best_val = beams[b];
            best_beam = static_cast<int>(b) + 1;
        }
    }
    return {target, best_beam};
}

enum class RachOutcome { kPending, kSuccess, kFailure };

/// One RACH evaluation during handover execution: the attempt succeeds iff
/// the target link SINR clears gamma_out; the handover fails when the timer
/// expires with every attempt below threshold.
inline RachOutcome execute_handover_step(double target_sinr_db, double elapsed_ms,
                                         double gamma_out_db, double t_hof_ms) {
    if (target_sinr_db >= gamma_out_db) return RachOutcome::kSuccess;
    if (elapsed_ms >= t_hof_ms) return RachOutcome::kFailure;
    return RachOutcome::kPending;
}

// ---------------------------------------------------------------------------
// Radio link failure

enum class RlfPhase { kHealthy, kTiming, kRlf };

struct RlfContext {
    double q_out_db = -8.0;
    double q_in_db = -6.0;
    double t_rlf_ms = 1000.0;
    RlfPhase phase = RlfPhase::kHealthy;
    double elapsed_ms = 0.0;

    void reset() {
        phase = RlfPhase::kHealthy;
        elapsed_ms = 0.0;
    }
};

/// Advances the RLF timer with the current RLM SINR. The timer starts below
/// q_out, keeps running anywhere below q_in (hysteresis band), cancels above
/// q_in, and declares an RLF once t_rlf_ms have elapsed.
inline RlfContext update_rlf(RlfContext ctx, double rlm_sinr_db, double dt_ms) {
    switch (ctx.phase) {
        case RlfPhase::kHealthy:
            if (rlm_sinr_db < ctx.q_out_db) {
                ctx.phase = RlfPhase::kTiming;
                ctx.elapsed_ms = 0.0;
            }
            break;
        case RlfPhase::kTiming:
            if (rlm_sinr_db > ctx.q_in_db) {
                ctx.reset();
            } else {
                ctx.elapsed_ms += dt_ms;
                if (ctx.elapsed_ms >= ctx.t_rlf_ms) ctx.phase = RlfPhase::kRlf;
            }
            break;
        case RlfPhase::kRlf:
            break;
    }
    return ctx;
}

// ---------------------------------------------------------------------------
// Beam failure detection and recovery

struct BfrContext {
    int detect_count = 2;    // consecutive sub-threshold L1 periods before failure
    int n_attempts = 4;      // N_BAtt
    double t_attempt_ms = 10.0;

    int consecutive_low = 0;
    bool in_recovery = false;
    int attempts_made = 0;
    int recovery_beam = 0;
    double next_attempt_ms = 0.0;

    void reset_detection() { consecutive_low = 0; }
    void reset() {
        consecutive_low = 0;
        in_recovery = false;
        attempts_made = 0;
        recovery_beam = 0;
    }
};

}  // namespace mpue_sim
