#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpue_sim/core.hpp"

namespace mpue_sim {

enum class OutageCause { kSinrDegradation = 0, kSuccessfulHo = 1, kReestablishment = 2 };

inline const char* outage_cause_name(OutageCause c) {
    switch (c) {
        case OutageCause::kSinrDegradation: return "sinr_degradation";
        case OutageCause::kSuccessfulHo: return "successful_ho";
        case OutageCause::kReestablishment: return "reestablishment";
    }
    return "?";
}

struct OutageInterval {
    double start_ms = 0.0;
    double end_ms = 0.0;
    OutageCause cause = OutageCause::kSinrDegradation;

    double length_ms() const { return end_ms - start_ms; }
};

/// Per-UE ledger of non-overlapping outage intervals. Overlapping proposals
/// are resolved with precedence reestablishment > successful HO > SINR
/// degradation: a higher-priority booking carves lower-priority intervals
/// out of its span, a lower-priority one only fills the gaps.
class OutageLedger {
  public:
    /// Books [start, end) with the given cause. Zero or negative spans are
    /// rejected and counted as diagnostics.
    void book(double start_ms, double end_ms, OutageCause cause) {
        if (end_ms <= start_ms) {
            ++rejected_bookings_;
            return;
        }
        const int prio = static_cast<int>(cause);
        std::vector<OutageInterval> pieces{{start_ms, end_ms, cause}};
        std::vector<OutageInterval> result;
        result.reserve(intervals_.size() + 2);

        for (const auto& existing : intervals_) {
            std::vector<OutageInterval> next_pieces;
            for (auto piece : pieces) {
                if (piece.end_ms <= existing.start_ms || piece.start_ms >= existing.end_ms) {
                    next_pieces.push_back(piece);
                    continue;
                }
                if (prio <= static_cast<int>(existing.cause)) {
                    // Existing wins: keep the parts of the new piece outside it.
                    if (piece.start_ms < existing.start_ms)
                        next_pieces.push_back({piece.start_ms, existing.start_ms, cause});
                    if (piece.end_ms > existing.end_ms)
                        next_pieces.push_back({existing.end_ms, piece.end_ms, cause});
                } else {
                    next_pieces.push_back(piece);
                }
            }
            pieces = std::move(next_pieces);

            // Trim the existing interval against higher-priority new pieces.
            bool overlapped = false;
            if (!(end_ms <= existing.start_ms || start_ms >= existing.end_ms) &&
                prio > static_cast<int>(existing.cause)) {
                overlapped = true;
                if (existing.start_ms < start_ms)
                    result.push_back({existing.start_ms, start_ms, existing.cause});
                if (existing.end_ms > end_ms)
                    result.push_back({end_ms, existing.end_ms, existing.cause});
            }
            if (!overlapped) result.push_back(existing);
        }
        for (const auto& piece : pieces)
            if (piece.end_ms > piece.start_ms) result.push_back(piece);

        std::sort(result.begin(), result.end(),
                  [](const OutageInterval& a, const OutageInterval& b) {
                      return a.start_ms < b.start_ms;
                  });
        // Coalesce touching intervals of the same cause (per-step degradation
        // bookings arrive as adjacent slivers).
        intervals_.clear();
        for (const auto& iv : result) {
            if (!intervals_.empty() && intervals_.back().cause == iv.cause &&
                std::abs(intervals_.back().end_ms - iv.start_ms) < 1e-9) {
                intervals_.back().end_ms = iv.end_ms;
            } else {
                intervals_.push_back(iv);
            }
        }
        cached_totals_valid_ = false;
    }

    const std::vector<OutageInterval>& intervals() const { return intervals_; }
    std::uint64_t rejected_bookings() const { return rejected_bookings_; }

    double total_ms() const {
        double t = 0.0;
        for (const auto& iv : intervals_) t += iv.length_ms();
        return t;
    }

    double total_ms(OutageCause cause) const {
        double t = 0.0;
        for (const auto& iv : intervals_)
            if (iv.cause == cause) t += iv.length_ms();
        return t;
    }

  private:
    std::vector<OutageInterval> intervals_;
    std::uint64_t rejected_bookings_ = 0;
    mutable bool cached_totals_valid_ = false;
};

// ---------------------------------------------------------------------------
// Fast handover classification

enum class FastHoKind { kNone, kPingPong, kShortStay };

struct HoRecord {
    double time_ms = 0.0;  // completion time
    int from_cell = -1;
    int to_cell = -1;
};

/// Classifies the newest successful handover against the previous one:
/// A->B->A within the window is a ping-pong, A->B->C a short-stay. Counted
/// on the second handover's completion.
inline FastHoKind classify_fast_ho(const std::vector<HoRecord>& history, double t_fh_ms) {
    if (history.size() < 2) return FastHoKind::kNone;
    const HoRecord& prev = history[history.size() - 2];
    const HoRecord& cur = history.back();
    if (cur.time_ms - prev.time_ms > t_fh_ms) return FastHoKind::kNone;
    return cur.to_cell == prev.from_cell ? FastHoKind::kPingPong : FastHoKind::kShortStay;
}

// ---------------------------------------------------------------------------
// Counters and report

struct KpiCounters {
    std::uint64_t rlf = 0;
    std::uint64_t hof = 0;
    std::uint64_t ho_success = 0;
    std::uint64_t pingpong = 0;
    std::uint64_t shortstay = 0;

    std::uint64_t fast_ho() const { return pingpong + shortstay; }
};

struct KpiReport {
    KpiCounters counters;
    double rlf_per_ue_min = 0.0;
    double hof_per_ue_min = 0.0;
    double ho_success_per_ue_min = 0.0;
    double fast_ho_per_ue_min = 0.0;
    double total_outage_pct = 0.0;
    double outage_sinr_degradation_pct = 0.0;
    double outage_reestablishment_pct = 0.0;
    double outage_successful_ho_pct = 0.0;
};

/// Normalizes counters and outage ledgers into per-UE-per-minute rates and
/// outage percentages of the simulated UE time.
inline KpiReport finalize_report(const KpiCounters& counters,
                                 std::span<const OutageLedger> ledgers, int n_ue,
                                 double t_sim_s) {
    if (t_sim_s <= 0.0) throw std::invalid_argument("finalize_report: t_sim must be > 0");
    if (n_ue <= 0) throw std::invalid_argument("finalize_report: n_ue must be > 0");
    const double ue_minutes = static_cast<double>(n_ue) * t_sim_s / 60.0;
    const double ue_ms = static_cast<double>(n_ue) * t_sim_s * 1000.0;

    KpiReport r;
    r.counters = counters;
    r.rlf_per_ue_min = static_cast<double>(counters.rlf) / ue_minutes;
    r.hof_per_ue_min = static_cast<double>(counters.hof) / ue_minutes;
    r.ho_success_per_ue_min = static_cast<double>(counters.ho_success) / ue_minutes;
    r.fast_ho_per_ue_min = static_cast<double>(counters.fast_ho()) / ue_minutes;

    double deg = 0.0;
    double reest = 0.0;
    double ho = 0.0;
    for (const auto& ledger : ledgers) {
        deg += ledger.total_ms(OutageCause::kSinrDegradation);
        reest += ledger.total_ms(OutageCause::kReestablishment);
        ho += ledger.total_ms(OutageCause::kSuccessfulHo);
    }
    r.outage_sinr_degradation_pct = deg / ue_ms * 100.0;
    r.outage_reestablishment_pct = reest / ue_ms * 100.0;
    r.outage_successful_ho_pct = ho / ue_ms * 100.0;
    r.total_outage_pct =
        r.outage_sinr_degradation_pct + r.outage_reestablishment_pct + r.outage_successful_ho_pct;
    return r;
}

}  // namespace mpue_sim
