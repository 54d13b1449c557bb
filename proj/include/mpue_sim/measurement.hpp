#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mpue_sim/core.hpp"

namespace mpue_sim {

struct FilterConfig {
    int l1_period_steps = 2;   // omega: L1 period in time steps
    int l1_samples = 2;        // N_L1: samples per L1 average
    double k_cell = 4.0;       // L3 IIR coefficient for cell quality
    double k_beam = 4.0;       // L3 IIR coefficient for beam measurements
    double p_thr_dbm = -105.0; // strongest-beam inclusion threshold
    int n_str = 2;             // beams averaged into the cell quality
};

/// Moving-average L1 filter over the most recent samples, averaged in the dB
/// domain. `history` holds the raw values at L1 period spacing, newest last;
/// during warm-up fewer than `n_l1` samples are averaged.
inline double l1_filter(std::span<const double> history, int n_l1) {
    if (history.empty()) throw std::invalid_argument("l1_filter: empty history");
    if (n_l1 < 1) throw std::invalid_argument("l1_filter: n_l1 must be >= 1");
    const std::size_t take = std::min(history.size(), static_cast<std::size_t>(n_l1));
    double sum = 0.0;
    for (std::size_t i = history.size() - take; i < history.size(); ++i) sum += history[i];
    return sum / static_cast<double>(take);
}

/// Fixed-capacity sample ring for the L1 window.
class L1Ring {
  public:
    explicit L1Ring(int capacity = 2) : cap_(capacity) {}

    void push(double v) {
        if (static_cast<int>(buf_.size()) < cap_) {
            buf_.push_back(v);
        } else {
            buf_[static_cast<std::size_t>(head_)] = v;
            head_ = (head_ + 1) % cap_;
        }
        cached_mean_valid_ = false;
    }

    bool empty() const { return buf_.empty(); }

    /// dB-domain mean of the stored window.
    double mean() const {
        if (buf_.empty()) throw std::logic_error("L1Ring: mean of empty window");
        if (!cached_mean_valid_) {
            double s = 0.0;
            for (double v : buf_) s += v;
            cached_mean_ = s / static_cast<double>(buf_.size());
            cached_mean_valid_ = true;
        }
        return cached_mean_;
    }

    void clear() {
        buf_.clear();
        head_ = 0;
        cached_mean_valid_ = false;
    }

  private:
    int cap_;
    int head_ = 0;
    std::vector<double> buf_;
    mutable double cached_mean_ = 0.0;
    mutable bool cached_mean_valid_ = false;
};

/// Indices of beams whose L1 value exceeds the threshold. May be empty.
inline std::vector<int> strongest_beam_set(std::span<const double> l1_beams,
                                           double p_thr_dbm) {
    std::vector<int> set;
    for (std::size_t b = 0; b < l1_beams.size(); ++b)
        if (l1_beams[b] > p_thr_dbm) set.push_back(static_cast<int>(b));
    return set;
}

/// L1 cell quality: mean of the up-to-n_str strongest members of the set.
/// An empty set falls back to the single highest beam value.
inline double cell_quality_l1(std::span<const int> strongest_set,
                              std::span<const double> l1_beams, int n_str) {
    if (l1_beams.empty()) throw std::invalid_argument("cell_quality_l1: no beams");
    if (strongest_set.empty()) {
        double best = l1_beams[0];
        for (double v : l1_beams) best = std::max(best, v);
        return best;
    }
    std::vector<double> members;
    members.reserve(strongest_set.size());
    for (int b : strongest_set) members.push_back(l1_beams[static_cast<std::size_t>(b)]);
    std::sort(members.begin(), members.end(), std::greater<>());
    const std::size_t take = std::min(members.size(), static_cast<std::size_t>(n_str));
    double sum = 0.0;
    for (std::size_t i = 0; i < take; ++i) sum += members[i];
    return sum / static_cast<double>(take);
}

inline double l3_forgetting_factor(double k) { return std::pow(0.5, k / 4.0); }

/// One step of the L3 IIR smoother. A missing previous value seeds the
/// filter with the current L1 input.
inline double l3_iir(std::optional<double> prev_l3, double l1_value, double k) {
    if (!prev_l3.has_value()) return l1_value;
    const double alpha = l3_forgetting_factor(k);
    return alpha * l1_value + (1.0 - alpha) * *prev_l3;
}

struct PanelRxSelection {
    int panel = 1;    // 1-based
    int rx_beam = 0;  // kWideRxBeam or 1..7
};

struct BestBeamSelection {
    int beam = 1;  // 1-based Tx beam
    PanelRxSelection rx;
};

/// Serving panel / Rx beam selection: argmax of the L1 table over (panel,
/// rx beam) for the serving Tx beam. `table(d, r)` is indexed with 1-based
/// panel d and the rx beam ids in `rx_options`. Ties break toward the lowest
/// (panel, beam) index, keeping the decision deterministic.
template <typename TableFn>
PanelRxSelection select_serving_panel_rx(TableFn&& table, int n_panels,
                                         std::span<const int> rx_options) {
    PanelRxSelection best;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int d = 1; d <= n_panels; ++d) {
        for (int r : rx_options) {
            const double v = table(d, r);
            if (v > best_val) {
                best_val = v;
                best = {d, r};
            }
        }
    }
    return best;
}

/// Joint argmax over (Tx beam, panel, Rx beam) for one cell.
template <typename TableFn>
BestBeamSelection select_best_panel_rx(TableFn&& table, int n_beams, int n_panels,
                                       std::span<const int> rx_options) {
    BestBeamSelection best;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int b = 1; b <= n_beams; ++b) {
        for (int d = 1; d <= n_panels; ++d) {
            for (int r : rx_options) {
                const double v = table(b, d, r);
                if (v > best_val) {
                    best_val = v;
                    best = {b, {d, r}};
                }
            }
        }
    }
    return best;
}

}  // namespace mpue_sim
