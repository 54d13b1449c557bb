#pragma once

#include <deque>
#include <span>
#include <vector>

#include "mpue_sim/core.hpp"
#include "mpue_sim/rng.hpp"

namespace mpue_sim {

struct SinrSample {
    double sinr_db = 0.0;
    double signal_dbm = 0.0;
    double interference_dbm = -std::numeric_limits<double>::infinity();
    double noise_dbm = 0.0;
};

enum class InterferenceMode { kExpectation, kMonteCarlo };

/// Average downlink SINR of one (cell, beam) link under the strict-fair
/// scheduler abstraction. `signal_dbm` is the received power of the wanted
/// beam; `interferer_rx_dbm[c]` holds the received powers of all beams of
/// interferer cell c, measured with the same panel/Rx beam the UE uses for
/// the wanted link. With k_scheduled of n_beams beams active per cell, the
/// expected interference from a cell is (k/n) * sum of its beam powers; the
/// Monte-Carlo mode instead averages random k-subsets and exists to validate
/// that closed form.
inline SinrSample link_sinr(double signal_dbm,
                            std::span<const std::vector<double>> interferer_rx_dbm,
                            double noise_dbm, int k_scheduled,
                            InterferenceMode mode = InterferenceMode::kExpectation,
                            int mc_draws = 0, Rng* mc_rng = nullptr) {
    const double noise_mw = dbm_to_mw(noise_dbm);
    double interference_mw = 0.0;

    if (mode == InterferenceMode::kExpectation) {
        for (const auto& beams : interferer_rx_dbm) {
            if (beams.empty()) continue;
            const double frac =
                static_cast<double>(k_scheduled) / static_cast<double>(beams.size());
            double cell_sum = 0.0;
            for (double p : beams) cell_sum += dbm_to_mw(p);
            interference_mw += frac * cell_sum;
        }
    } else {
        if (mc_draws <= 0 || mc_rng == nullptr)
            throw std::invalid_argument("link_sinr: Monte-Carlo mode needs draws and rng");
        double acc = 0.0;
        std::vector<std::size_t> idx;
        for (int draw = 0; draw < mc_draws; ++draw) {
            double draw_mw = 0.0;
            for (const auto& beams : interferer_rx_dbm) {
                if (beams.empty()) continue;
                const std::size_t n = beams.size();
                const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(k_scheduled), n);
                // Partial Fisher-Yates for a uniform k-subset.
                idx.resize(n);
                for (std::size_t i = 0; i < n; ++i) idx[i] = i;
                for (std::size_t i = 0; i < k; ++i) {
                    const std::size_t j = i + static_cast<std::size_t>(mc_rng->uniform_int(n - i));
                    std::swap(idx[i], idx[j]);
                    draw_mw += dbm_to_mw(beams[idx[i]]);
                }
            }
            acc += draw_mw;
        }
        interference_mw = acc / static_cast<double>(mc_draws);
    }

    const double signal_mw = dbm_to_mw(signal_dbm);
    SinrSample out;
    out.signal_dbm = signal_dbm;
    out.noise_dbm = noise_dbm;
    out.interference_dbm = interference_mw > 0.0
                               ? mw_to_dbm(interference_mw)
                               : -std::numeric_limits<double>::infinity();
    out.sinr_db = linear_to_db(signal_mw / (noise_mw + interference_mw));
    return out;
}

/// Radio link monitoring metric: sliding dB-domain average of the serving
/// link SINR over a short window.
class RlmState {
  public:
    explicit RlmState(int window = 4) : window_(window) {
        if (window < 1) throw std::invalid_argument("RlmState: window must be >= 1");
    }

    void push(double serving_sinr_db) {
        samples_.push_back(serving_sinr_db);
        if (static_cast<int>(samples_.size()) > window_) samples_.pop_front();
    }

    bool has_value() const { return !samples_.empty(); }

    double value_db() const {
        if (samples_.empty()) throw std::logic_error("RlmState: no samples");
        double s = 0.0;
        for (double v : samples_) s += v;
        return s / static_cast<double>(samples_.size());
    }

    void reset() { samples_.clear(); }

  private:
    int window_;
    std::deque<double> samples_;
};

}  // namespace mpue_sim
