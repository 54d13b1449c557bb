#pragma once

#include <cstdint>
#include <vector>

#include "mpue_sim/core.hpp"
#include "mpue_sim/rng.hpp"

namespace mpue_sim {

struct ChannelDiagnostics {
    std::uint64_t pathloss_distance_clamps = 0;
};

/// Urban-micro street-canyon path loss (dB). LoS is dual-slope around the
/// breakpoint distance; NLoS is lower-bounded by the LoS value.
inline double path_loss_umi(double distance_3d_m, double fc_ghz, bool los,
                            double h_bs_m = 10.0, double h_ut_m = 1.5,
                            ChannelDiagnostics* diag = nullptr) {
    if (distance_3d_m < 1.0) {
        if (diag != nullptr) ++diag->pathloss_distance_clamps;
        distance_3d_m = 1.0;
    }
    const double dh = h_bs_m - h_ut_m;
    const double d2_sq = distance_3d_m * distance_3d_m - dh * dh;
    const double d2 = d2_sq > 0.0 ? std::sqrt(d2_sq) : 0.0;

    // Breakpoint with effective environment height 1 m.
    const double d_bp = 4.0 * (h_bs_m - 1.0) * (h_ut_m - 1.0) * fc_ghz * 1e9 / kSpeedOfLight;

    double pl_los;
    if (d2 <= d_bp) {
        pl_los = 32.4 + 21.0 * std::log10(distance_3d_m) + 20.0 * std::log10(fc_ghz);
    } else {
        pl_los = 32.4 + 40.0 * std::log10(distance_3d_m) + 20.0 * std::log10(fc_ghz) -
                 9.5 * std::log10(d_bp * d_bp + dh * dh);
    }
    if (los) return pl_los;

    const double pl_nlos = 22.4 + 35.3 * std::log10(distance_3d_m) +
                           21.3 * std::log10(fc_ghz) - 0.3 * (h_ut_m - 1.5);
    return std::max(pl_los, pl_nlos);
}

/// Line-of-sight probability for the street-canyon deployment; equals 1 up
/// to 18 m and decays with 2D distance.
inline double los_probability_umi(double distance_2d_m) {
    if (distance_2d_m <= 18.0) return 1.0;
    const double p = 18.0 / distance_2d_m +
                     std::exp(-distance_2d_m / 36.0) * (1.0 - 18.0 / distance_2d_m);
    return std::clamp(p, 0.0, 1.0);
}

/// Soft-LoS blend: probability-weighted average applied in the dB domain,
/// used identically for the loss and for the shadow terms.
inline double soft_los_mix(double los_value_db, double nlos_value_db, double p_los) {
    if (p_los < 0.0 || p_los > 1.0)
        throw std::invalid_argument("soft_los_mix: p_los must be in [0, 1]");
    return p_los * los_value_db + (1.0 - p_los) * nlos_value_db;
}

/// Lognormal shadow fading (dB-Gaussian) with exponential spatial
/// autocorrelation exp(-dd / d_corr). One process pair (LoS/NLoS components)
/// is kept per (UE, site) and shared by the site's sectors.
class ShadowProcess {
  public:
    ShadowProcess() = default;

    ShadowProcess(Rng rng, double sigma_los_db, double sigma_nlos_db, double corr_dist_m,
                  Vec2 initial_pos)
        : rng_(rng),
          sigma_los_(sigma_los_db),
          sigma_nlos_(sigma_nlos_db),
          corr_dist_(corr_dist_m),
          anchor_(initial_pos) {
        value_los_ = rng_.gaussian(0.0, sigma_los_);
        value_nlos_ = rng_.gaussian(0.0, sigma_nlos_);
    }

    /// Evolves both components to a new position; steady-state variance is
    /// preserved by the sqrt(1 - rho^2) innovation scaling.
    void update(Vec2 new_pos) {
        const double dd = (new_pos - anchor_).norm();
        if (dd <= 0.0) return;
        const double rho = std::exp(-dd / corr_dist_);
        const double innov = std::sqrt(std::max(0.0, 1.0 - rho * rho));
        value_los_ = rho * value_los_ + innov * rng_.gaussian(0.0, sigma_los_);
        value_nlos_ = rho * value_nlos_ + innov * rng_.gaussian(0.0, sigma_nlos_);
        anchor_ = new_pos;
    }

    double value_los_db() const { return value_los_; }
    double value_nlos_db() const { return value_nlos_; }

    /// Soft-LoS weighted shadow value.
    double value_db(double p_los) const {
        return soft_los_mix(value_los_, value_nlos_, p_los);
    }

  private:
    Rng rng_;
    double sigma_los_ = 4.0;
    double sigma_nlos_ = 7.82;
    double corr_dist_ = 13.0;
    Vec2 anchor_;
    double value_los_ = 0.0;
    double value_nlos_ = 0.0;
};

/// Fast fading as a sum-of-sinusoids Rayleigh envelope, one independent
/// scalar process per (link, Tx beam). The complex gain is
///   h(t) = 1/sqrt(K) * sum_k exp(j (w_k t + phi_k)),  w_k = 2 pi f_d cos(a_k),
/// so the linear power |h|^2 has unit mean and decorrelates on the Doppler
/// timescale.
class FadingProcess {
  public:
    FadingProcess() = default;

    FadingProcess(Rng rng, int n_sinusoids, double doppler_hz) {
        omega_.resize(static_cast<std::size_t>(n_sinusoids));
        phi_.resize(static_cast<std::size_t>(n_sinusoids));
        for (int k = 0; k < n_sinusoids; ++k) {
            const double alpha = rng.uniform(0.0, 2.0 * std::numbers::pi);
            omega_[static_cast<std::size_t>(k)] =
                2.0 * std::numbers::pi * doppler_hz * std::cos(alpha);
            phi_[static_cast<std::size_t>(k)] = rng.uniform(0.0, 2.0 * std::numbers::pi);
        }
    }

    /// Linear power of the envelope at absolute time t (seconds). A
    /// default-constructed (disabled) process contributes unit power.
    double power_linear(double t_s) const {
        if (omega_.empty()) return 1.0;
        double re = 0.0;
        double im = 0.0;
        for (std::size_t k = 0; k < omega_.size(); ++k) {
            const double a = omega_[k] * t_s + phi_[k];
            re += std::cos(a);
            im += std::sin(a);
        }
        const double n = static_cast<double>(omega_.size());
        const double p = (re * re + im * im) / n;
        return std::max(p, 1e-12);
    }

    /// dB contribution to the RSRP chain at time t.
    double sample_db(double t_s) const { return linear_to_db(power_linear(t_s)); }

  private:
    std::vector<double> omega_;
    std::vector<double> phi_;
};

inline double doppler_hz(double speed_mps, double fc_ghz) {
    return speed_mps * fc_ghz * 1e9 / kSpeedOfLight;
}

/// The raw RSRP chain: per-beam Tx power, Tx beam gain, soft-LoS link loss
/// (pathloss + shadow), Rx gain, and the fading term. Additive in dB, so any
/// +x dB change of a single term shifts the output by exactly +x dB.
inline double raw_rsrp_dbm(double tx_power_dbm, double tx_gain_db, double link_loss_db,
                           double rx_gain_db, double fading_db) {
    return tx_power_dbm + tx_gain_db - link_loss_db + rx_gain_db + fading_db;
}

}  // namespace mpue_sim
