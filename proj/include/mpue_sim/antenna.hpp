#pragma once

#include <array>
#include <vector>

#include "mpue_sim/core.hpp"

namespace mpue_sim {

/// Parametric single-element pattern with quadratic rolloff in both planes,
/// boresight at (theta = 90, phi = 0):
///   A(theta, phi) = max_gain - min{ -[A_el(theta) + A_az(phi)], front_back }
/// with A_el = -min{ 12 ((theta-90)/hpbw_el)^2, side_lobe_floor } and
/// A_az = -min{ 12 (phi/hpbw_az)^2, front_back }.
struct AntennaElementPattern {
    double max_gain_dbi = 8.0;
    double hpbw_az_deg = 65.0;
    double hpbw_el_deg = 65.0;
    double front_back_db = 30.0;
    double side_lobe_floor_db = 30.0;

    double gain_db(double theta_deg, double phi_deg) const {
        const double a_el =
            -std::min(12.0 * std::pow((theta_deg - 90.0) / hpbw_el_deg, 2.0),
                      side_lobe_floor_db);
        const double pa = wrap_deg(phi_deg);
        const double a_az =
            -std::min(12.0 * std::pow(pa / hpbw_az_deg, 2.0), front_back_db);
        return max_gain_dbi - std::min(-(a_el + a_az), front_back_db);
    }
};

namespace detail {

/// Power of the length-n Dirichlet kernel, normalized so the peak equals n:
/// |sum_k exp(j k psi)|^2 / n.
inline double dirichlet_power(int n, double psi) {
    const double half = 0.5 * psi;
    const double s = std::sin(half);
    if (std::abs(s) < 1e-9) {
        // At multiples of 2*pi the sum is coherent.
        return static_cast<double>(n);
    }
    const double num = std::sin(static_cast<double>(n) * half);
    return (num * num) / (s * s) / static_cast<double>(n);
}

}  // namespace detail

/// Ideal uniform planar array factor (power, dB) for an m_rows x n_cols panel
/// steered to (theta0, phi0), evaluated at (theta, phi). Rows are stacked
/// vertically with spacing dv (in wavelengths), columns horizontally with dh.
/// Peak value is 10*log10(m*n) at the steering direction.
inline double upa_array_factor_db(int m_rows, int n_cols, double dv_lambda, double dh_lambda,
                                  double theta0_deg, double phi0_deg,
                                  double theta_deg, double phi_deg) {
    const double t = deg_to_rad(theta_deg);
    const double t0 = deg_to_rad(theta0_deg);
    const double p = deg_to_rad(phi_deg);
    const double p0 = deg_to_rad(phi0_deg);
    const double psi_v = 2.0 * std::numbers::pi * dv_lambda * (std::cos(t) - std::cos(t0));
    const double psi_h =
        2.0 * std::numbers::pi * dh_lambda * (std::sin(t) * std::sin(p) - std::sin(t0) * std::sin(p0));
    return linear_to_db(detail::dirichlet_power(m_rows, psi_v) *
                        detail::dirichlet_power(n_cols, psi_h));
}

struct TxBeam {
    int id = 0;  // 1-based
    double theta_deg = 90.0;
    double phi_deg = 0.0;
    int panel_rows = 16;
    int panel_cols = 8;
};

/// The 12-beam grid: eight narrow outer beams on the 16x8 panel at the
/// horizon, four wide inner beams on the 8x4 panel with 7 degrees downtilt.
struct TxBeamGrid {
    AntennaElementPattern element;
    double dv_lambda = 0.7;
    double dh_lambda = 0.5;
    std::array<TxBeam, 12> beams;

    static TxBeamGrid make(const AntennaElementPattern& elem, double dv = 0.7, double dh = 0.5) {
        TxBeamGrid grid;
        grid.element = elem;
        grid.dv_lambda = dv;
        grid.dh_lambda = dh;
        for (int b = 1; b <= 8; ++b)
            grid.beams[b - 1] = {b, 90.0, -52.5 + 15.0 * (b - 1), 16, 8};
        for (int b = 9; b <= 12; ++b)
            grid.beams[b - 1] = {b, 97.0, -45.0 + 30.0 * (b - 9), 8, 4};
        return grid;
    }

    const TxBeam& beam(int beam_id) const {
        if (beam_id < 1 || beam_id > 12)
            throw std::invalid_argument("TxBeamGrid: beam id must be in 1..12");
        return beams[static_cast<std::size_t>(beam_id - 1)];
    }
};

/// Gain of one Tx beam at a direction in the cell frame (sector boresight at
/// phi = 0): the steered array factor plus a per-beam element envelope
/// centered on the steering direction. Centering the envelope keeps the
/// global maximum exactly at (theta_b, phi_b) and masks the array factor's
/// mirror lobe behind the panel.
inline double tx_beam_gain(const TxBeamGrid& grid, int beam_id,
                           double theta_deg, double phi_deg) {
    const TxBeam& b = grid.beam(beam_id);
    const double elem =
        grid.element.gain_db(90.0 + (theta_deg - b.theta_deg), wrap_deg(phi_deg - b.phi_deg));
    const double af = upa_array_factor_db(b.panel_rows, b.panel_cols, grid.dv_lambda,
                                          grid.dh_lambda, b.theta_deg, b.phi_deg,
                                          theta_deg, phi_deg);
    return elem + af;
}

struct RxBeam {
    int id = 0;                // 1-based refined id
    double phi_deg = 0.0;      // relative to panel boresight
    double theta_deg = 90.0;
};

/// Three edge-mounted directional panels, each a horizontal 1x4 array
/// producing seven refined beams at 15-degree spacing; beam 4 is the panel
/// boresight. The single-element reference design uses the wide mode only.
struct MpuePanelSet {
    AntennaElementPattern element{5.0, 90.0, 90.0, 25.0, 25.0};
    int n_panels = 3;
    int n_elements = 4;
    double dh_lambda = 0.5;
    std::array<double, 3> panel_offsets_deg{0.0, 120.0, -120.0};  // from UE heading
    std::array<RxBeam, 7> rx_beams;

    static MpuePanelSet make(const AntennaElementPattern& elem,
                             const std::array<double, 3>& offsets = {0.0, 120.0, -120.0}) {
        MpuePanelSet set;
        set.element = elem;
        set.panel_offsets_deg = offsets;
        for (int r = 1; r <= 7; ++r)
            set.rx_beams[r - 1] = {r, -45.0 + 15.0 * (r - 1), 90.0};
        return set;
    }

    double rx_beam_azimuth(int rx_beam_id) const {
        if (rx_beam_id < 1 || rx_beam_id > 7)
            throw std::invalid_argument("MpuePanelSet: rx beam id must be in 1..7");
        return rx_beams[static_cast<std::size_t>(rx_beam_id - 1)].phi_deg;
    }
};

/// Panel boresight azimuths in the global frame for a given UE heading.
inline std::array<double, 3> orient_panels(const MpuePanelSet& set, double heading_deg) {
    std::array<double, 3> out{};
    for (int d = 0; d < 3; ++d) out[d] = wrap_deg(heading_deg + set.panel_offsets_deg[d]);
    return out;
}

/// Rx gain of one panel toward an arrival direction given in the UE frame
/// (phi = 0 along the UE heading). Wide mode (rx_beam_id = kWideRxBeam) is
/// the bare element; refined mode adds the 1x4 array factor steered to the
/// beam azimuth.
inline double rx_gain(const MpuePanelSet& set, int panel_id, int rx_beam_id,
                      double theta_deg, double phi_ue_frame_deg) {
    if (panel_id < 1 || panel_id > set.n_panels)
        throw std::invalid_argument("rx_gain: panel id out of range");
    const double phi_rel =
        wrap_deg(phi_ue_frame_deg - set.panel_offsets_deg[static_cast<std::size_t>(panel_id - 1)]);
    const double elem = set.element.gain_db(theta_deg, phi_rel);
    if (rx_beam_id == kWideRxBeam) return elem;
    const double af = upa_array_factor_db(1, set.n_elements, 0.0, set.dh_lambda,
                                          90.0, set.rx_beam_azimuth(rx_beam_id),
                                          theta_deg, phi_rel);
    return elem + af;
}

}  // namespace mpue_sim
