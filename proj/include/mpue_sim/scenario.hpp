#pragma once

#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "mpue_sim/core.hpp"
#include "mpue_sim/rng.hpp"

namespace mpue_sim {

struct CellInfo {
    int site = 0;
    double sector_az_deg = 0.0;  // boresight azimuth, global frame
};

// Hexagonal multi-site deployment with wrap-around. The cluster tiles the
// plane under six lattice translations, so distances (and the motion domain)
// live on a torus: border cells see interference from the far edge and UEs
// never run out of coverage.
struct NetworkLayout {
    double inter_site_distance = 0.0;
    int n_rings = 1;
    std::vector<Vec2> site_positions;
    std::vector<CellInfo> cells;      // site-major, 3 sectors per site
    std::vector<Vec2> wrap_images;    // [0] is the zero vector, then 6 translations

    int n_sites() const { return static_cast<int>(site_positions.size()); }
    int n_cells() const { return static_cast<int>(cells.size()); }

    /// Membership in the fundamental (Wigner-Seitz) cell of the wrap lattice:
    /// p belongs iff no wrap image brings it closer to the origin.
    bool contains(Vec2 p) const {
        for (std::size_t k = 1; k < wrap_images.size(); ++k) {
            const Vec2 t = wrap_images[k];
            if (2.0 * p.dot(t) > t.norm_sq() + 1e-9) return false;
        }
        return true;
    }

    /// Torus re-entry: translate p by wrap vectors until it lies in the
    /// fundamental cell. Measure-preserving, so uniformity survives motion.
    Vec2 rewrap(Vec2 p) const {
        for (int guard = 0; guard < 8; ++guard) {
            double best = p.norm_sq();
            std::size_t best_k = 0;
            for (std::size_t k = 1; k < wrap_images.size(); ++k) {
                const double d = (p - wrap_images[k]).norm_sq();
                if (d < best) {
                    best = d;
                    best_k = k;
                }
            }
            if (best_k == 0) return p;
            p = p - wrap_images[best_k];
        }
        return p;
    }

    /// Half-extent of a bounding box that covers the fundamental cell.
    double bounding_half_extent() const {
        double r = 0.0;
        for (std::size_t k = 1; k < wrap_images.size(); ++k)
            r = std::max(r, wrap_images[k].norm());
        return r / std::sqrt(3.0) + 1e-6;  // hexagon circumradius
    }
};

struct UeKinematics {
    Vec2 position;
    double speed_mps = 0.0;
    double heading_rad = 0.0;
    double height_m = 1.5;
};

struct EffectiveDistance {
    double distance_3d = 0.0;
    double distance_2d = 0.0;
    int image_index = 0;  // winning wrap image of the site
};

/// Builds the hexagonal grid: ring 0 is the center site, ring k adds the
/// hexagonal shell at radius k*ISD. Each site carries three sectors at
/// {0, 120, 240} degrees. Wrap translations are the six shortest vectors of
/// the cluster lattice (all of equal magnitude).
inline NetworkLayout build_layout(double inter_site_distance, int n_rings) {
    if (inter_site_distance <= 0.0)
        throw std::invalid_argument("build_layout: inter_site_distance must be > 0");
    if (n_rings < 1)
        throw std::invalid_argument("build_layout: n_rings must be >= 1");

    NetworkLayout layout;
    layout.inter_site_distance = inter_site_distance;
    layout.n_rings = n_rings;

    const Vec2 a1{inter_site_distance, 0.0};
    const Vec2 a2{inter_site_distance * 0.5, inter_site_distance * std::sqrt(3.0) / 2.0};

    // Axial hex coordinates (i, j) -> i*a1 + j*a2, ordered center first,
    // then shells, so site 0 is always the origin.
    layout.site_positions.push_back({0.0, 0.0});
    for (int ring = 1; ring <= n_rings; ++ring) {
        // Walk the hexagonal shell of radius `ring`.
        int i = ring;
        int j = 0;
        static constexpr int kDirs[6][2] = {{-1, 1}, {-1, 0}, {0, -1}, {1, -1}, {1, 0}, {0, 1}};
        for (const auto& dir : kDirs) {
            for (int s = 0; s < ring; ++s) {
                layout.site_positions.push_back(a1 * i + a2 * j);
                i += dir[0];
                j += dir[1];
            }
        }
    }

    for (int s = 0; s < layout.n_sites(); ++s)
        for (int sector = 0; sector < 3; ++sector)
            layout.cells.push_back({s, 120.0 * sector});

    // Cluster translation lattice: generator (r+1)*a1 + r*a2 has squared
    // norm (3r^2 + 3r + 1) * ISD^2 = n_sites * ISD^2, and its six rotations
    // by 60 degrees tile the plane with the cluster.
    const int r = n_rings;
    Vec2 u = a1 * (r + 1) + a2 * r;
    layout.wrap_images.push_back({0.0, 0.0});
    for (int k = 0; k < 6; ++k) {
        const double ang = deg_to_rad(60.0 * k);
        layout.wrap_images.push_back({u.x * std::cos(ang) - u.y * std::sin(ang),
                                      u.x * std::sin(ang) + u.y * std::cos(ang)});
    }
    return layout;
}

/// Uniform drop over the wrapped network area; headings uniform over
/// [0, 2*pi), all speeds equal. Rejection sampling from the bounding box
/// keeps the distribution exactly uniform on the torus.
inline std::vector<UeKinematics> drop_ues(const NetworkLayout& layout, int n_ue,
                                          double speed_mps, double ue_height_m,
                                          std::uint64_t rng_seed) {
    if (n_ue <= 0) throw std::invalid_argument("drop_ues: n_ue must be > 0");
    Rng rng(rng_seed, RngStream::kDrop);
    const double half = layout.bounding_half_extent();
    std::vector<UeKinematics> ues;
    ues.reserve(static_cast<std::size_t>(n_ue));
    while (static_cast<int>(ues.size()) < n_ue) {
        const Vec2 p{rng.uniform(-half, half), rng.uniform(-half, half)};
        if (!layout.contains(p)) continue;
        UeKinematics ue;
        ue.position = p;
        ue.speed_mps = speed_mps;
        ue.heading_rad = rng.uniform(0.0, 2.0 * std::numbers::pi);
        ue.height_m = ue_height_m;
        ues.push_back(ue);
    }
    return ues;
}

/// Advances straight-line motion by dt seconds with torus re-entry.
inline UeKinematics step_mobility(const UeKinematics& ue, double dt_s,
                                  const NetworkLayout& layout) {
    if (dt_s < 0.0) throw std::invalid_argument("step_mobility: dt must be >= 0");
    UeKinematics next = ue;
    next.position.x += ue.speed_mps * dt_s * std::cos(ue.heading_rad);
    next.position.y += ue.speed_mps * dt_s * std::sin(ue.heading_rad);
    next.position = layout.rewrap(next.position);
    return next;
}

/// Minimum 3D distance from the UE to any wrap image of a site.
inline EffectiveDistance effective_distance(Vec2 ue_pos, Vec2 site_pos,
                                            const NetworkLayout& layout,
                                            double tx_height_m, double rx_height_m) {
    EffectiveDistance out;
    const double dh = tx_height_m - rx_height_m;
    double best_sq = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < layout.wrap_images.size(); ++k) {
        const Vec2 img = site_pos + layout.wrap_images[k];
        const double d2_sq = (ue_pos - img).norm_sq();
        if (d2_sq < best_sq) {
            best_sq = d2_sq;
            out.image_index = static_cast<int>(k);
        }
    }
    out.distance_2d = std::sqrt(best_sq);
    out.distance_3d = std::sqrt(best_sq + dh * dh);
    return out;
}

/// Structured text snapshot of a layout, for fixtures and golden files.
inline std::string layout_snapshot(const NetworkLayout& layout) {
    std::ostringstream os;
    os << "layout isd=" << layout.inter_site_distance << " rings=" << layout.n_rings
       << " sites=" << layout.n_sites() << " cells=" << layout.n_cells() << "\n";
    char buf[96];
    for (int s = 0; s < layout.n_sites(); ++s) {
        std::snprintf(buf, sizeof buf, "site %d %.3f %.3f\n", s,
                      layout.site_positions[s].x, layout.site_positions[s].y);
        os << buf;
    }
    for (int c = 0; c < layout.n_cells(); ++c) {
        std::snprintf(buf, sizeof buf, "cell %d site=%d az=%.1f\n", c,
                      layout.cells[c].site, layout.cells[c].sector_az_deg);
        os << buf;
    }
    for (std::size_t k = 0; k < layout.wrap_images.size(); ++k) {
        std::snprintf(buf, sizeof buf, "wrap %zu %.3f %.3f\n", k,
                      layout.wrap_images[k].x, layout.wrap_images[k].y);
        os << buf;
    }
    return os.str();
}

inline std::string drops_snapshot(const std::vector<UeKinematics>& ues) {
    std::ostringstream os;
    os << "ues " << ues.size() << "\n";
    char buf[128];
    for (std::size_t i = 0; i < ues.size(); ++i) {
        std::snprintf(buf, sizeof buf, "ue %zu pos=%.4f,%.4f speed=%.4f heading=%.6f\n", i,
                      ues[i].position.x, ues[i].position.y, ues[i].speed_mps,
                      ues[i].heading_rad);
        os << buf;
    }
    return os.str();
}

}  // namespace mpue_sim
