#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

// Common conventions used across the library:
//   distances     meters
//   times         milliseconds inside the engine, seconds in configs
//   angles        degrees at API boundaries (spherical: theta = zenith,
//                 phi = azimuth, boresight at theta = 90, phi = 0)
//   powers        dBm, gains dB/dBi

namespace mpue_sim {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// Rx option id for the wide (single-element) mode; refined beams are 1..7.
inline constexpr int kWideRxBeam = 0;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Vec2&) const = default;

    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
    double norm_sq() const { return x * x + y * y; }
};

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Wraps an angle to [-180, 180).
inline double wrap_deg(double deg) {
    double w = std::fmod(deg + 180.0, 360.0);
    if (w < 0.0) w += 360.0;
    return w - 180.0;
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

/// Mean of a dB-valued range (plain arithmetic mean, not linear-domain).
inline double db_mean(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("db_mean: empty range");
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

inline double percentile(std::vector<double> samples, double p) {
    if (samples.empty()) throw std::invalid_argument("percentile: empty sample set");
    std::sort(samples.begin(), samples.end());
    const double rank = p / 100.0 * (static_cast<double>(samples.size()) - 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(rank));
    const auto hi = static_cast<std::size_t>(std::ceil(rank));
    const double frac = rank - static_cast<double>(lo);
    return samples[lo] * (1.0 - frac) + samples[hi] * frac;
}

/// FNV-1a over raw byte images; used for run digests and determinism checks.
class Fnv1a {
  public:
    void update(const void* data, std::size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            hash_ ^= p[i];
            hash_ *= 0x100000001b3ull;
        }
    }
    void update(double v) { update(&v, sizeof v); }
    void update(std::uint64_t v) { update(&v, sizeof v); }
    std::uint64_t value() const { return hash_; }

  private:
    std::uint64_t hash_ = 0xcbf29ce484222325ull;
};

}  // namespace mpue_sim
