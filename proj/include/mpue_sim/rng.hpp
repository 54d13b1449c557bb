#pragma once

#include <cstdint>

#include "mpue_sim/core.hpp"

namespace mpue_sim {

// Deterministic, portable random numbers. Every stochastic entity in a run
// (the UE drop, each shadow process, each fading process, ...) owns its own
// stream keyed by (master seed, stream id, entity indices). Streams never
// interleave, so toggling an approach flag cannot shift the randomness of
// any other entity -- this is what makes paired campaigns comparable.

enum class RngStream : std::uint64_t {
    kDrop = 1,
    kShadow = 2,
    kFading = 3,
    kScheduling = 4,
    kMeasurementNoise = 5,
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Self-contained generator with 8 bytes of state. Quality is ample for a
/// drop/fading/shadowing workload and the footprint allows one generator
/// per (UE, cell, beam) entity.
class Rng {
  public:
    Rng() = default;

    Rng(std::uint64_t master_seed, RngStream stream,
        std::uint64_t a = 0, std::uint64_t b = 0, std::uint64_t c = 0) {
        // Key mixing: run each component through splitmix so that nearby
        // (seed, entity) tuples land on unrelated trajectories.
        std::uint64_t s = master_seed;
        state_ = splitmix64(s);
        s = state_ ^ (static_cast<std::uint64_t>(stream) * 0x9e3779b97f4a7c15ull);
        state_ = splitmix64(s);
        s = state_ ^ (a + 0x165667b19e3779f9ull);
        state_ = splitmix64(s);
        s = state_ ^ (b + 0xd6e8feb86659fd93ull);
        state_ = splitmix64(s);
        s = state_ ^ (c + 0xa5a5a5a5a5a5a5a5ull);
        state_ = splitmix64(s);
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t uniform_int(std::uint64_t n) {
        // Modulo bias is < 2^-40 for the n used here (beam counts, etc.).
        return next_u64() % n;
    }

    /// Standard normal via Box-Muller (implementation-defined std::normal_distribution
    /// would break cross-platform reproducibility of seeds).
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    double gaussian(double mean, double sigma) { return mean + sigma * gaussian(); }

  private:
    std::uint64_t state_ = 0x853c49e6748fea9bull;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace mpue_sim
