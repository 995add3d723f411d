#pragma once

#include <cassert>
#include <cstdint>
#include <random>

namespace larsim {

// splitmix64 step; used only to derive child seeds from a master seed.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Stream labels for the per-run substream derivation:
//   master seed -> (stream, index) -> child seed.
// placement and mobility streams feed trace generation only, so a run replayed
// from an imported trace consumes the traffic and mac streams identically.
enum class SeedStream : std::uint64_t {
    placement = 1,  // initial vehicle placement (one stream per run)
    mobility = 2,   // per-vehicle motion (index = node id)
    traffic = 3,    // flow endpoint selection (one stream per run)
    mac = 4,        // per-node forwarding jitter and backoff (index = node id)
};

inline std::uint64_t derive_seed(std::uint64_t master, SeedStream stream, std::uint64_t index = 0) {
    std::uint64_t s = master;
    std::uint64_t z = splitmix64_next(s);
    s = z ^ (static_cast<std::uint64_t>(stream) * 0xff51afd7ed558ccdull);
    z = splitmix64_next(s);
    s = z ^ (index * 0xc4ceb9fe1a85ec53ull);
    return splitmix64_next(s);
}

// Deterministic random stream. The distributions are implemented here rather
// than with std::*_distribution so a given seed yields the same draw sequence
// on every standard library.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool bernoulli(double p) { return uniform01() < p; }

    // Uniform in [0, n), bias-free via rejection.
    std::uint64_t uniform_index(std::uint64_t n) {
        assert(n > 0);
        const std::uint64_t bucket = UINT64_MAX / n;
        const std::uint64_t limit = bucket * n;
        std::uint64_t v = next_u64();
        while (v >= limit) {
            v = next_u64();
        }
        return v / bucket;
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace larsim
