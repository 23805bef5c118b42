#pragma once

#include <cstdint>
#include <random>

namespace condfrag {

/// splitmix64 mixing step. Used to derive independent per-run seeds from a
/// master seed so that results do not depend on how runs are scheduled.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed for run `run_id` under `master`. Documented contract: identical
/// (master, run_id) gives an identical stream on every platform.
inline std::uint64_t derive_run_seed(std::uint64_t master, std::uint64_t run_id) {
    return splitmix64(master + (run_id + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Seeded PRNG for the detection Monte Carlo.
///
/// std::mt19937_64 with the 53-bit uniform mapping (x >> 11) * 2^-53.
/// Both the engine sequence and the mapping are fully pinned, so identical
/// seeds reproduce identical draws bit-for-bit across platforms; never use
/// std::uniform_real_distribution here (its output is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    /// Uniform double in [0, 1).
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [a, b).
    double uniform(double a, double b) { return a + uniform01() * (b - a); }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace condfrag
