#pragma once
// Seeded random source with pinned sampling algorithms. The standard
// distributions are implementation-defined, which would break run-to-run
// reproducibility across toolchains, so the few draws we need are spelled
// out here on top of mt19937_64.

#include <cstdint>
#include <string_view>

#include <random>

namespace twinforge {

class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1).
    double uniform01();

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi);

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t uniform_int(std::uint64_t n);

    bool coin() { return uniform01() < 0.5; }

    /// Standard normal via Box-Muller (pair cached).
    double normal();

    /// Poisson draw, Knuth's product method chunked for large lambda.
    std::uint64_t poisson(double lambda);

    /// Independent stream derived from this rng's seed and a tag.
    Rng fork(std::string_view tag) const;

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// splitmix64 finalizer, used to derive stream seeds.
std::uint64_t mix_seed(std::uint64_t x);

}  // namespace twinforge
