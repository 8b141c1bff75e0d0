#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace acr {

/// Seeded pseudorandom source used for every stochastic choice in the reactors.
///
/// The engine is mt19937_64, whose output sequence is fixed by the standard.
/// The derived draws below avoid std::uniform_*_distribution, whose algorithms
/// differ between standard libraries, so a seed reproduces the same run on any
/// platform.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be positive.
    std::size_t below(std::size_t bound);

    /// Uniform integer in [1, n], the `random(n)` of the reaction rules.
    std::size_t one_to(std::size_t n) { return below(n) + 1; }

    /// Uniform real in [0, 1) with 53 random bits.
    double unit();

    bool bernoulli(double p) { return unit() < p; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace acr
