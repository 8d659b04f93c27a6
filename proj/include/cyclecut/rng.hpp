#ifndef CYCLECUT_RNG_HPP
#define CYCLECUT_RNG_HPP

#include <array>
#include <cstdint>

#include "cyclecut/rational.hpp"

namespace cyclecut {

/// SplitMix64 generator. Chosen for portability: identical output on every
/// platform, trivially splittable into per-sample substreams.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, n), unbiased via rejection.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

private:
    std::uint64_t state_;
};

/// Derives an independent substream for (seed, index) pairs.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

/// Source of the random decisions the sampler makes. Probabilities are exact
/// rationals so the same call sequence can be either sampled (RngSource) or
/// exhaustively expanded (the outcome enumerator).
class RandomSource {
public:
    virtual ~RandomSource() = default;

    /// True with probability p; p must lie in [0,1].
    virtual bool bernoulli(const Rational& p) = 0;

    /// Uniform integer in [0, k).
    virtual int uniform(int k) = 0;

    /// Index in [0,4) drawn with the given probabilities (which sum to 1).
    virtual int weighted4(const std::array<Rational, 4>& p) = 0;
};

class RngSource : public RandomSource {
public:
    explicit RngSource(std::uint64_t seed) : rng_(seed) {}

    bool bernoulli(const Rational& p) override;
    int uniform(int k) override;
    int weighted4(const std::array<Rational, 4>& p) override;

private:
    SplitMix64 rng_;
};

}  // namespace cyclecut

#endif
