#include "cyclecut/rng.hpp"

#include <numeric>

namespace cyclecut {

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (0x5851f42d4c957f2dULL * (index + 1)));
    return mix.next();
}

bool RngSource::bernoulli(const Rational& p) {
    require(!p.is_negative() && p <= Rational(1), Errc::param_out_of_range,
            "bernoulli probability " + p.str());
    if (p.is_zero()) return false;
    if (p == Rational(1)) return true;
    // below(den) < num hits the event with probability exactly num/den
    return rng_.below(static_cast<std::uint64_t>(p.den())) <
           static_cast<std::uint64_t>(p.num());
}

int RngSource::uniform(int k) {
    require(k >= 1, Errc::param_out_of_range, "uniform bound must be positive");
    if (k == 1) return 0;
    return static_cast<int>(rng_.below(static_cast<std::uint64_t>(k)));
}

int RngSource::weighted4(const std::array<Rational, 4>& p) {
    std::int64_t den = 1;
    for (const auto& q : p) den = std::lcm(den, q.den());
    std::uint64_t draw = rng_.below(static_cast<std::uint64_t>(den));
    std::int64_t acc = 0;
    for (int i = 0; i < 4; ++i) {
        acc += p[i].num() * (den / p[i].den());
        if (static_cast<std::int64_t>(draw) < acc) return i;
    }
    return 3;
}

}  // namespace cyclecut
