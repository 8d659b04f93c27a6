#include "cyclecut/chain.hpp"

#include <algorithm>

#include "cyclecut/rng.hpp"

namespace cyclecut {

Pattern classify_pattern(const std::array<int, 4>& parities) {
    for (int b : parities)
        require(b == 0 || b == 1, Errc::parity_violation, "parities must be 0/1");
    const int ul = parities[0], dl = parities[1], ur = parities[2], dr = parities[3];
    const int count = ul + dl + ur + dr;
    require(count % 2 == 0, Errc::parity_violation,
            "odd number of odd boundary edges (" + std::to_string(count) + ")");
    if (count == 4) return {PatternState::s4, PatternVariant::a};
    if (count == 0) return {PatternState::s4, PatternVariant::b};
    if (ul && dr) return {PatternState::s1, PatternVariant::a};
    if (dl && ur) return {PatternState::s1, PatternVariant::b};
    if (ul && ur) return {PatternState::s2, PatternVariant::a};
    if (dl && dr) return {PatternState::s2, PatternVariant::b};
    if (ul && dl) return {PatternState::s3, PatternVariant::a};
    return {PatternState::s3, PatternVariant::b};  // ur && dr
}

std::array<int, 4> pattern_parities(PatternState state, PatternVariant variant) {
    const bool a = variant == PatternVariant::a;
    switch (state) {
    case PatternState::s1: return a ? std::array<int, 4>{1, 0, 0, 1} : std::array<int, 4>{0, 1, 1, 0};
    case PatternState::s2: return a ? std::array<int, 4>{1, 0, 1, 0} : std::array<int, 4>{0, 1, 0, 1};
    case PatternState::s3: return a ? std::array<int, 4>{1, 1, 0, 0} : std::array<int, 4>{0, 0, 1, 1};
    case PatternState::s4: return a ? std::array<int, 4>{1, 1, 1, 1} : std::array<int, 4>{0, 0, 0, 0};
    }
    return {0, 0, 0, 0};
}

bool StateDistribution::is_distribution() const {
    for (const auto& q : p)
        if (q.is_negative()) return false;
    return sum() == Rational(1);
}

std::string StateDistribution::str() const {
    return "(" + p[0].str() + ", " + p[1].str() + ", " + p[2].str() + ", " + p[3].str() + ")";
}

bool region_contains(const StateDistribution& p) {
    require(p.is_distribution(), Errc::param_out_of_range,
            "not a probability distribution: " + p.str());
    return p[0] + p[1] == Rational(2, 3) && p[1] + p[3] >= Rational(1, 3);
}

std::array<StateDistribution, 4> region_vertices() {
    return {
        make_distribution(rat(1, 3), rat(1, 3), rat(1, 3), rat(0)),
        make_distribution(rat(0), rat(2, 3), rat(1, 3), rat(0)),
        make_distribution(rat(0), rat(2, 3), rat(0), rat(1, 3)),
        make_distribution(rat(2, 3), rat(0), rat(0), rat(1, 3)),
    };
}

StateDistribution default_root_distribution() {
    return make_distribution(rat(1, 3), rat(1, 3), rat(1, 3), rat(0));
}

namespace {

void require_unit_range(const Rational& v, const Rational& lo, const Rational& hi,
                        const char* name) {
    require(v >= lo && v <= hi, Errc::param_out_of_range,
            std::string(name) + " = " + v.str() + " outside [" + lo.str() + ", " + hi.str() + "]");
}

}  // namespace

StateDistribution even_step(const StateDistribution& p, const Rational& z, const Rational& w) {
    require_unit_range(z, rat(0), rat(1), "z");
    require_unit_range(w, rat(0), rat(1), "w");
    const Rational half(1, 2);
    return make_distribution(p[0] * half + z * p[1], p[2] * half + w * p[3],
                             p[0] * half + (rat(1) - z) * p[1],
                             p[2] * half + (rat(1) - w) * p[3]);
}

StateDistribution odd_step(const StateDistribution& p, const Rational& x, const Rational& y,
                           const Rational& z, const Rational& w, int k) {
    require(k >= 3 && k % 2 == 1, Errc::param_out_of_range, "odd chain needs odd k >= 3");
    const Rational lo(1, k), hi((k - 1), k);
    require_unit_range(x, lo, rat(1), "x");
    require_unit_range(y, lo, rat(1), "y");
    require_unit_range(z, rat(0), hi, "z");
    require_unit_range(w, rat(0), hi, "w");
    return make_distribution(x * p[0] + z * p[1], y * p[2] + w * p[3],
                             (rat(1) - x) * p[0] + (rat(1) - z) * p[1],
                             (rat(1) - y) * p[2] + (rat(1) - w) * p[3]);
}

StateDistribution swap12(const StateDistribution& p) {
    return make_distribution(p[1], p[0], p[2], p[3]);
}

ChainParams select_params(const StateDistribution& p, int k, bool even) {
    require(region_contains(p), Errc::not_in_region, "distribution outside R: " + p.str());
    ChainParams params;
    params.even = even;
    params.k = k;
    if (even) {
        require(k >= 2 && k % 2 == 0, Errc::param_out_of_range, "even chain needs even k >= 2");
        params.w = rat(1);
        // the unique z putting the image back on p1 + p2 = 2/3; any z works at
        // the single R-point with p2 = 0, namely (2/3, 0, 0, 1/3)
        params.z = p[1].is_zero()
                       ? rat(0)
                       : (rat(2, 3) - p[3] - (p[0] + p[2]) * rat(1, 2)) / p[1];
        require(params.z >= rat(0) && params.z <= rat(1), Errc::not_in_region,
                "even z fell outside [0,1] for " + p.str());
        params.alpha[1] = params.z;
        params.alpha[3] = params.w;
    } else {
        require(k >= 3 && k % 2 == 1, Errc::param_out_of_range, "odd chain needs odd k >= 3");
        params.x = params.y = params.z = params.w = rat(2, 3);
        const Rational scale(k, k - 1);
        params.alpha[0] = (params.x - rat(1, k)) * scale;
        params.alpha[1] = params.z * scale;
        params.alpha[2] = (params.y - rat(1, k)) * scale;
        params.alpha[3] = params.w * scale;
    }
    for (const auto& a : params.alpha)
        require(a >= rat(0) && a <= rat(1), Errc::param_out_of_range,
                "rule branch probability " + a.str() + " outside [0,1]");
    return params;
}

StateDistribution apply_step(const StateDistribution& p, const ChainParams& params) {
    return params.even ? even_step(p, params.z, params.w)
                       : odd_step(p, params.x, params.y, params.z, params.w, params.k);
}

NecessityCertificate check_necessity(const StateDistribution& p) {
    require(p.is_distribution(), Errc::param_out_of_range,
            "not a probability distribution: " + p.str());
    if (region_contains(p))
        return {NecessityCertificate::Kind::in_region, rat(0), "distribution lies in R"};
    const Rational two_thirds(2, 3);
    const Rational head = p[0] + p[1];
    if (head < two_thirds) {
        // usage is 1 - (p1+p2)/2 per edge, already above 2/3
        Rational usage = rat(1) - head * rat(1, 2);
        return {NecessityCertificate::Kind::usage_exceeds, usage,
                "per-edge expected usage " + usage.str() + " > 2/3"};
    }
    const Rational corners[2] = {rat(0), rat(1)};
    if (head > two_thirds) {
        // after two even steps the first two coordinates sum below 2/3 for
        // every corner of (z1,w1,z2,w2); the objective is multilinear so the
        // corner maximum is the global maximum
        Rational best(-1);
        for (const Rational& z1 : corners)
            for (const Rational& w1 : corners)
                for (const Rational& z2 : corners)
                    for (const Rational& w2 : corners) {
                        StateDistribution q = even_step(even_step(p, z1, w1), z2, w2);
                        best = std::max(best, q[0] + q[1]);
                    }
        require(best < two_thirds, Errc::param_out_of_range,
                "two-step certificate failed unexpectedly");
        return {NecessityCertificate::Kind::two_step_collapse, best,
                "max p1+p2 after two even steps is " + best.str() + " < 2/3"};
    }
    // head == 2/3 but p2 + p4 < 1/3: one even step cannot hold the line
    Rational best(-1);
    for (const Rational& z : corners)
        for (const Rational& w : corners) {
            StateDistribution q = even_step(p, z, w);
            best = std::max(best, q[0] + q[1]);
        }
    require(best < two_thirds, Errc::param_out_of_range,
            "one-step certificate failed unexpectedly");
    return {NecessityCertificate::Kind::one_step_collapse, best,
            "max p1+p2 after one even step is " + best.str() + " < 2/3"};
}

StateDistribution random_region_point(SplitMix64& rng) {
    auto vertices = region_vertices();
    std::array<std::int64_t, 4> weights{};
    std::int64_t total = 0;
    for (auto& w : weights) {
        w = static_cast<std::int64_t>(rng.below(7));
        total += w;
    }
    if (total == 0) {
        weights[0] = 1;
        total = 1;
    }
    StateDistribution p;
    for (int i = 0; i < 4; ++i) {
        Rational lambda(weights[static_cast<std::size_t>(i)], total);
        for (int j = 0; j < 4; ++j) p[j] += lambda * vertices[static_cast<std::size_t>(i)][j];
    }
    return p;
}

}  // namespace cyclecut
