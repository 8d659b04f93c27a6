#include "doctest.h"

#include <vector>

#include "cyclecut/chain.hpp"
#include "cyclecut/rng.hpp"

using namespace cyclecut;

namespace {

StateDistribution d(Rational a, Rational b, Rational c, Rational e) {
    return make_distribution(a, b, c, e);
}

/// Seeded point violating p1+p2 = 2/3 from above.
StateDistribution heavy_head_point(SplitMix64& rng) {
    Rational head = rat(2, 3) + Rational(1 + static_cast<std::int64_t>(rng.below(16)), 48);
    if (head > rat(1)) head = rat(1);
    Rational p1 = head * Rational(static_cast<std::int64_t>(rng.below(5)), 4);
    Rational tail = rat(1) - head;
    Rational p3 = tail * Rational(static_cast<std::int64_t>(rng.below(5)), 4);
    return d(p1, head - p1, p3, tail - p3);
}

/// Seeded point with p1+p2 = 2/3 but p2+p4 < 1/3.
StateDistribution shallow_tail_point(SplitMix64& rng) {
    // p2 + p4 = 1/3 - eps with eps > 0
    Rational eps = Rational(1 + static_cast<std::int64_t>(rng.below(12)), 48);
    Rational p2 = (rat(1, 3) - eps) * Rational(static_cast<std::int64_t>(rng.below(5)), 4);
    Rational p4 = rat(1, 3) - eps - p2;
    if (p4 > rat(1, 3)) p4 = rat(1, 3);
    return d(rat(2, 3) - p2, p2, rat(1, 3) - p4, p4);
}

}  // namespace

TEST_CASE("pattern classification matches the state pictures") {
    CHECK(classify_pattern({1, 0, 0, 1}) == Pattern{PatternState::s1, PatternVariant::a});
    CHECK(classify_pattern({0, 1, 1, 0}) == Pattern{PatternState::s1, PatternVariant::b});
    CHECK(classify_pattern({1, 0, 1, 0}) == Pattern{PatternState::s2, PatternVariant::a});
    CHECK(classify_pattern({0, 1, 0, 1}) == Pattern{PatternState::s2, PatternVariant::b});
    CHECK(classify_pattern({1, 1, 0, 0}) == Pattern{PatternState::s3, PatternVariant::a});
    CHECK(classify_pattern({0, 0, 1, 1}) == Pattern{PatternState::s3, PatternVariant::b});
    CHECK(classify_pattern({1, 1, 1, 1}) == Pattern{PatternState::s4, PatternVariant::a});
    CHECK(classify_pattern({0, 0, 0, 0}) == Pattern{PatternState::s4, PatternVariant::b});
    CHECK_THROWS_AS(classify_pattern({1, 1, 1, 0}), Error);
    CHECK_THROWS_AS(classify_pattern({1, 0, 0, 0}), Error);
    // classify ∘ parities is the identity on all 8 patterns
    for (int s = 0; s < 4; ++s)
        for (int v = 0; v < 2; ++v) {
            Pattern p{static_cast<PatternState>(s), static_cast<PatternVariant>(v)};
            CHECK(classify_pattern(pattern_parities(p.state, p.variant)) == p);
        }
}

TEST_CASE("region membership") {
    CHECK(region_contains(d(rat(1, 3), rat(1, 3), rat(1, 3), rat(0))));
    CHECK_FALSE(region_contains(d(rat(1, 2), rat(1, 6), rat(1, 4), rat(1, 12))));  // p2+p4 = 1/4
    CHECK_FALSE(region_contains(d(rat(2, 5), rat(3, 10), rat(1, 5), rat(1, 10))));  // p1+p2 = 7/10
    for (const auto& vertex : region_vertices()) CHECK(region_contains(vertex));
    CHECK_THROWS_AS(region_contains(d(rat(1), rat(1), rat(0), rat(0))), Error);
}

TEST_CASE("even step examples") {
    CHECK(even_step(d(rat(1, 3), rat(1, 3), rat(1, 3), rat(0)), rat(1), rat(1)) ==
          d(rat(1, 2), rat(1, 6), rat(1, 6), rat(1, 6)));
    CHECK(even_step(d(rat(1), rat(0), rat(0), rat(0)), rat(1, 2), rat(1, 3)) ==
          d(rat(1, 2), rat(0), rat(1, 2), rat(0)));
    CHECK(even_step(d(rat(0), rat(0), rat(0), rat(1)), rat(0), rat(1)) ==
          d(rat(0), rat(1), rat(0), rat(0)));
    CHECK_THROWS_AS(even_step(d(rat(1), rat(0), rat(0), rat(0)), rat(2), rat(0)), Error);
}

TEST_CASE("odd step examples") {
    const Rational f = rat(2, 3);
    CHECK(odd_step(d(rat(1, 3), rat(1, 3), rat(1, 3), rat(0)), f, f, f, f, 3) ==
          d(rat(4, 9), rat(2, 9), rat(2, 9), rat(1, 9)));
    // any region point maps to (4/9, 2/9, 2/9, 1/9)
    SplitMix64 rng(99);
    for (int i = 0; i < 25; ++i) {
        StateDistribution p = random_region_point(rng);
        CHECK(odd_step(p, f, f, f, f, 3) == d(rat(4, 9), rat(2, 9), rat(2, 9), rat(1, 9)));
    }
    CHECK(odd_step(d(rat(1), rat(0), rat(0), rat(0)), rat(1), rat(1, 3), rat(0), rat(0), 3) ==
          d(rat(1), rat(0), rat(0), rat(0)));
    CHECK(odd_step(d(rat(0), rat(1), rat(0), rat(0)), rat(1, 3), rat(1, 3), f, rat(0), 3) ==
          d(rat(2, 3), rat(0), rat(1, 3), rat(0)));
    // k-dependent ranges
    CHECK_THROWS_AS(odd_step(d(rat(1), rat(0), rat(0), rat(0)), rat(1, 5), rat(1, 3), rat(0), rat(0), 3),
                    Error);
    CHECK_NOTHROW(odd_step(d(rat(1), rat(0), rat(0), rat(0)), rat(1, 5), rat(1, 5), rat(0), rat(0), 5));
    CHECK_THROWS_AS(odd_step(d(rat(1), rat(0), rat(0), rat(0)), rat(1), rat(1), rat(0), rat(0), 4),
                    Error);
}

TEST_CASE("swap12") {
    CHECK(swap12(d(rat(1, 2), rat(1, 6), rat(1, 6), rat(1, 6))) ==
          d(rat(1, 6), rat(1, 2), rat(1, 6), rat(1, 6)));
    CHECK(region_contains(swap12(d(rat(1, 2), rat(1, 6), rat(1, 6), rat(1, 6)))));
    CHECK(swap12(d(rat(4, 9), rat(2, 9), rat(2, 9), rat(1, 9))) ==
          d(rat(2, 9), rat(4, 9), rat(2, 9), rat(1, 9)));
    SplitMix64 rng(3);
    for (int i = 0; i < 20; ++i) {
        StateDistribution p = random_region_point(rng);
        CHECK(swap12(swap12(p)) == p);
    }
}

TEST_CASE("select_params") {
    ChainParams even = select_params(d(rat(1, 3), rat(1, 3), rat(1, 3), rat(0)), 2, true);
    CHECK(even.z == rat(1));
    CHECK(even.w == rat(1));

    // the single R-point with p2 = 0 takes the z := 0 convention
    ChainParams corner = select_params(d(rat(2, 3), rat(0), rat(0), rat(1, 3)), 2, true);
    CHECK(corner.z == rat(0));
    CHECK(even_step(d(rat(2, 3), rat(0), rat(0), rat(1, 3)), corner.z, corner.w) ==
          d(rat(1, 3), rat(1, 3), rat(1, 3), rat(0)));

    ChainParams odd = select_params(d(rat(1, 3), rat(1, 3), rat(1, 3), rat(0)), 3, false);
    CHECK(odd.alpha[0] == rat(1, 2));
    CHECK(odd.alpha[1] == rat(1));
    CHECK(odd.alpha[2] == rat(1, 2));
    CHECK(odd.alpha[3] == rat(1));

    ChainParams odd5 = select_params(d(rat(1, 3), rat(1, 3), rat(1, 3), rat(0)), 5, false);
    for (const auto& a : odd5.alpha) {
        CHECK(a >= rat(0));
        CHECK(a <= rat(1));
    }
    CHECK_THROWS_AS(select_params(d(rat(1, 2), rat(1, 2), rat(0), rat(0)), 2, true), Error);
}

TEST_CASE("closure: images of region points stay in the region") {
    SplitMix64 rng(2024);
    auto points = region_vertices();
    std::vector<StateDistribution> tests(points.begin(), points.end());
    for (int i = 0; i < 200; ++i) tests.push_back(random_region_point(rng));
    for (const auto& p : tests) {
        ChainParams even = select_params(p, 2, true);
        StateDistribution image = even_step(p, even.z, even.w);
        StateDistribution closed =
            d(rat(1, 2) - p[3] * rat(1, 2), rat(1, 6) + p[3] * rat(1, 2),
              rat(1, 6) + p[3] * rat(1, 2), rat(1, 6) - p[3] * rat(1, 2));
        CHECK(image == closed);
        CHECK(region_contains(image));
        CHECK(region_contains(swap12(image)));

        ChainParams odd = select_params(p, 3, false);
        StateDistribution odd_image = odd_step(p, odd.x, odd.y, odd.z, odd.w, 3);
        CHECK(odd_image == d(rat(4, 9), rat(2, 9), rat(2, 9), rat(1, 9)));
        CHECK(region_contains(odd_image));
        CHECK(region_contains(swap12(odd_image)));
    }
}

TEST_CASE("steps preserve distributions for fuzzed parameters") {
    SplitMix64 rng(7);
    for (int i = 0; i < 200; ++i) {
        StateDistribution p = random_region_point(rng);
        Rational z(static_cast<std::int64_t>(rng.below(13)), 12);
        Rational w(static_cast<std::int64_t>(rng.below(13)), 12);
        CHECK(even_step(p, z, w).is_distribution());
        int k = 3 + 2 * static_cast<int>(rng.below(3));
        Rational lo(1, k), span(k - 1, k);
        Rational x = lo + (rat(1) - lo) * Rational(static_cast<std::int64_t>(rng.below(5)), 4);
        Rational y = lo + (rat(1) - lo) * Rational(static_cast<std::int64_t>(rng.below(5)), 4);
        Rational zz = span * Rational(static_cast<std::int64_t>(rng.below(5)), 4);
        Rational ww = span * Rational(static_cast<std::int64_t>(rng.below(5)), 4);
        CHECK(odd_step(p, x, y, zz, ww, k).is_distribution());
    }
}

TEST_CASE("necessity certificates, spec examples") {
    NecessityCertificate heavy = check_necessity(d(rat(7, 10), rat(0), rat(3, 10), rat(0)));
    CHECK(heavy.kind == NecessityCertificate::Kind::two_step_collapse);
    CHECK(heavy.bound == rat(13, 20));

    NecessityCertificate shallow = check_necessity(d(rat(2, 3), rat(0), rat(1, 3), rat(0)));
    CHECK(shallow.kind == NecessityCertificate::Kind::one_step_collapse);
    CHECK(shallow.bound == rat(1, 2));

    NecessityCertificate inside = check_necessity(d(rat(1, 3), rat(1, 3), rat(1, 3), rat(0)));
    CHECK(inside.kind == NecessityCertificate::Kind::in_region);
}

TEST_CASE("necessity certificates, seeded points") {
    SplitMix64 rng(31337);
    for (int i = 0; i < 100; ++i) {
        StateDistribution p = heavy_head_point(rng);
        if (p[0] + p[1] == rat(2, 3)) continue;
        NecessityCertificate cert = check_necessity(p);
        CHECK(cert.kind == NecessityCertificate::Kind::two_step_collapse);
        CHECK(cert.bound < rat(2, 3));
        CHECK(cert.bound == rat(1) - (p[0] + p[1]) * rat(1, 2));
    }
    for (int i = 0; i < 100; ++i) {
        StateDistribution p = shallow_tail_point(rng);
        NecessityCertificate cert = check_necessity(p);
        CHECK(cert.kind == NecessityCertificate::Kind::one_step_collapse);
        CHECK(cert.bound < rat(2, 3));
    }
    for (int i = 0; i < 100; ++i) {
        NecessityCertificate cert = check_necessity(random_region_point(rng));
        CHECK(cert.kind == NecessityCertificate::Kind::in_region);
    }
}
