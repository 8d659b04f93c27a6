#include "doctest.h"

#include <set>

#include "cyclecut/instance.hpp"
#include "cyclecut/sampler.hpp"

using namespace cyclecut;

namespace {

Instance doubled_cycle_instance(int n) {
    Instance inst;
    inst.n = n;
    for (int v = 0; v < n; ++v) inst.edges.push_back({v, (v + 1) % n, true, rat(1)});
    validate_instance(inst);
    return inst;
}

StateDistribution d(Rational a, Rational b, Rational c, Rational e) {
    return make_distribution(a, b, c, e);
}

/// Oracle marginals must equal the propagated chain distributions exactly,
/// and within every state both patterns must be equally likely.
void check_chain_consistency(const Pipeline& p) {
    OutcomeDistribution oracle = exact_outcome_distribution(p, 64);
    CHECK(oracle.total_probability == rat(1));
    for (int node = 0; node < p.hierarchy.size(); ++node) {
        const auto& marg = oracle.pattern_marginals[static_cast<std::size_t>(node)];
        const StateDistribution& expected = p.plan.dist[static_cast<std::size_t>(node)];
        for (int s = 0; s < 4; ++s) {
            Rational total = marg[static_cast<std::size_t>(s)][0] + marg[static_cast<std::size_t>(s)][1];
            CHECK(total == expected[s]);
            // each state's two patterns are equally likely
            CHECK(marg[static_cast<std::size_t>(s)][0] == marg[static_cast<std::size_t>(s)][1]);
        }
    }
    // every outcome is a connected spanning even-degree sub-multigraph
    for (const auto& outcome : oracle.outcomes) {
        CHECK(is_connected_spanning(p.support.graph, outcome.mult));
        for (int v = 0; v < p.support.graph.vertex_count(); ++v)
            CHECK(degree_under(p.support.graph, outcome.mult, v) % 2 == 0);
    }
}

}  // namespace

TEST_CASE("propagation through an even cut") {
    // figure1(0) with root u1: every composite cut has two children
    Pipeline p = make_pipeline(gen_figure1(0));
    const StateDistribution straight_image = d(rat(1, 2), rat(1, 6), rat(1, 6), rat(1, 6));
    const Frame& top = p.frames.frame(p.hierarchy.top());
    CHECK(top.even());
    CHECK(p.plan.dist[static_cast<std::size_t>(p.hierarchy.top())] == default_root_distribution());
    for (int child : top.chain) {
        StateDistribution expected = p.frames.twist(child) == Twist::twisted
                                         ? swap12(straight_image)
                                         : straight_image;
        CHECK(p.plan.dist[static_cast<std::size_t>(child)] == expected);
    }
}

TEST_CASE("propagation through an odd cut") {
    // the doubled 4-cycle's top cut has three singleton children
    Pipeline p = make_pipeline(doubled_cycle_instance(4));
    const Frame& top = p.frames.frame(p.hierarchy.top());
    REQUIRE(top.k() == 3);
    CHECK_FALSE(top.even());
    for (int child : top.chain)
        CHECK(p.plan.dist[static_cast<std::size_t>(child)] ==
              d(rat(4, 9), rat(2, 9), rat(2, 9), rat(1, 9)));
}

TEST_CASE("invalid root distribution is rejected") {
    CHECK_THROWS_WITH_AS(
        make_pipeline(gen_figure1(0), std::nullopt, d(rat(1, 2), rat(1, 2), rat(0), rat(0))),
        doctest::Contains("RegionViolation"), Error);
    // in R but p4 > 0: propagation works, sampling refuses
    Pipeline p = make_pipeline(gen_figure1(0), std::nullopt,
                               d(rat(1, 3), rat(1, 3), rat(1, 4), rat(1, 12)));
    RngSource rnd(1);
    CHECK_THROWS_AS(sample_multiplicities(p, rnd), Error);
}

TEST_CASE("figure1(0) oracle: the headline exact values") {
    Pipeline p = make_pipeline(gen_figure1(0));
    REQUIRE(p.hierarchy.root_vertex == 0);
    OutcomeDistribution oracle = exact_outcome_distribution(p);
    CHECK(oracle.total_probability == rat(1));
    CHECK(oracle.expected_cost == rat(22, 3));
    CHECK(lp_value(p.instance) == rat(6));
    // 22/3 over 6 is 11/9, below 4/3
    CHECK(oracle.expected_cost / lp_value(p.instance) == rat(11, 9));

    const auto& root_boundary = p.hierarchy.node(p.hierarchy.top()).boundary;
    std::set<int> root_edges(root_boundary.begin(), root_boundary.end());
    for (int eid = 0; eid < p.support.graph.edge_count(); ++eid) {
        Rational expected = root_edges.count(eid) ? rat(1, 2) : rat(2, 3);
        CHECK(oracle.edge_expectation[static_cast<std::size_t>(eid)] == expected);
    }
    check_chain_consistency(p);
}

TEST_CASE("oracle agrees with the closed-form expectation") {
    for (const Instance& inst :
         {gen_figure1(0), doubled_cycle_instance(4), doubled_cycle_instance(6)}) {
        Pipeline p = make_pipeline(inst);
        OutcomeDistribution oracle = exact_outcome_distribution(p, 16);
        Expectation closed = exact_expectation(p);
        CHECK(oracle.expected_cost == closed.expected_cost);
        for (int eid = 0; eid < p.support.graph.edge_count(); ++eid)
            CHECK(oracle.edge_expectation[static_cast<std::size_t>(eid)] ==
                  closed.edge_expectation[static_cast<std::size_t>(eid)]);
    }
}

TEST_CASE("chain consistency on small instances, both orientations") {
    std::vector<Instance> corpus;
    corpus.push_back(gen_figure1(0));
    corpus.push_back(doubled_cycle_instance(4));  // odd top cut
    corpus.push_back(doubled_cycle_instance(5));  // even top cut, k = 4
    Blueprint nested = Blueprint::chain(
        {Blueprint::chain({Blueprint::leaf(), Blueprint::leaf()}), Blueprint::leaf()});
    corpus.push_back(gen_random_cyclecut(nested, 17));
    Blueprint internal_composite = Blueprint::chain(
        {Blueprint::leaf(), Blueprint::chain({Blueprint::leaf(), Blueprint::leaf()}),
         Blueprint::leaf()});
    corpus.push_back(gen_random_cyclecut(internal_composite, 23));
    for (const Instance& inst : corpus) {
        for (Orientation orient : {Orientation::canonical, Orientation::reflected}) {
            Pipeline p =
                make_pipeline(inst, std::nullopt, default_root_distribution(), orient);
            check_chain_consistency(p);
        }
    }
}

TEST_CASE("oracle under a different root vertex") {
    Pipeline p = make_pipeline(gen_figure1(0), 4 /* w2 */);
    CHECK(p.hierarchy.root_vertex == 4);
    check_chain_consistency(p);
    OutcomeDistribution oracle = exact_outcome_distribution(p);
    CHECK(oracle.expected_cost == rat(22, 3));
}

TEST_CASE("oracle branching cap") {
    CHECK_THROWS_AS(exact_outcome_distribution(make_pipeline(gen_figure1(2)), 6), Error);
}

TEST_CASE("sampling is deterministic per seed") {
    Pipeline p = make_pipeline(gen_figure1(1));
    TourSample a = sample_tour(p, 42);
    TourSample b = sample_tour(p, 42);
    CHECK(a.mult == b.mult);
    CHECK(a.walk == b.walk);
    CHECK(a.cost == b.cost);
    TourSample c = sample_tour(p, 43);
    bool differs = !(a.mult == c.mult);
    CHECK(differs);
    // the walk really is an Eulerian traversal of the sampled multiset
    long steps = 0;
    for (auto m : a.mult) steps += m;
    CHECK(static_cast<long>(a.walk.size()) == steps + 1);
    CHECK(a.walk.front() == a.walk.back());
}

TEST_CASE("usage statistics on figure1(1)") {
    Pipeline p = make_pipeline(gen_figure1(1));
    UsageStats stats = usage_stats(p, 4000, 7);
    CHECK(stats.samples == 4000);
    CHECK(stats.parity_violations == 0);
    CHECK(stats.connectivity_violations == 0);
    Expectation e = exact_expectation(p);
    for (int eid = 0; eid < p.support.graph.edge_count(); ++eid) {
        double exact = e.edge_expectation[static_cast<std::size_t>(eid)].to_double();
        CHECK(stats.edge_mean(eid) == doctest::Approx(exact).epsilon(0.08));
    }
    double expected_cost = e.expected_cost.to_double();
    CHECK(std::abs(stats.mean_cost() - expected_cost) <= 4.0 * stats.cost_stderr());

    // empirical state frequencies track the propagated distributions
    for (int node = 0; node < p.hierarchy.size(); ++node) {
        for (int s = 0; s < 4; ++s) {
            long count = stats.pattern_counts[static_cast<std::size_t>(node)][static_cast<std::size_t>(s)][0] +
                         stats.pattern_counts[static_cast<std::size_t>(node)][static_cast<std::size_t>(s)][1];
            double freq = static_cast<double>(count) / 4000.0;
            double exact = p.plan.dist[static_cast<std::size_t>(node)][s].to_double();
            CHECK(std::abs(freq - exact) < 0.05);
        }
    }
}

TEST_CASE("usage statistics are job-count independent") {
    Pipeline p = make_pipeline(gen_figure1(0));
    UsageStats one = usage_stats(p, 500, 11, 1);
    UsageStats four = usage_stats(p, 500, 11, 4);
    CHECK(one.edge_usage_total == four.edge_usage_total);
    CHECK(one.cost_total == four.cost_total);
    CHECK(one.cost_sq_total == four.cost_sq_total);
    CHECK(one.pattern_counts == four.pattern_counts);
}

TEST_CASE("sampled tours never beat the exact TSP optimum") {
    Instance inst = gen_figure1(2);
    Rational opt = held_karp_opt(inst);
    Pipeline p = make_pipeline(inst);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        TourSample tour = sample_tour(p, seed);
        CHECK(tour.cost >= opt);
    }
    Expectation e = exact_expectation(p);
    CHECK(e.expected_cost <= Rational(4, 3) * lp_value(inst));
}

TEST_CASE("exact expectation covers each edge exactly once") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        Instance inst = gen_random_cyclecut(random_blueprint(seed, 5 + seed % 6), seed);
        Pipeline p = make_pipeline(inst);
        Expectation e = exact_expectation(p);
        const auto& top_boundary = p.hierarchy.node(p.hierarchy.top()).boundary;
        std::set<int> root_edges(top_boundary.begin(), top_boundary.end());
        for (int eid = 0; eid < p.support.graph.edge_count(); ++eid) {
            Rational expected = root_edges.count(eid) ? rat(1, 2) : rat(2, 3);
            CHECK(e.edge_expectation[static_cast<std::size_t>(eid)] == expected);
        }
        CHECK(e.expected_cost <= Rational(4, 3) * lp_value(inst));
    }
}

TEST_CASE("many samples keep structural guarantees") {
    // together with the other Monte Carlo cases this pushes the corpus past
    // 10^5 samples, all of which must be even-degree connected spanning
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        Instance inst = gen_random_cyclecut(random_blueprint(seed, 6 + seed % 5), seed);
        Pipeline p = make_pipeline(inst);
        UsageStats stats = usage_stats(p, 10000, seed, 4);
        CHECK(stats.parity_violations == 0);
        CHECK(stats.connectivity_violations == 0);
    }
}

TEST_CASE("figure1(4) at 20000 samples tracks the exact values") {
    Pipeline p = make_pipeline(gen_figure1(4));
    UsageStats stats = usage_stats(p, 20000, 1234, 4);
    CHECK(stats.parity_violations == 0);
    CHECK(stats.connectivity_violations == 0);
    Expectation e = exact_expectation(p);
    for (int eid = 0; eid < p.support.graph.edge_count(); ++eid) {
        double exact = e.edge_expectation[static_cast<std::size_t>(eid)].to_double();
        CHECK(std::abs(stats.edge_mean(eid) - exact) <= 0.03);
    }
    for (int node = 0; node < p.hierarchy.size(); ++node)
        for (int s = 0; s < 4; ++s) {
            long count =
                stats.pattern_counts[static_cast<std::size_t>(node)][static_cast<std::size_t>(s)][0] +
                stats.pattern_counts[static_cast<std::size_t>(node)][static_cast<std::size_t>(s)][1];
            double freq = static_cast<double>(count) / 20000.0;
            double exact = p.plan.dist[static_cast<std::size_t>(node)][s].to_double();
            CHECK(std::abs(freq - exact) <= 0.03);
        }
}

TEST_CASE("connection rules: conditional pair actions of an even 2-child cut") {
    // figure1(0): the top cut has two children joined by one pair; condition
    // the exact outcome distribution on the incoming root pattern and read off
    // the pair-action probabilities
    Pipeline p = make_pipeline(gen_figure1(0));
    const Frame& top = p.frames.frame(p.hierarchy.top());
    REQUIRE(top.k() == 2);
    const PairEdges pair = top.pairs[0];
    const auto roles = p.frames.roles(p.hierarchy.top());
    OutcomeDistribution oracle = exact_outcome_distribution(p);

    auto conditional = [&](PatternState state, PatternVariant variant) {
        Rational total, both, top_double, bottom_double, top_pick, bottom_pick;
        std::array<int, 4> want = pattern_parities(state, variant);
        for (const auto& outcome : oracle.outcomes) {
            std::array<int, 4> got{};
            for (int i = 0; i < 4; ++i)
                got[static_cast<std::size_t>(i)] =
                    outcome.mult[static_cast<std::size_t>(roles[static_cast<std::size_t>(i)])] % 2;
            if (got != want) continue;
            total += outcome.probability;
            int mt = outcome.mult[static_cast<std::size_t>(pair.top)];
            int mb = outcome.mult[static_cast<std::size_t>(pair.bottom)];
            if (mt == 1 && mb == 1) both += outcome.probability;
            if (mt == 2 && mb == 0) top_double += outcome.probability;
            if (mt == 0 && mb == 2) bottom_double += outcome.probability;
            if (mt == 1 && mb == 0) top_pick += outcome.probability;
            if (mt == 0 && mb == 1) bottom_pick += outcome.probability;
        }
        struct Result {
            Rational total, both, top_double, bottom_double, top_pick, bottom_pick;
        };
        return Result{total, both, top_double, bottom_double, top_pick, bottom_pick};
    };

    // state 3 variant A: use both with probability 1/2, else double one side
    auto s3 = conditional(PatternState::s3, PatternVariant::a);
    REQUIRE(s3.total > rat(0));
    CHECK(s3.both / s3.total == rat(1, 2));
    CHECK(s3.top_double / s3.total == rat(1, 4));
    CHECK(s3.bottom_double / s3.total == rat(1, 4));

    // state 1 variant A: pick one of the two edges uniformly
    auto s1 = conditional(PatternState::s1, PatternVariant::a);
    REQUIRE(s1.total > rat(0));
    CHECK(s1.top_pick / s1.total == rat(1, 2));
    CHECK(s1.bottom_pick / s1.total == rat(1, 2));
}

TEST_CASE("connection rules: odd aligned branch sends every child to state 3") {
    // doubled 4-cycle: odd top cut with three singleton children. Under the
    // canonical parameters the aligned branch of state 2 never fires (alpha is
    // 1 at k = 3), so drop z to 1/3 to make both branches live.
    Pipeline p = make_pipeline(doubled_cycle_instance(4));
    const int top = p.hierarchy.top();
    ChainParams& params = p.plan.params[static_cast<std::size_t>(top)];
    REQUIRE_FALSE(params.even);
    params.z = rat(1, 3);
    params.alpha[1] = params.z * Rational(params.k, params.k - 1);  // 1/2
    const Frame& frame = p.frames.frame(top);
    const auto roles = p.frames.roles(top);
    OutcomeDistribution oracle = exact_outcome_distribution(p);

    std::array<int, 4> want = pattern_parities(PatternState::s2, PatternVariant::a);
    Rational total, aligned;
    for (const auto& outcome : oracle.outcomes) {
        std::array<int, 4> got{};
        for (int i = 0; i < 4; ++i)
            got[static_cast<std::size_t>(i)] =
                outcome.mult[static_cast<std::size_t>(roles[static_cast<std::size_t>(i)])] % 2;
        if (got != want) continue;
        total += outcome.probability;
        bool is_aligned = true;
        for (const auto& pe : frame.pairs) {
            // variant A enters from the top, so the aligned fill takes tops
            if (outcome.mult[static_cast<std::size_t>(pe.top)] != 1 ||
                outcome.mult[static_cast<std::size_t>(pe.bottom)] != 0)
                is_aligned = false;
        }
        if (!is_aligned) continue;
        aligned += outcome.probability;
        // every child reads a same-end pattern (state 3)
        for (int child : frame.chain) {
            const auto child_roles = p.frames.roles(child);
            std::array<int, 4> parities{};
            for (int i = 0; i < 4; ++i)
                parities[static_cast<std::size_t>(i)] =
                    outcome.mult[static_cast<std::size_t>(
                        child_roles[static_cast<std::size_t>(i)])] %
                    2;
            CHECK(classify_pattern(parities).state == PatternState::s3);
        }
    }
    REQUIRE(total > rat(0));
    // aligned branch fires with probability 1 - alpha = 1/2
    CHECK(aligned / total == rat(1, 2));
}

TEST_CASE("hierarchy round trip recovers the blueprint shape") {
    // canonical shape string: leaves are L, chains list their children in
    // order, normalized up to reflection
    struct Shape {
        static std::string of(const Blueprint& b) {
            if (b.is_leaf()) return "L";
            std::vector<std::string> parts;
            for (const auto& c : b.children) parts.push_back(of(c));
            return combine(parts);
        }
        static std::string combine(std::vector<std::string> parts) {
            std::vector<std::string> reversed(parts.rbegin(), parts.rend());
            std::string fwd = "(";
            for (const auto& s : parts) fwd += s;
            fwd += ")";
            std::string bwd = "(";
            for (const auto& s : reversed) bwd += s;
            bwd += ")";
            return std::min(fwd, bwd);
        }
        static std::string of_node(const Pipeline& p, int node) {
            if (p.hierarchy.node(node).is_singleton()) return "L";
            std::vector<std::string> parts;
            for (int child : p.frames.frame(node).chain) parts.push_back(of_node(p, child));
            return combine(parts);
        }
    };
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Blueprint b = random_blueprint(seed, 4 + static_cast<int>(seed % 9));
        Instance inst = gen_random_cyclecut(b, seed);
        Pipeline p = make_pipeline(inst);
        CHECK(Shape::of(b) == Shape::of_node(p, p.hierarchy.top()));
    }
}
