#include "doctest.h"

#include <set>

#include "cyclecut/cuts.hpp"
#include "cyclecut/instance.hpp"

using namespace cyclecut;

namespace {

std::string doubled_4cycle_json() {
    return R"({"n": 4, "edges": [
        {"u": 0, "v": 1, "x": "1", "cost": "1"},
        {"u": 1, "v": 2, "x": "1", "cost": "1"},
        {"u": 2, "v": 3, "x": "1", "cost": "1"},
        {"u": 3, "v": 0, "x": "1", "cost": "1"}]})";
}

Instance doubled_cycle_instance(int n) {
    Instance inst;
    inst.n = n;
    for (int v = 0; v < n; ++v) inst.edges.push_back({v, (v + 1) % n, true, rat(1)});
    validate_instance(inst);
    return inst;
}

}  // namespace

TEST_CASE("load_instance accepts a doubled 4-cycle") {
    Instance inst = load_instance(doubled_4cycle_json());
    CHECK(inst.n == 4);
    CHECK(inst.edges.size() == 4);
    CHECK(lp_value(inst) == rat(4));
    CHECK(inst.root_or_default() == 0);
}

TEST_CASE("load_instance rejects bad input") {
    // x = 1/4 violates half-integrality
    CHECK_THROWS_WITH_AS(
        load_instance(R"({"n": 4, "edges": [{"u":0,"v":1,"x":"1/4","cost":"1"}]})"),
        doctest::Contains("HalfIntegrality"), Error);
    // unknown field
    CHECK_THROWS_AS(load_instance(R"({"n": 4, "foo": 1, "edges": []})"), Error);
    // degree violation: a triangle of halves has x(δ(v)) = 1
    CHECK_THROWS_WITH_AS(load_instance(R"({"n": 4, "edges": [
        {"u":0,"v":1,"x":"1/2","cost":"1"},
        {"u":1,"v":2,"x":"1/2","cost":"1"},
        {"u":2,"v":0,"x":"1/2","cost":"1"}]})"),
                         doctest::Contains("DegreeViolation"), Error);
    // n = 3 support is rejected as degenerate
    CHECK_THROWS_WITH_AS(load_instance(R"({"n": 3, "edges": [
        {"u":0,"v":1,"x":"1","cost":"1"},
        {"u":1,"v":2,"x":"1","cost":"1"},
        {"u":2,"v":0,"x":"1","cost":"1"}]})"),
                         doctest::Contains("Degenerate"), Error);
    // repeated support pair
    CHECK_THROWS_AS(load_instance(R"({"n": 4, "edges": [
        {"u":0,"v":1,"x":"1/2","cost":"1"},
        {"u":1,"v":0,"x":"1/2","cost":"1"}]})"),
                    Error);
}

TEST_CASE("subtour violation detected via support min cut") {
    // two K5's with one edge removed from each, reconnected by two single
    // edges: every x(δ(v)) = 2 but the joining cut has weight 1 < 2
    Instance inst;
    inst.n = 10;
    auto add_k5 = [&](int base, int skip_u, int skip_v) {
        for (int u = 0; u < 5; ++u)
            for (int v = u + 1; v < 5; ++v) {
                if (u == skip_u && v == skip_v) continue;
                inst.edges.push_back({base + u, base + v, false, rat(1)});
            }
    };
    add_k5(0, 0, 1);
    add_k5(5, 0, 1);
    inst.edges.push_back({0, 5, false, rat(1)});
    inst.edges.push_back({1, 6, false, rat(1)});
    CHECK_THROWS_WITH_AS(validate_instance(inst), doctest::Contains("Subtour"), Error);
}

TEST_CASE("instance save/load round trip") {
    Instance inst = gen_figure1(2);
    Instance back = load_instance(save_instance(inst));
    CHECK(back.n == inst.n);
    REQUIRE(back.edges.size() == inst.edges.size());
    for (std::size_t i = 0; i < inst.edges.size(); ++i) {
        CHECK(back.edges[i].u == inst.edges[i].u);
        CHECK(back.edges[i].v == inst.edges[i].v);
        CHECK(back.edges[i].doubled == inst.edges[i].doubled);
        CHECK(back.edges[i].cost == inst.edges[i].cost);
    }
}

TEST_CASE("figure1 generator") {
    Instance f0 = gen_figure1(0);
    CHECK(f0.n == 6);
    CHECK(lp_value(f0) == rat(6));
    Instance f10 = gen_figure1(10);
    CHECK(f10.n == 36);
    CHECK(lp_value(f10) == rat(36));
    for (int k = 0; k <= 50; ++k) {
        Instance f = gen_figure1(k);
        CHECK(lp_value(f) == rat(3 * k + 6));
    }
    SupportGraph sg = support_multigraph(gen_figure1(5));
    CHECK(sg.graph.vertex_count() == 21);
    CHECK(global_min_cut_value(sg.graph) == 4);
}

TEST_CASE("support multigraph copy mapping") {
    Instance inst = gen_figure1(1);
    SupportGraph sg = support_multigraph(inst);
    for (std::size_t i = 0; i < inst.edges.size(); ++i) {
        const auto& copies = sg.copies[i];
        CHECK(sg.support_of[static_cast<std::size_t>(copies[0])] == static_cast<int>(i));
        if (inst.edges[i].doubled) {
            REQUIRE(copies[1] >= 0);
            CHECK(sg.support_of[static_cast<std::size_t>(copies[1])] == static_cast<int>(i));
        } else {
            CHECK(copies[1] == -1);
        }
    }
}

TEST_CASE("blueprint validation") {
    CHECK_THROWS_AS(validate_blueprint(Blueprint::leaf()), Error);
    CHECK_THROWS_AS(validate_blueprint(Blueprint::chain({Blueprint::leaf()})), Error);
    CHECK_THROWS_AS(validate_blueprint(Blueprint::chain({Blueprint::leaf(), Blueprint::leaf()})),
                    Error);  // only 2 leaves
    Blueprint ok = Blueprint::chain({Blueprint::leaf(), Blueprint::leaf(), Blueprint::leaf()});
    CHECK_NOTHROW(validate_blueprint(ok));
    CHECK(ok.leaf_count() == 3);
}

TEST_CASE("random cycle-cut generator: 3 leaves give the doubled 4-cycle") {
    Blueprint chain3 = Blueprint::chain({Blueprint::leaf(), Blueprint::leaf(), Blueprint::leaf()});
    Instance inst = gen_random_cyclecut(chain3, 7, true);
    CHECK(inst.n == 4);
    CHECK(inst.edges.size() == 4);
    for (const auto& e : inst.edges) CHECK(e.doubled);
    CHECK(*inst.root == 3);
}

TEST_CASE("random cycle-cut generator: nested blueprint") {
    Blueprint inner = Blueprint::chain({Blueprint::leaf(), Blueprint::leaf()});
    Blueprint top = Blueprint::chain({inner, Blueprint::leaf(), Blueprint::leaf()});
    Instance inst = gen_random_cyclecut(top, 3, false);
    CHECK(inst.n == 5);
    SupportGraph sg = support_multigraph(inst);
    for (int v = 0; v < inst.n; ++v) CHECK(sg.graph.degree(v) == 4);
    CHECK(global_min_cut_value(sg.graph) == 4);
}

TEST_CASE("generated instances validate across seeds") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Blueprint b = random_blueprint(seed, 4 + static_cast<int>(seed % 7));
        Instance inst = gen_random_cyclecut(b, seed);
        // the loader accepts its own serialization
        Instance back = load_instance(save_instance(inst));
        SupportGraph sg = support_multigraph(back);
        for (int v = 0; v < back.n; ++v) CHECK(sg.graph.degree(v) == 4);
        CHECK(global_min_cut_value(sg.graph) == 4);
    }
}

TEST_CASE("figure1 with explicit costs") {
    Instance unit = gen_figure1(1);
    std::vector<Rational> costs(unit.edges.size(), rat(1));
    costs[0] = rat(3, 2);
    costs[6] = rat(7, 3);  // first path edge
    Instance inst = gen_figure1(1, costs);
    CHECK(lp_value(inst) == lp_value(unit) + (rat(3, 2) - rat(1)) * rat(1, 2) + (rat(7, 3) - rat(1)));
    CHECK_THROWS_AS(gen_figure1(1, std::vector<Rational>(3, rat(1))), Error);
}

TEST_CASE("held_karp on small instances") {
    CHECK(held_karp_opt(load_instance(doubled_4cycle_json())) == rat(4));
    CHECK(held_karp_opt(gen_figure1(0)) == rat(6));
    CHECK_THROWS_AS(held_karp_opt(gen_figure1(5)), Error);  // n = 21 > 18

    // explicit matrix: 4-cycle metric
    Instance inst = load_instance(doubled_4cycle_json());
    std::vector<std::vector<Rational>> metric(4, std::vector<Rational>(4, rat(1)));
    for (int i = 0; i < 4; ++i) metric[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = rat(0);
    metric[0][2] = metric[2][0] = rat(2);
    metric[1][3] = metric[3][1] = rat(2);
    CHECK(held_karp_opt(inst, metric) == rat(4));
    CHECK_THROWS_WITH_AS(held_karp_opt(inst, std::vector<std::vector<Rational>>(3)),
                         doctest::Contains("MetricUndefined"), Error);
}

TEST_CASE("figure1(0) optimal tour value is certified by an explicit tour") {
    // tour u1,u2,w2,w1,w3,u3 has cost 6 under the shortest-path metric
    Instance inst = gen_figure1(0);
    // u1=0,u2=1,u3=2, w1=3,w2=4,w3=5; consecutive hops all cost 1
    // u1-u2 (1/2 edge), u2-w2 (path), w2-w1 (1/2), w1-w3 (1/2), w3-u3 (path), u3-u1 (1/2)
    CHECK(held_karp_opt(inst) == rat(6));
    CHECK(doubled_cycle_instance(5).n == 5);
}
