#include "cyclecut/instance.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <utility>

#include "cyclecut/rng.hpp"
#include "json.hpp"

namespace cyclecut {

namespace {

using nlohmann::json;

std::pair<int, int> norm_pair(int u, int v) { return {std::min(u, v), std::max(u, v)}; }

}  // namespace

void validate_instance(const Instance& inst) {
    require(inst.n >= 4, Errc::degenerate_instance,
            "instance needs at least 4 vertices, got " + std::to_string(inst.n));
    if (inst.root)
        require(*inst.root >= 0 && *inst.root < inst.n, Errc::endpoint_out_of_range,
                "root out of range");
    std::set<std::pair<int, int>> seen;
    for (const auto& e : inst.edges) {
        require(e.u >= 0 && e.u < inst.n && e.v >= 0 && e.v < inst.n, Errc::endpoint_out_of_range,
                "edge endpoint out of range");
        require(e.u != e.v, Errc::self_loop, "self-loop in support");
        require(!e.cost.is_negative(), Errc::param_out_of_range, "negative cost");
        require(seen.insert(norm_pair(e.u, e.v)).second, Errc::parse_error,
                "repeated support pair (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    }
    // x(δ(v)) = 2 for every vertex, i.e. support degree 4 counting copies
    std::vector<int> deg(static_cast<std::size_t>(inst.n), 0);
    for (const auto& e : inst.edges) {
        int copies = e.doubled ? 2 : 1;
        deg[static_cast<std::size_t>(e.u)] += copies;
        deg[static_cast<std::size_t>(e.v)] += copies;
    }
    for (int v = 0; v < inst.n; ++v)
        require(deg[static_cast<std::size_t>(v)] == 4, Errc::degree_violation,
                "x(delta(v)) != 2 at vertex " + std::to_string(v));
    // subtour constraints: every cut of the support multigraph has >= 4 copies
    SupportGraph sg = support_multigraph(inst);
    require(sg.graph.is_connected(), Errc::subtour_violation, "support graph disconnected");
    int mincut = global_min_cut_value(sg.graph);
    require(mincut >= 4, Errc::subtour_violation,
            "support min cut " + std::to_string(mincut) + " < 4");
}

Instance load_instance(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& ex) {
        fail(Errc::parse_error, ex.what());
    }
    require(doc.is_object(), Errc::parse_error, "instance must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        require(key == "n" || key == "root" || key == "edges", Errc::parse_error,
                "unknown field '" + key + "'");
    }
    require(doc.contains("n") && doc["n"].is_number_integer(), Errc::parse_error,
            "missing integer field 'n'");
    require(doc.contains("edges") && doc["edges"].is_array(), Errc::parse_error,
            "missing array field 'edges'");
    Instance inst;
    inst.n = doc["n"].get<int>();
    if (doc.contains("root")) {
        require(doc["root"].is_number_integer(), Errc::parse_error, "'root' must be an integer");
        inst.root = doc["root"].get<int>();
    }
    for (const auto& item : doc["edges"]) {
        require(item.is_object(), Errc::parse_error, "edge entries must be objects");
        for (const auto& [key, value] : item.items()) {
            (void)value;
            require(key == "u" || key == "v" || key == "x" || key == "cost", Errc::parse_error,
                    "unknown edge field '" + key + "'");
        }
        require(item.contains("u") && item["u"].is_number_integer() && item.contains("v") &&
                    item["v"].is_number_integer(),
                Errc::parse_error, "edge endpoints must be integers");
        require(item.contains("x") && item["x"].is_string(), Errc::parse_error,
                "edge field 'x' must be a string");
        require(item.contains("cost") && item["cost"].is_string(), Errc::parse_error,
                "edge field 'cost' must be a string");
        std::string x = item["x"].get<std::string>();
        require(x == "1/2" || x == "1", Errc::half_integrality_violation,
                "x = '" + x + "' is not in {1/2, 1}");
        SupportEdge e;
        e.u = item["u"].get<int>();
        e.v = item["v"].get<int>();
        e.doubled = (x == "1");
        e.cost = Rational::parse(item["cost"].get<std::string>());
        inst.edges.push_back(e);
    }
    validate_instance(inst);
    return inst;
}

std::string save_instance(const Instance& inst) {
    nlohmann::ordered_json doc;
    doc["n"] = inst.n;
    if (inst.root) doc["root"] = *inst.root;
    doc["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : inst.edges) {
        nlohmann::ordered_json item;
        item["u"] = e.u;
        item["v"] = e.v;
        item["x"] = e.doubled ? "1" : "1/2";
        item["cost"] = e.cost.str();
        doc["edges"].push_back(item);
    }
    return doc.dump(2) + "\n";
}

SupportGraph support_multigraph(const Instance& inst) {
    std::vector<MultiEdge> edges;
    std::vector<std::array<int, 2>> copies;
    std::vector<int> support_of;
    copies.reserve(inst.edges.size());
    for (std::size_t i = 0; i < inst.edges.size(); ++i) {
        const SupportEdge& e = inst.edges[i];
        int first = static_cast<int>(edges.size());
        edges.push_back({first, e.u, e.v, e.cost});
        support_of.push_back(static_cast<int>(i));
        if (e.doubled) {
            edges.push_back({first + 1, e.u, e.v, e.cost});
            support_of.push_back(static_cast<int>(i));
            copies.push_back({first, first + 1});
        } else {
            copies.push_back({first, -1});
        }
    }
    return {Multigraph(inst.n, std::move(edges)), std::move(copies), std::move(support_of)};
}

Rational lp_value(const Instance& inst) {
    Rational total;
    for (const auto& e : inst.edges) total += e.cost * e.x();
    return total;
}

Instance gen_figure1(int k, const std::vector<Rational>& costs) {
    require(k >= 0, Errc::param_out_of_range, "k must be nonnegative");
    Instance inst;
    inst.n = 6 + 3 * k;
    // u-triangle 0,1,2 and w-triangle 3,4,5; path i runs u_i .. w_i
    std::vector<std::tuple<int, int, bool>> raw;
    raw.emplace_back(0, 1, false);
    raw.emplace_back(0, 2, false);
    raw.emplace_back(1, 2, false);
    raw.emplace_back(3, 4, false);
    raw.emplace_back(3, 5, false);
    raw.emplace_back(4, 5, false);
    int next = 6;
    for (int path = 0; path < 3; ++path) {
        int prev = path;  // u_i
        for (int j = 0; j < k; ++j) {
            raw.emplace_back(prev, next, true);
            prev = next++;
        }
        raw.emplace_back(prev, 3 + path, true);
    }
    if (!costs.empty())
        require(costs.size() == raw.size(), Errc::param_out_of_range,
                "explicit cost list must have " + std::to_string(raw.size()) + " entries");
    for (std::size_t i = 0; i < raw.size(); ++i) {
        auto [u, v, doubled] = raw[i];
        inst.edges.push_back({u, v, doubled, costs.empty() ? Rational(1) : costs[i]});
    }
    validate_instance(inst);
    return inst;
}

int Blueprint::leaf_count() const {
    if (is_leaf()) return 1;
    int total = 0;
    for (const auto& c : children) total += c.leaf_count();
    return total;
}

void validate_blueprint(const Blueprint& b) {
    require(!b.is_leaf(), Errc::blueprint_invalid, "top-level blueprint must be a chain");
    require(b.leaf_count() >= 3, Errc::blueprint_invalid,
            "blueprint needs at least 3 leaves, got " + std::to_string(b.leaf_count()));
    struct Walk {
        static void check(const Blueprint& node) {
            if (node.is_leaf()) return;
            require(node.children.size() >= 2, Errc::blueprint_invalid,
                    "chain with fewer than 2 children");
            for (const auto& c : node.children) check(c);
        }
    };
    Walk::check(b);
}

namespace {

/// Attachment stubs of a realized gadget: slot [0] of each pair sits at the
/// first end of the gadget's chain, slot [1] at the last end.
struct Gadget {
    std::array<int, 2> left;
    std::array<int, 2> right;
};

struct Builder {
    std::vector<std::tuple<int, int, bool>> edges;  // (u, v, doubled)
    int next_vertex = 0;

    void emit_pair(int a0, int a1, int b0, int b1) {
        if (a0 == a1 && b0 == b1) {
            edges.emplace_back(a0, b0, true);
        } else {
            edges.emplace_back(a0, b0, false);
            edges.emplace_back(a1, b1, false);
        }
    }

    Gadget realize(const Blueprint& node) {
        if (node.is_leaf()) {
            int v = next_vertex++;
            return {{v, v}, {v, v}};
        }
        std::vector<Gadget> parts;
        parts.reserve(node.children.size());
        for (const auto& c : node.children) parts.push_back(realize(c));
        for (std::size_t i = 0; i + 1 < parts.size(); ++i)
            emit_pair(parts[i].right[0], parts[i].right[1], parts[i + 1].left[0],
                      parts[i + 1].left[1]);
        // unconsumed outer stubs, one per end of this chain
        return {{parts.front().left[0], parts.back().right[0]},
                {parts.front().left[1], parts.back().right[1]}};
    }
};

}  // namespace

Instance gen_random_cyclecut(const Blueprint& blueprint, std::uint64_t seed, bool unit_costs) {
    validate_blueprint(blueprint);
    Builder builder;
    Gadget top = builder.realize(blueprint);
    int r = builder.next_vertex++;
    builder.emit_pair(r, r, top.left[0], top.right[0]);
    builder.emit_pair(r, r, top.left[1], top.right[1]);

    SplitMix64 rng(substream_seed(seed, 0x67656e));
    Instance inst;
    inst.n = builder.next_vertex;
    inst.root = r;
    for (auto [u, v, doubled] : builder.edges) {
        Rational cost = unit_costs ? Rational(1)
                                   : Rational(1 + static_cast<std::int64_t>(rng.below(9)),
                                              1 + static_cast<std::int64_t>(rng.below(4)));
        inst.edges.push_back({u, v, doubled, cost});
    }
    validate_instance(inst);
    return inst;
}

namespace {

Blueprint random_blueprint_rec(SplitMix64& rng, int leaves) {
    if (leaves == 1) return Blueprint::leaf();
    if (leaves == 2) return Blueprint::chain({Blueprint::leaf(), Blueprint::leaf()});
    int parts = 2 + static_cast<int>(rng.below(3));  // 2..4 children
    parts = std::min(parts, leaves);
    // random composition of `leaves` into `parts` positive parts
    std::vector<int> sizes(static_cast<std::size_t>(parts), 1);
    for (int extra = leaves - parts; extra > 0; --extra)
        sizes[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(parts)))] += 1;
    std::vector<Blueprint> kids;
    kids.reserve(sizes.size());
    for (int s : sizes) kids.push_back(random_blueprint_rec(rng, s));
    return Blueprint::chain(std::move(kids));
}

}  // namespace

Blueprint random_blueprint(std::uint64_t seed, int leaves) {
    require(leaves >= 3, Errc::blueprint_invalid, "need at least 3 leaves");
    SplitMix64 rng(substream_seed(seed, 0x62707274));
    // force a chain at the top even when the recursion would hand back a leaf
    Blueprint b = random_blueprint_rec(rng, leaves);
    validate_blueprint(b);
    return b;
}

namespace {

Rational held_karp_dp(int n, const std::vector<std::vector<Rational>>& dist) {
    require(n <= 18, Errc::too_large, "held_karp_opt requires n <= 18");
    // common denominator so the DP runs on 64-bit integers
    std::int64_t den = 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) den = std::lcm(den, dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].den());
    auto weight = [&](int i, int j) {
        const Rational& d = dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        return d.num() * (den / d.den());
    };
    const int m = n - 1;  // vertices 1..n-1, tours anchored at 0
    const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> dp(static_cast<std::size_t>(1 << m) * static_cast<std::size_t>(m), inf);
    auto at = [&](int mask, int last) -> std::int64_t& {
        return dp[static_cast<std::size_t>(mask) * static_cast<std::size_t>(m) +
                  static_cast<std::size_t>(last)];
    };
    for (int v = 0; v < m; ++v) at(1 << v, v) = weight(0, v + 1);
    for (int mask = 1; mask < (1 << m); ++mask) {
        for (int last = 0; last < m; ++last) {
            if (!(mask & (1 << last)) || at(mask, last) >= inf) continue;
            std::int64_t base = at(mask, last);
            for (int next = 0; next < m; ++next) {
                if (mask & (1 << next)) continue;
                std::int64_t cand = base + weight(last + 1, next + 1);
                std::int64_t& slot = at(mask | (1 << next), next);
                if (cand < slot) slot = cand;
            }
        }
    }
    std::int64_t best = inf;
    int full = (1 << m) - 1;
    for (int last = 0; last < m; ++last)
        best = std::min(best, at(full, last) + weight(last + 1, 0));
    return Rational(best, den);
}

}  // namespace

Rational held_karp_opt(const Instance& inst) {
    const int n = inst.n;
    require(n <= 18, Errc::too_large, "held_karp_opt requires n <= 18");
    // shortest-path closure of the support edges
    const Rational inf(std::numeric_limits<std::int64_t>::max() / 2);
    std::vector<std::vector<Rational>> dist(
        static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n), inf));
    for (int v = 0; v < n; ++v) dist[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)] = Rational(0);
    for (const auto& e : inst.edges) {
        auto& duv = dist[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)];
        if (e.cost < duv) {
            duv = e.cost;
            dist[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] = e.cost;
        }
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Rational via = dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                               dist[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                if (via < dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                    dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = via;
            }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            require(dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] < inf,
                    Errc::metric_undefined, "support graph not connected");
    return held_karp_dp(n, dist);
}

Rational held_karp_opt(const Instance& inst, const std::vector<std::vector<Rational>>& metric) {
    const int n = inst.n;
    require(static_cast<int>(metric.size()) == n, Errc::metric_undefined,
            "metric matrix must be n x n");
    for (const auto& row : metric) {
        require(static_cast<int>(row.size()) == n, Errc::metric_undefined,
                "metric matrix must be n x n");
        for (const auto& d : row)
            require(!d.is_negative(), Errc::metric_undefined, "negative metric entry");
    }
    return held_karp_dp(n, metric);
}

}  // namespace cyclecut
