#include "cyclecut/multigraph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <tuple>

namespace cyclecut {

Multigraph::Multigraph(int vertex_count, std::vector<MultiEdge> edges)
    : n_(vertex_count), edges_(std::move(edges)), adj_(static_cast<std::size_t>(vertex_count)) {
    require(n_ >= 1, Errc::endpoint_out_of_range, "vertex count must be positive");
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const MultiEdge& e = edges_[i];
        require(e.id == static_cast<int>(i), Errc::endpoint_out_of_range, "edge ids must be 0..m-1");
        require(e.u >= 0 && e.u < n_ && e.v >= 0 && e.v < n_, Errc::endpoint_out_of_range,
                "edge endpoint out of range");
        require(e.u != e.v, Errc::self_loop,
                "self-loop at vertex " + std::to_string(e.u));
        require(!e.cost.is_negative(), Errc::param_out_of_range, "negative edge cost");
        adj_[static_cast<std::size_t>(e.u)].emplace_back(e.id, e.v);
        adj_[static_cast<std::size_t>(e.v)].emplace_back(e.id, e.u);
    }
    for (auto& list : adj_) std::sort(list.begin(), list.end());
}

bool Multigraph::is_connected() const {
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int reached = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (auto [eid, w] : incident(v)) {
            (void)eid;
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                queue.push_back(w);
            }
        }
    }
    return reached == n_;
}

Rational Multigraph::total_cost() const {
    Rational total;
    for (const auto& e : edges_) total += e.cost;
    return total;
}

Multigraph build_multigraph(int vertex_count,
                            const std::vector<std::tuple<int, int, Rational>>& edge_list) {
    std::vector<MultiEdge> edges;
    edges.reserve(edge_list.size());
    int id = 0;
    for (const auto& [u, v, cost] : edge_list) edges.push_back({id++, u, v, cost});
    return Multigraph(vertex_count, std::move(edges));
}

int degree_under(const Multigraph& g, const MultiplicityMap& m, int v) {
    int deg = 0;
    for (auto [eid, w] : g.incident(v)) {
        (void)w;
        deg += m[static_cast<std::size_t>(eid)];
    }
    return deg;
}

bool is_connected_spanning(const Multigraph& g, const MultiplicityMap& m) {
    const int n = g.vertex_count();
    for (int v = 0; v < n; ++v)
        if (degree_under(g, m, v) < 2) return false;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int reached = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (auto [eid, w] : g.incident(v)) {
            if (m[static_cast<std::size_t>(eid)] > 0 && !seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                queue.push_back(w);
            }
        }
    }
    return reached == n;
}

std::vector<int> euler_circuit(const Multigraph& g, const MultiplicityMap& m) {
    require(m.size() == static_cast<std::size_t>(g.edge_count()), Errc::frame_mismatch,
            "multiplicity map size mismatch");
    const int n = g.vertex_count();
    long total = 0;
    for (int v = 0; v < n; ++v) {
        int deg = degree_under(g, m, v);
        require(deg % 2 == 0, Errc::odd_degree,
                "vertex " + std::to_string(v) + " has odd degree " + std::to_string(deg));
        total += deg;
    }
    require(is_connected_spanning(g, m), Errc::disconnected,
            "selected sub-multigraph is not connected spanning");

    std::vector<std::uint8_t> remaining = m;
    // next unexplored incidence per vertex; incidence lists are id-sorted,
    // which pins the tie-breaking rule
    std::vector<std::size_t> cursor(static_cast<std::size_t>(n), 0);

    int start = 0;
    std::vector<int> stack{start};
    std::vector<int> walk;
    walk.reserve(static_cast<std::size_t>(total / 2) + 1);
    while (!stack.empty()) {
        int v = stack.back();
        const auto& inc = g.incident(v);
        std::size_t& cur = cursor[static_cast<std::size_t>(v)];
        while (cur < inc.size() && remaining[static_cast<std::size_t>(inc[cur].first)] == 0) ++cur;
        if (cur == inc.size()) {
            walk.push_back(v);
            stack.pop_back();
        } else {
            auto [eid, w] = inc[cur];
            --remaining[static_cast<std::size_t>(eid)];
            stack.push_back(w);
        }
    }
    std::reverse(walk.begin(), walk.end());
    return walk;
}

int global_min_cut_value(const Multigraph& g) {
    require(g.vertex_count() >= 2, Errc::too_large, "min cut needs at least 2 vertices");
    require(g.is_connected(), Errc::disconnected, "min cut of a disconnected graph");
    const int n = g.vertex_count();
    std::vector<std::vector<long>> w(static_cast<std::size_t>(n),
                                     std::vector<long>(static_cast<std::size_t>(n), 0));
    for (const auto& e : g.edges()) {
        w[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)] += 1;
        w[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] += 1;
    }
    // Stoer-Wagner with vertex merging on the weight matrix
    std::vector<int> active(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) active[static_cast<std::size_t>(i)] = i;
    long best = std::numeric_limits<long>::max();
    while (active.size() > 1) {
        std::vector<long> weight_to(static_cast<std::size_t>(n), 0);
        std::vector<char> added(static_cast<std::size_t>(n), 0);
        int prev = -1, last = -1;
        for (std::size_t phase = 0; phase < active.size(); ++phase) {
            int pick = -1;
            for (int v : active)
                if (!added[static_cast<std::size_t>(v)] &&
                    (pick == -1 || weight_to[static_cast<std::size_t>(v)] >
                                       weight_to[static_cast<std::size_t>(pick)]))
                    pick = v;
            added[static_cast<std::size_t>(pick)] = 1;
            prev = last;
            last = pick;
            for (int v : active)
                if (!added[static_cast<std::size_t>(v)])
                    weight_to[static_cast<std::size_t>(v)] +=
                        w[static_cast<std::size_t>(pick)][static_cast<std::size_t>(v)];
        }
        best = std::min(best, weight_to[static_cast<std::size_t>(last)]);
        // merge last into prev
        for (int v : active) {
            if (v == last || v == prev) continue;
            w[static_cast<std::size_t>(prev)][static_cast<std::size_t>(v)] +=
                w[static_cast<std::size_t>(last)][static_cast<std::size_t>(v)];
            w[static_cast<std::size_t>(v)][static_cast<std::size_t>(prev)] =
                w[static_cast<std::size_t>(prev)][static_cast<std::size_t>(v)];
        }
        active.erase(std::find(active.begin(), active.end(), last));
    }
    return static_cast<int>(best);
}

MaxFlow max_flow(const Multigraph& g, int s, int t, int cap) {
    const int n = g.vertex_count();
    std::vector<std::vector<int>> residual(static_cast<std::size_t>(n),
                                           std::vector<int>(static_cast<std::size_t>(n), 0));
    for (const auto& e : g.edges()) {
        residual[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)] += 1;
        residual[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] += 1;
    }
    int flow = 0;
    while (flow <= cap) {
        // BFS augmenting path
        std::vector<int> parent(static_cast<std::size_t>(n), -1);
        parent[static_cast<std::size_t>(s)] = s;
        std::deque<int> queue{s};
        while (!queue.empty() && parent[static_cast<std::size_t>(t)] == -1) {
            int v = queue.front();
            queue.pop_front();
            for (int w = 0; w < n; ++w) {
                if (parent[static_cast<std::size_t>(w)] == -1 &&
                    residual[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] > 0) {
                    parent[static_cast<std::size_t>(w)] = v;
                    queue.push_back(w);
                }
            }
        }
        if (parent[static_cast<std::size_t>(t)] == -1) break;
        int bottleneck = std::numeric_limits<int>::max();
        for (int v = t; v != s; v = parent[static_cast<std::size_t>(v)])
            bottleneck = std::min(
                bottleneck,
                residual[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])]
                        [static_cast<std::size_t>(v)]);
        for (int v = t; v != s; v = parent[static_cast<std::size_t>(v)]) {
            int p = parent[static_cast<std::size_t>(v)];
            residual[static_cast<std::size_t>(p)][static_cast<std::size_t>(v)] -= bottleneck;
            residual[static_cast<std::size_t>(v)][static_cast<std::size_t>(p)] += bottleneck;
        }
        flow += bottleneck;
    }
    return {flow, std::move(residual)};
}

}  // namespace cyclecut
