#include "cyclecut/cuts.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace cyclecut {

namespace {

int boundary_size(const Multigraph& g, const std::vector<char>& in_set) {
    int cut = 0;
    for (const auto& e : g.edges())
        cut += (in_set[static_cast<std::size_t>(e.u)] != in_set[static_cast<std::size_t>(e.v)]);
    return cut;
}

std::vector<char> mask_of(const VertexSet& s, int n) {
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (int v : s) in[static_cast<std::size_t>(v)] = 1;
    return in;
}

VertexSet complement_of(const VertexSet& s, int n) {
    std::vector<char> in = mask_of(s, n);
    VertexSet out;
    out.reserve(static_cast<std::size_t>(n) - s.size());
    for (int v = 0; v < n; ++v)
        if (!in[static_cast<std::size_t>(v)]) out.push_back(v);
    return out;
}

/// Strongly connected components of a dense digraph, Kosaraju.
std::vector<int> scc_of(const std::vector<std::vector<int>>& residual) {
    const int n = static_cast<int>(residual.size());
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::function<void(int)> dfs1 = [&](int v) {
        seen[static_cast<std::size_t>(v)] = 1;
        for (int w = 0; w < n; ++w)
            if (residual[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] > 0 &&
                !seen[static_cast<std::size_t>(w)])
                dfs1(w);
        order.push_back(v);
    };
    for (int v = 0; v < n; ++v)
        if (!seen[static_cast<std::size_t>(v)]) dfs1(v);
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    int comps = 0;
    std::function<void(int)> dfs2 = [&](int v) {
        comp[static_cast<std::size_t>(v)] = comps;
        for (int w = 0; w < n; ++w)
            if (residual[static_cast<std::size_t>(w)][static_cast<std::size_t>(v)] > 0 &&
                comp[static_cast<std::size_t>(w)] == -1)
                dfs2(w);
    };
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (comp[static_cast<std::size_t>(*it)] == -1) {
            dfs2(*it);
            ++comps;
        }
    return comp;
}

}  // namespace

std::vector<VertexSet> brute_force_tight_sets(const Multigraph& g) {
    const int n = g.vertex_count();
    require(n <= 16, Errc::too_large, "brute force limited to 16 vertices");
    std::vector<VertexSet> out;
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        for (int v = 0; v < n; ++v) in[static_cast<std::size_t>(v)] = (mask >> v) & 1u;
        if (boundary_size(g, in) == 4) {
            VertexSet s;
            for (int v = 0; v < n; ++v)
                if (in[static_cast<std::size_t>(v)]) s.push_back(v);
            out.push_back(std::move(s));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<VertexSet> enumerate_tight_sets(const Multigraph& g) {
    const int n = g.vertex_count();
    require(g.is_connected(), Errc::disconnected, "tight sets of a disconnected graph");
    require(global_min_cut_value(g) == 4, Errc::not_four_connected,
            "graph min cut is not 4");
    std::set<VertexSet> found;
    for (int s = 0; s < n; ++s) {
        for (int t = s + 1; t < n; ++t) {
            MaxFlow flow = max_flow(g, s, t, 4);
            if (flow.value != 4) continue;
            // Minimum s-t cuts are exactly the s-sides closed under residual
            // arcs. Work on the residual condensation: the s-side must include
            // everything reachable from s, exclude everything reaching t, and
            // may add any out-closed set of the remaining components.
            std::vector<int> comp = scc_of(flow.residual);
            int comps = 1 + *std::max_element(comp.begin(), comp.end());
            std::vector<std::vector<char>> arc(static_cast<std::size_t>(comps),
                                               std::vector<char>(static_cast<std::size_t>(comps), 0));
            for (int u = 0; u < n; ++u)
                for (int v = 0; v < n; ++v)
                    if (flow.residual[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] > 0 &&
                        comp[static_cast<std::size_t>(u)] != comp[static_cast<std::size_t>(v)])
                        arc[static_cast<std::size_t>(comp[static_cast<std::size_t>(u)])]
                           [static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])] = 1;
            // reachable-from-s and reaching-t component sets
            std::vector<char> from_s(static_cast<std::size_t>(comps), 0);
            std::vector<char> to_t(static_cast<std::size_t>(comps), 0);
            std::function<void(int, std::vector<char>&, bool)> walk = [&](int c, std::vector<char>& seen,
                                                                          bool forward) {
                seen[static_cast<std::size_t>(c)] = 1;
                for (int d = 0; d < comps; ++d) {
                    bool linked = forward ? arc[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)]
                                          : arc[static_cast<std::size_t>(d)][static_cast<std::size_t>(c)];
                    if (linked && !seen[static_cast<std::size_t>(d)]) walk(d, seen, forward);
                }
            };
            walk(comp[static_cast<std::size_t>(s)], from_s, true);
            walk(comp[static_cast<std::size_t>(t)], to_t, false);
            std::vector<int> free;
            for (int c = 0; c < comps; ++c)
                if (!from_s[static_cast<std::size_t>(c)] && !to_t[static_cast<std::size_t>(c)])
                    free.push_back(c);
            // enumerate out-closed subsets of the free components
            std::vector<char> chosen(static_cast<std::size_t>(comps), 0);
            auto emit = [&]() {
                VertexSet side;
                for (int v = 0; v < n; ++v) {
                    int c = comp[static_cast<std::size_t>(v)];
                    if (from_s[static_cast<std::size_t>(c)] || chosen[static_cast<std::size_t>(c)])
                        side.push_back(v);
                }
                found.insert(complement_of(side, n));
                found.insert(std::move(side));
            };
            std::function<void(std::size_t)> rec = [&](std::size_t i) {
                if (i == free.size()) {
                    emit();
                    return;
                }
                int c = free[i];
                // exclude c
                rec(i + 1);
                // include c only when its free successors are already included
                for (int d = 0; d < comps; ++d)
                    if (arc[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)] &&
                        !from_s[static_cast<std::size_t>(d)] && !chosen[static_cast<std::size_t>(d)])
                        return;
                chosen[static_cast<std::size_t>(c)] = 1;
                rec(i + 1);
                chosen[static_cast<std::size_t>(c)] = 0;
            };
            // order free components successors-first so the include branch can
            // always see its successors' decisions
            std::vector<int> ordered;
            std::vector<char> placed(static_cast<std::size_t>(comps), 0);
            while (ordered.size() < free.size()) {
                for (int c : free) {
                    if (placed[static_cast<std::size_t>(c)]) continue;
                    bool ready = true;
                    for (int d : free)
                        if (arc[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)] &&
                            !placed[static_cast<std::size_t>(d)])
                            ready = false;
                    if (ready) {
                        ordered.push_back(c);
                        placed[static_cast<std::size_t>(c)] = 1;
                    }
                }
            }
            free = ordered;
            rec(0);
        }
    }
    return {found.begin(), found.end()};
}

bool crosses(const VertexSet& a, const VertexSet& b, int n) {
    std::vector<char> in_a = mask_of(a, n);
    std::vector<char> in_b = mask_of(b, n);
    bool a_minus_b = false, b_minus_a = false, both = false, neither = false;
    for (int v = 0; v < n; ++v) {
        bool va = in_a[static_cast<std::size_t>(v)], vb = in_b[static_cast<std::size_t>(v)];
        a_minus_b |= (va && !vb);
        b_minus_a |= (vb && !va);
        both |= (va && vb);
        neither |= (!va && !vb);
    }
    return a_minus_b && b_minus_a && both && neither;
}

std::vector<VertexSet> canonicalize_cuts(const std::vector<VertexSet>& sets, int n, int base) {
    std::set<VertexSet> canon;
    for (const auto& s : sets) {
        if (std::binary_search(s.begin(), s.end(), base))
            canon.insert(complement_of(s, n));
        else
            canon.insert(s);
    }
    return {canon.begin(), canon.end()};
}

namespace {

bool contains_all(const std::vector<char>& big, const VertexSet& small) {
    for (int v : small)
        if (!big[static_cast<std::size_t>(v)]) return false;
    return true;
}

void classify_node(const Multigraph& g, Hierarchy& h, int idx) {
    HierarchyNode& node = h.nodes[static_cast<std::size_t>(idx)];
    if (node.is_singleton()) {
        node.kind = CutKind::singleton;
        return;
    }
    // contract all children and the outside; a cycle cut leaves a cycle with
    // exactly two parallel edges between consecutive supernodes
    const int k = static_cast<int>(node.children.size());
    const int outside = k;
    std::vector<int> label(static_cast<std::size_t>(g.vertex_count()), outside);
    for (int c = 0; c < k; ++c)
        for (int v : h.nodes[static_cast<std::size_t>(node.children[static_cast<std::size_t>(c)])].members)
            label[static_cast<std::size_t>(v)] = c;
    std::map<std::pair<int, int>, int> pair_count;
    auto tally = [&](int eid) {
        const MultiEdge& e = g.edge(eid);
        int a = label[static_cast<std::size_t>(e.u)];
        int b = label[static_cast<std::size_t>(e.v)];
        pair_count[{std::min(a, b), std::max(a, b)}] += 1;
    };
    for (int eid : node.internal) tally(eid);
    for (int eid : node.boundary) tally(eid);
    std::vector<std::vector<int>> neighbors(static_cast<std::size_t>(k) + 1);
    for (const auto& [pr, count] : pair_count) {
        if (count != 2) {
            node.kind = CutKind::degree_cut;
            return;
        }
        neighbors[static_cast<std::size_t>(pr.first)].push_back(pr.second);
        neighbors[static_cast<std::size_t>(pr.second)].push_back(pr.first);
    }
    for (const auto& adj : neighbors)
        if (adj.size() != 2) {
            node.kind = CutKind::degree_cut;
            return;
        }
    // 2-regular: a single cycle iff connected
    std::vector<char> seen(static_cast<std::size_t>(k) + 1, 0);
    int at = 0, reached = 0;
    int prev = -1;
    do {
        seen[static_cast<std::size_t>(at)] = 1;
        ++reached;
        const auto& adj = neighbors[static_cast<std::size_t>(at)];
        int next = (adj[0] == prev) ? adj[1] : adj[0];
        prev = at;
        at = next;
    } while (at != 0 && !seen[static_cast<std::size_t>(at)]);
    node.kind = (reached == k + 1) ? CutKind::cycle_cut : CutKind::degree_cut;
}

}  // namespace

Hierarchy build_hierarchy(const Multigraph& g, int r) {
    const int n = g.vertex_count();
    require(r >= 0 && r < n, Errc::endpoint_out_of_range, "root vertex out of range");
    for (int v = 0; v < n; ++v)
        require(g.degree(v) == 4, Errc::not_four_regular,
                "vertex " + std::to_string(v) + " has degree " + std::to_string(g.degree(v)));
    std::vector<VertexSet> tight = enumerate_tight_sets(g);
    std::vector<VertexSet> canon = canonicalize_cuts(tight, n, r);
    // keep the cuts crossed by no other tight set (crossing is invariant under
    // taking complements, so checking against canonical representatives covers
    // all tight sets)
    std::vector<VertexSet> critical;
    for (const auto& s : canon) {
        bool crossed = false;
        for (const auto& t : canon) {
            if (crosses(s, t, n)) {
                crossed = true;
                break;
            }
        }
        if (!crossed) critical.push_back(s);
    }
    std::sort(critical.begin(), critical.end(), [](const VertexSet& a, const VertexSet& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });

    Hierarchy h;
    h.root_vertex = r;
    h.nodes.resize(critical.size());
    for (std::size_t i = 0; i < critical.size(); ++i)
        h.nodes[i].members = critical[i];
    require(!h.nodes.empty() && static_cast<int>(h.nodes[0].members.size()) == n - 1,
            Errc::not_four_connected, "maximal critical cut is not V minus the root");

    // parent = smallest strict superset; nodes are sorted by decreasing size
    for (int i = 1; i < h.size(); ++i) {
        std::vector<char> self = mask_of(h.nodes[static_cast<std::size_t>(i)].members, n);
        (void)self;
        for (int j = i - 1; j >= 0; --j) {
            std::vector<char> big = mask_of(h.nodes[static_cast<std::size_t>(j)].members, n);
            if (h.nodes[static_cast<std::size_t>(j)].members.size() >
                    h.nodes[static_cast<std::size_t>(i)].members.size() &&
                contains_all(big, h.nodes[static_cast<std::size_t>(i)].members)) {
                h.nodes[static_cast<std::size_t>(i)].parent = j;
                h.nodes[static_cast<std::size_t>(j)].children.push_back(i);
                break;
            }
        }
        require(h.nodes[static_cast<std::size_t>(i)].parent >= 0, Errc::not_four_connected,
                "critical cuts do not form a rooted laminar family");
    }

    for (int i = 0; i < h.size(); ++i) {
        HierarchyNode& node = h.nodes[static_cast<std::size_t>(i)];
        std::vector<char> in = mask_of(node.members, n);
        std::vector<int> owner(static_cast<std::size_t>(n), -1);
        for (int c : node.children)
            for (int v : h.nodes[static_cast<std::size_t>(c)].members)
                owner[static_cast<std::size_t>(v)] = c;
        for (const auto& e : g.edges()) {
            bool iu = in[static_cast<std::size_t>(e.u)], iv = in[static_cast<std::size_t>(e.v)];
            if (iu != iv) {
                node.boundary.push_back(e.id);
            } else if (iu && !node.is_singleton() &&
                       owner[static_cast<std::size_t>(e.u)] != owner[static_cast<std::size_t>(e.v)]) {
                node.internal.push_back(e.id);
            }
        }
        require(node.boundary.size() == 4, Errc::not_four_connected, "hierarchy node not tight");
    }
    for (int i = 0; i < h.size(); ++i) classify_node(g, h, i);
    return h;
}

CycleCutReport verify_cycle_cut_instance(const Hierarchy& h) {
    CycleCutReport report;
    for (int i = 0; i < h.size(); ++i) {
        if (h.node(i).kind == CutKind::degree_cut) {
            report.ok = false;
            report.offenders.push_back(i);
        }
    }
    return report;
}

std::string hierarchy_to_dot(const Hierarchy& h) {
    std::ostringstream os;
    os << "digraph hierarchy {\n  rankdir=TB;\n  node [style=filled];\n";
    for (int i = 0; i < h.size(); ++i) {
        const HierarchyNode& node = h.node(i);
        os << "  n" << i << " [label=\"{";
        for (std::size_t j = 0; j < node.members.size(); ++j) {
            if (j) os << ",";
            os << node.members[j];
        }
        os << "}\", fillcolor=";
        switch (node.kind) {
        case CutKind::singleton: os << "gray90"; break;
        case CutKind::cycle_cut: os << "lightblue"; break;
        case CutKind::degree_cut: os << "salmon"; break;
        }
        os << "];\n";
    }
    for (int i = 0; i < h.size(); ++i)
        for (int c : h.node(i).children) os << "  n" << i << " -> n" << c << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace cyclecut
