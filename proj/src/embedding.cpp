#include "cyclecut/embedding.hpp"

#include <algorithm>
#include <map>

namespace cyclecut {

namespace {

/// Membership test against a hierarchy node.
bool node_contains(const Hierarchy& h, int node, int vertex) {
    const VertexSet& m = h.node(node).members;
    return std::binary_search(m.begin(), m.end(), vertex);
}

/// Endpoint of edge e lying inside node (the edge must touch it).
int endpoint_inside(const Hierarchy& h, const Multigraph& g, int node, int eid) {
    const MultiEdge& e = g.edge(eid);
    if (node_contains(h, node, e.u)) return e.u;
    require(node_contains(h, node, e.v), Errc::frame_mismatch,
            "edge does not touch the node");
    return e.v;
}

}  // namespace

ChainOrder order_children(const Hierarchy& h, const Multigraph& g, int node, Orientation orient) {
    const HierarchyNode& s = h.node(node);
    require(s.kind == CutKind::cycle_cut, Errc::not_cycle_cut,
            "chain order requested for a non-cycle cut");
    const int k = static_cast<int>(s.children.size());
    const int outside = k;

    // supernode of each vertex: index into children, or `outside`
    std::vector<int> label(static_cast<std::size_t>(g.vertex_count()), outside);
    for (int c = 0; c < k; ++c)
        for (int v : h.node(s.children[static_cast<std::size_t>(c)]).members)
            label[static_cast<std::size_t>(v)] = c;

    std::map<std::pair<int, int>, std::vector<int>> pair_edges;
    auto tally = [&](int eid) {
        const MultiEdge& e = g.edge(eid);
        int a = label[static_cast<std::size_t>(e.u)];
        int b = label[static_cast<std::size_t>(e.v)];
        pair_edges[{std::min(a, b), std::max(a, b)}].push_back(eid);
    };
    for (int eid : s.internal) tally(eid);
    for (int eid : s.boundary) tally(eid);
    std::vector<std::vector<int>> neighbors(static_cast<std::size_t>(k) + 1);
    for (const auto& [pr, edges] : pair_edges) {
        require(edges.size() == 2, Errc::not_cycle_cut, "contracted pair is not doubled");
        neighbors[static_cast<std::size_t>(pr.first)].push_back(pr.second);
        neighbors[static_cast<std::size_t>(pr.second)].push_back(pr.first);
    }

    // cut the contracted cycle open at the outside supernode; the chain's
    // first member is the end child holding the smallest boundary edge id
    int min_eid = *std::min_element(s.boundary.begin(), s.boundary.end());
    int first = label[static_cast<std::size_t>(endpoint_inside(h, g, node, min_eid))];
    require(first != outside, Errc::frame_mismatch, "boundary edge not touching a child");
    if (orient == Orientation::reflected) {
        const auto& ends = neighbors[static_cast<std::size_t>(outside)];
        first = (ends[0] == first) ? ends[1] : ends[0];
    }

    ChainOrder order;
    int prev = outside, at = first;
    for (int step = 0; step < k; ++step) {
        order.chain.push_back(s.children[static_cast<std::size_t>(at)]);
        const auto& adj = neighbors[static_cast<std::size_t>(at)];
        int next = (adj[0] == prev) ? adj[1] : adj[0];
        prev = at;
        at = next;
    }
    require(at == outside, Errc::not_cycle_cut, "contracted graph is not a single cycle");
    for (int j = 0; j + 1 < k; ++j) {
        // recover the two connecting edges of the consecutive pair
        int ca = -1, cb = -1;
        for (int c = 0; c < k; ++c) {
            if (s.children[static_cast<std::size_t>(c)] == order.chain[static_cast<std::size_t>(j)]) ca = c;
            if (s.children[static_cast<std::size_t>(c)] == order.chain[static_cast<std::size_t>(j + 1)]) cb = c;
        }
        const auto& edges = pair_edges.at({std::min(ca, cb), std::max(ca, cb)});
        order.pair_edges.push_back({edges[0], edges[1]});
    }
    return order;
}

const Frame& FrameSet::frame(int node) const {
    int idx = frame_index[static_cast<std::size_t>(node)];
    require(idx >= 0, Errc::not_applicable,
            "node " + std::to_string(node) + " is a singleton and has no frame");
    return frame_list[static_cast<std::size_t>(idx)];
}

namespace {

struct FrameBuilder {
    const Hierarchy& h;
    const Multigraph& g;
    Orientation orient;
    FrameSet& fs;
    /// δ^L of each non-top node, set while processing its parent.
    std::vector<std::array<int, 2>> delta_left_of;

    /// Which end of a composite node's chain edge `eid` attaches into:
    /// 0 = front end child, 1 = back end child.
    int end_of(const Frame& frame, int node, int eid) const {
        int inside = endpoint_inside(h, g, node, eid);
        if (node_contains(h, frame.chain.front(), inside)) return 0;
        require(node_contains(h, frame.chain.back(), inside), Errc::frame_mismatch,
                "boundary edge attaches to an interior child");
        return 1;
    }

    void build(int node) {
        const HierarchyNode& s = h.node(node);
        ChainOrder order = order_children(h, g, node, orient);
        Frame frame;
        frame.node = node;
        frame.chain = order.chain;
        const int k = frame.k();
        const bool is_top = (node == h.top());

        // boundary edges grouped by the end child they attach to
        std::array<std::vector<int>, 2> end_boundary;
        for (int eid : s.boundary) {
            int inside = endpoint_inside(h, g, node, eid);
            if (node_contains(h, frame.chain.front(), inside))
                end_boundary[0].push_back(eid);
            else {
                require(node_contains(h, frame.chain.back(), inside), Errc::frame_mismatch,
                        "boundary edge attaches to an interior child");
                end_boundary[1].push_back(eid);
            }
        }
        require(end_boundary[0].size() == 2 && end_boundary[1].size() == 2, Errc::frame_mismatch,
                "boundary edges must split two per chain end");

        auto in_delta_left = [&](int eid) {
            const auto& dl = delta_left_of[static_cast<std::size_t>(node)];
            return eid == dl[0] || eid == dl[1];
        };
        if (is_top) {
            // arbitrary-but-deterministic choice; δ^L is fixed afterwards so
            // the top cut always reads straight
            frame.ul = std::min(end_boundary[0][0], end_boundary[0][1]);
        } else {
            frame.ul = in_delta_left(end_boundary[0][0]) ? end_boundary[0][0] : end_boundary[0][1];
            require(in_delta_left(frame.ul) && !in_delta_left(end_boundary[0][0] == frame.ul
                                                                  ? end_boundary[0][1]
                                                                  : end_boundary[0][0]),
                    Errc::frame_mismatch, "delta^L must hold exactly one edge per chain end");
        }
        frame.dl = (end_boundary[0][0] == frame.ul) ? end_boundary[0][1] : end_boundary[0][0];

        // orientation sweep: propagate "top" through composite children so the
        // consecutive pair drawings do not cross; singletons reset the choice
        std::vector<PairEdges> pairs;
        int top_end = -1;  // current composite child's top end, -1 after a singleton
        auto child_is_composite = [&](int idx) {
            return !h.node(frame.chain[static_cast<std::size_t>(idx)]).is_singleton();
        };
        // chains of composite children are already known (children are built
        // before the parent needs their end partition? no: parents first) —
        // the end partition only needs order_children, computed on demand
        std::vector<ChainOrder> child_chains(static_cast<std::size_t>(k));
        std::vector<char> child_chain_ready(static_cast<std::size_t>(k), 0);
        auto child_end_of = [&](int idx, int eid) {
            int child = frame.chain[static_cast<std::size_t>(idx)];
            if (!child_chain_ready[static_cast<std::size_t>(idx)]) {
                child_chains[static_cast<std::size_t>(idx)] = order_children(h, g, child, orient);
                child_chain_ready[static_cast<std::size_t>(idx)] = 1;
            }
            const auto& chain = child_chains[static_cast<std::size_t>(idx)].chain;
            int inside = endpoint_inside(h, g, child, eid);
            if (node_contains(h, chain.front(), inside)) return 0;
            require(node_contains(h, chain.back(), inside), Errc::frame_mismatch,
                    "edge attaches to an interior grandchild");
            return 1;
        };

        if (child_is_composite(0)) top_end = child_end_of(0, frame.ul);
        for (int j = 0; j + 1 < k; ++j) {
            auto [e0, e1] = order.pair_edges[static_cast<std::size_t>(j)];
            PairEdges pe;
            if (child_is_composite(j)) {
                require(top_end >= 0, Errc::frame_mismatch, "lost orientation at composite child");
                int end0 = child_end_of(j, e0);
                int end1 = child_end_of(j, e1);
                require(end0 != end1, Errc::frame_mismatch,
                        "pair edges must attach at opposite ends of a composite child");
                pe = (end0 == top_end) ? PairEdges{e0, e1} : PairEdges{e1, e0};
            } else {
                pe = {std::min(e0, e1), std::max(e0, e1)};
            }
            if (child_is_composite(j + 1)) top_end = child_end_of(j + 1, pe.top);
            pairs.push_back(pe);
        }
        frame.pairs = pairs;

        if (child_is_composite(k - 1)) {
            int e0 = end_boundary[1][0], e1 = end_boundary[1][1];
            int end0 = child_end_of(k - 1, e0);
            int end1 = child_end_of(k - 1, e1);
            require(end0 != end1, Errc::frame_mismatch,
                    "boundary edges must attach at opposite ends of the last child");
            frame.ur = (end0 == top_end) ? e0 : e1;
        } else {
            frame.ur = std::min(end_boundary[1][0], end_boundary[1][1]);
        }
        frame.dr = (end_boundary[1][0] == frame.ur) ? end_boundary[1][1] : end_boundary[1][0];

        if (is_top) {
            frame.delta_left = {frame.ul, frame.ur};
        } else {
            frame.delta_left = delta_left_of[static_cast<std::size_t>(node)];
        }
        // δ^L holds UL plus exactly one of UR/DR; UR there means straight
        bool left_has_ur = frame.delta_left[0] == frame.ur || frame.delta_left[1] == frame.ur;
        bool left_has_dr = frame.delta_left[0] == frame.dr || frame.delta_left[1] == frame.dr;
        require(left_has_ur != left_has_dr, Errc::frame_mismatch,
                "delta^L must contain exactly one right-end edge");
        frame.twist = left_has_ur ? Twist::straight : Twist::twisted;
        frame.delta_right = {frame.dl, left_has_ur ? frame.dr : frame.ur};

        fs.role_edges[static_cast<std::size_t>(node)] = frame.roles();
        fs.twist_flags[static_cast<std::size_t>(node)] = frame.twist;

        // hand each child its δ^L and position-frame; recurse into composites
        for (int i = 0; i < k; ++i) {
            int child = frame.chain[static_cast<std::size_t>(i)];
            PairEdges left = (i == 0) ? PairEdges{frame.ul, frame.dl}
                                      : frame.pairs[static_cast<std::size_t>(i - 1)];
            PairEdges right = (i == k - 1) ? PairEdges{frame.ur, frame.dr}
                                           : frame.pairs[static_cast<std::size_t>(i)];
            if (h.node(child).is_singleton()) {
                // drawn as a point: own-frame roles follow the positions, with
                // the first-end-at-top convention; singletons read straight
                fs.role_edges[static_cast<std::size_t>(child)] = {left.top, right.top, left.bottom,
                                                              right.bottom};
                fs.twist_flags[static_cast<std::size_t>(child)] = Twist::straight;
            } else {
                delta_left_of[static_cast<std::size_t>(child)] = {left.top, left.bottom};
            }
        }

        fs.frame_index[static_cast<std::size_t>(node)] = static_cast<int>(fs.frame_list.size());
        fs.frame_list.push_back(std::move(frame));

        for (int child : fs.frame_list.back().chain)
            if (!h.node(child).is_singleton()) build(child);
    }
};

}  // namespace

FrameSet build_frames(const Hierarchy& h, const Multigraph& g, Orientation orient) {
    CycleCutReport report = verify_cycle_cut_instance(h);
    require(report.ok, Errc::degree_cut_present,
            std::to_string(report.offenders.size()) + " degree cut(s) in the hierarchy");
    FrameSet fs;
    fs.role_edges.assign(static_cast<std::size_t>(h.size()), {-1, -1, -1, -1});
    fs.twist_flags.assign(static_cast<std::size_t>(h.size()), Twist::straight);
    fs.frame_index.assign(static_cast<std::size_t>(h.size()), -1);
    FrameBuilder builder{h, g, orient, fs,
                         std::vector<std::array<int, 2>>(static_cast<std::size_t>(h.size()),
                                                         std::array<int, 2>{-1, -1})};
    builder.build(h.top());
    return fs;
}

}  // namespace cyclecut
