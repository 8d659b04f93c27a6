#ifndef CYCLECUT_EMBEDDING_HPP
#define CYCLECUT_EMBEDDING_HPP

#include <array>
#include <vector>

#include "cyclecut/cuts.hpp"
#include "cyclecut/multigraph.hpp"

namespace cyclecut {

/// The two connecting edges between consecutive chain members, labeled by
/// their vertical position in the caterpillar drawing.
struct PairEdges {
    int top;
    int bottom;
};

enum class Twist { straight, twisted };

/// Chain direction policy. Every theorem holds under either choice; the
/// reflected variant exists so tests can drive the whole pipeline both ways.
enum class Orientation { canonical, reflected };

/// Caterpillar frame of one cycle cut: ordered child chain, top/bottom labels
/// of each connecting pair, the four boundary roles, and the twist flag.
struct Frame {
    int node = -1;                 ///< hierarchy node id
    std::vector<int> chain;        ///< child node ids a_1..a_k
    std::vector<PairEdges> pairs;  ///< k-1 pairs, pairs[j] between chain[j] and chain[j+1]
    int ul = -1, dl = -1, ur = -1, dr = -1;  ///< boundary edge ids by role
    std::array<int, 2> delta_left{};         ///< δ^L(S)
    std::array<int, 2> delta_right{};        ///< δ^R(S)
    Twist twist = Twist::straight;

    int k() const { return static_cast<int>(chain.size()); }
    bool even() const { return k() % 2 == 0; }
    std::array<int, 4> roles() const { return {ul, dl, ur, dr}; }
};

/// Frames for all composite cuts plus boundary roles for every node.
/// Singleton roles follow the parent's drawing (left pair up-slot = UL); a
/// singleton is treated as straight.
struct FrameSet {
    std::vector<std::array<int, 4>> role_edges;  ///< per node: {UL, DL, UR, DR}
    std::vector<Twist> twist_flags;
    std::vector<int> frame_index;                ///< per node, -1 for singletons
    std::vector<Frame> frame_list;

    const Frame& frame(int node) const;  ///< throws NotApplicable for singletons
    bool has_frame(int node) const { return frame_index[static_cast<std::size_t>(node)] >= 0; }
    const std::array<int, 4>& roles(int node) const {
        return role_edges[static_cast<std::size_t>(node)];
    }
    Twist twist(int node) const { return twist_flags[static_cast<std::size_t>(node)]; }
    const std::vector<Frame>& frames() const { return frame_list; }
};

/// Chain order of a cycle cut's children: the contracted cycle cut open at the
/// complement. Throws NotCycleCut for degree cuts or singletons.
struct ChainOrder {
    std::vector<int> chain;
    std::vector<std::array<int, 2>> pair_edges;  ///< unlabeled connecting pairs
};
ChainOrder order_children(const Hierarchy& h, const Multigraph& g, int node,
                          Orientation orient = Orientation::canonical);

/// Computes every frame in one top-down pass (child frames need the parent
/// chain context). Requires an all-cycle-cut hierarchy.
FrameSet build_frames(const Hierarchy& h, const Multigraph& g,
                      Orientation orient = Orientation::canonical);

}  // namespace cyclecut

#endif
