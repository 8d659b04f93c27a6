#ifndef CYCLECUT_CUTS_HPP
#define CYCLECUT_CUTS_HPP

#include <string>
#include <vector>

#include "cyclecut/multigraph.hpp"

namespace cyclecut {

/// Sorted vertex list; collections of sets are kept sorted for determinism.
using VertexSet = std::vector<int>;

/// All tight vertex sets (|δ(S)| = 4) by exhaustive subset scan, both sides of
/// every cut included. Requires at most 16 vertices.
std::vector<VertexSet> brute_force_tight_sets(const Multigraph& g);

/// Same collection via per-pair max-flow and enumeration of all minimum s-t
/// cuts over the residual condensation. Requires min cut exactly 4.
std::vector<VertexSet> enumerate_tight_sets(const Multigraph& g);

/// True iff A \ B, B \ A, A ∩ B and V \ (A ∪ B) are all nonempty.
bool crosses(const VertexSet& a, const VertexSet& b, int n);

/// One representative per cut: the side not containing `base`, deduplicated.
std::vector<VertexSet> canonicalize_cuts(const std::vector<VertexSet>& sets, int n, int base);

enum class CutKind { singleton, cycle_cut, degree_cut };

struct HierarchyNode {
    VertexSet members;
    int parent = -1;               ///< node index, -1 for the maximal cut
    std::vector<int> children;     ///< node indices, canonical order
    std::vector<int> boundary;     ///< δ(S) edge ids
    std::vector<int> internal;     ///< E→(S): edges between two different children
    CutKind kind = CutKind::singleton;

    bool is_singleton() const { return members.size() == 1; }
};

/// Laminar hierarchy of critical tight cuts rooted below vertex r.
/// Nodes are sorted by decreasing size; node 0 is V \ {r}.
struct Hierarchy {
    int root_vertex = 0;
    std::vector<HierarchyNode> nodes;

    int top() const { return 0; }
    int size() const { return static_cast<int>(nodes.size()); }
    const HierarchyNode& node(int i) const { return nodes[static_cast<std::size_t>(i)]; }
};

/// Keeps exactly the tight sets avoiding r that no other tight set crosses,
/// linked by inclusion, with boundaries, E→ sets and cycle/degree classification.
Hierarchy build_hierarchy(const Multigraph& g, int r);

struct CycleCutReport {
    bool ok = true;
    std::vector<int> offenders;  ///< node indices of degree cuts
};

/// True iff every non-singleton node is a cycle cut.
CycleCutReport verify_cycle_cut_instance(const Hierarchy& h);

/// Graphviz rendering of the hierarchy, kind-colored.
std::string hierarchy_to_dot(const Hierarchy& h);

}  // namespace cyclecut

#endif
