#ifndef CYCLECUT_INSTANCE_HPP
#define CYCLECUT_INSTANCE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclecut/multigraph.hpp"
#include "cyclecut/rational.hpp"

namespace cyclecut {

/// One support edge of a half-integral LP point: x is 1/2 (single) or 1 (doubled).
struct SupportEdge {
    int u;
    int v;
    bool doubled;
    Rational cost;

    Rational x() const { return doubled ? Rational(1) : Rational(1, 2); }
};

/// A validated half-integral Subtour-LP solution.
struct Instance {
    int n = 0;
    std::optional<int> root;
    std::vector<SupportEdge> edges;

    int root_or_default() const { return root.value_or(0); }
};

/// Support multigraph of an instance plus the support-edge <-> copy mapping.
struct SupportGraph {
    Multigraph graph;
    /// Per support edge: its copy ids ({id,-1} for x=1/2 edges).
    std::vector<std::array<int, 2>> copies;
    /// Per copy id: index of the originating support edge.
    std::vector<int> support_of;
};

/// Checks all instance invariants: n >= 4, endpoints sane, no repeated support
/// pairs, per-vertex LP degree exactly 2, and support min cut exactly 4.
void validate_instance(const Instance& inst);

/// Parses and validates the JSON instance format. Unknown fields are rejected.
Instance load_instance(const std::string& text);

/// Canonical JSON encoding (round-trips through load_instance).
std::string save_instance(const Instance& inst);

/// 4-regular support multigraph: one copy per x=1/2 edge, two per x=1 edge.
SupportGraph support_multigraph(const Instance& inst);

/// LP objective Σ c_e x_e.
Rational lp_value(const Instance& inst);

/// The canonical integrality-gap family: two unit-cost half-integral triangles
/// joined by three doubled paths with k internal vertices each. n = 6 + 3k.
/// When `costs` is given it must list one cost per support edge in generator
/// order (u-triangle, w-triangle, then the three paths).
Instance gen_figure1(int k, const std::vector<Rational>& costs = {});

/// Recursive chain blueprint; a node with no children is a single vertex.
struct Blueprint {
    std::vector<Blueprint> children;

    bool is_leaf() const { return children.empty(); }
    int leaf_count() const;

    static Blueprint leaf() { return {}; }
    static Blueprint chain(std::vector<Blueprint> kids) { return {std::move(kids)}; }
};

/// Every internal node must have at least 2 children; the root must be a chain
/// with at least 3 leaves in total (smaller shapes collapse below n = 4).
void validate_blueprint(const Blueprint& b);

/// Realizes a blueprint as a 4-regular cycle-cut instance: chains joined by
/// edge pairs whose two edges land at opposite ends of each composite child,
/// plus a fresh root vertex picking up the outermost four boundary edges.
/// Costs are unit, or small positive rationals drawn from the seeded stream.
Instance gen_random_cyclecut(const Blueprint& blueprint, std::uint64_t seed,
                             bool unit_costs = false);

/// Seeded random blueprint with the given number of leaves (>= 3).
Blueprint random_blueprint(std::uint64_t seed, int leaves);

/// Exact TSP value over the shortest-path completion of the support graph,
/// by bitmask dynamic programming. Requires n <= 18.
Rational held_karp_opt(const Instance& inst);

/// Same, over an explicit symmetric cost matrix.
Rational held_karp_opt(const Instance& inst, const std::vector<std::vector<Rational>>& metric);

}  // namespace cyclecut

#endif
