#ifndef CYCLECUT_MULTIGRAPH_HPP
#define CYCLECUT_MULTIGRAPH_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "cyclecut/rational.hpp"

namespace cyclecut {

/// One parallel copy in the support multigraph. Copies of a doubled LP edge
/// carry distinct ids; the sampler doubles or drops individual copies.
struct MultiEdge {
    int id;
    int u;
    int v;
    Rational cost;
};

/// Per-edge-id multiplicity in {0,1,2}; the sampled sub-multigraph.
using MultiplicityMap = std::vector<std::uint8_t>;

/// Undirected multigraph with stable edge identities. Immutable after
/// construction; safe to share across threads.
class Multigraph {
public:
    Multigraph(int vertex_count, std::vector<MultiEdge> edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<MultiEdge>& edges() const { return edges_; }
    const MultiEdge& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }

    /// Incidences of v as (edge id, other endpoint), sorted by edge id.
    const std::vector<std::pair<int, int>>& incident(int v) const {
        return adj_[static_cast<std::size_t>(v)];
    }

    int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }

    bool is_connected() const;

    /// Total cost of all copies, Σ_e c_e over edge ids.
    Rational total_cost() const;

private:
    int n_;
    std::vector<MultiEdge> edges_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
};

/// Validating constructor from raw (u,v,cost) triples; ids follow input order.
Multigraph build_multigraph(int vertex_count,
                            const std::vector<std::tuple<int, int, Rational>>& edge_list);

/// True iff every vertex is reachable from vertex 0 through positive-multiplicity
/// edges and has degree at least 2 under m.
bool is_connected_spanning(const Multigraph& g, const MultiplicityMap& m);

/// Degree of v in the sub-multigraph selected by m.
int degree_under(const Multigraph& g, const MultiplicityMap& m, int v);

/// Closed walk traversing edge e exactly m(e) times (Hierholzer). Ties broken
/// toward the lowest available edge id, so output is deterministic.
/// Throws OddDegree / Disconnected when the preconditions fail.
std::vector<int> euler_circuit(const Multigraph& g, const MultiplicityMap& m);

/// Value of the global minimum cut counting edge multiplicities (Stoer-Wagner).
int global_min_cut_value(const Multigraph& g);

/// Max-flow between s and t with unit capacity per parallel copy.
/// Augmentation stops early once the flow exceeds `cap`, in which case the
/// returned value is some number > cap (callers only care about <= cap).
struct MaxFlow {
    int value;
    // residual[u][v] > 0 iff u->v has residual capacity
    std::vector<std::vector<int>> residual;
};
MaxFlow max_flow(const Multigraph& g, int s, int t, int cap);

}  // namespace cyclecut

#endif
