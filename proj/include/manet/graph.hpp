#ifndef MANET_GRAPH_HPP
#define MANET_GRAPH_HPP

#include <cstdint>
#include <limits>
#include <vector>

namespace manet {

// Node identifiers are 1-based indices; by convention node 1 is the source
// and node n the destination of the default traffic flow.
using NodeId = int;

constexpr double kInfCost = std::numeric_limits<double>::infinity();

enum class CostMode {
    Hop,       // every edge costs 1
    Euclidean  // edge cost is the link distance in meters
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct NodePlacement {
    NodeId id = 0;
    Vec2 pos;
};

// Squared-distance link predicate shared by the graph builder and the radio
// model so both sides agree on the boundary (inclusive at exactly `range`).
bool within_range(const Vec2& a, const Vec2& b, double range);
double euclidean_distance(const Vec2& a, const Vec2& b);

// Undirected graph over nodes 1..n with per-edge costs.
class Graph {
  public:
    struct Edge {
        NodeId to = 0;
        double cost = 0.0;
    };

    Graph() = default;
    explicit Graph(int node_count);

    int node_count() const { return n_; }
    bool has_node(NodeId v) const { return v >= 1 && v <= n_; }

    // Inserts the symmetric pair of directed edges. Self loops and negative
    // costs are rejected.
    void add_edge(NodeId u, NodeId w, double cost);

    const std::vector<Edge>& neighbors(NodeId v) const;

    // Total number of undirected edges.
    std::size_t edge_count() const;

  private:
    int n_ = 0;
    std::vector<std::vector<Edge>> adj_;  // index 0 unused
};

// Builds the unit-disk connectivity graph: an edge exists iff the euclidean
// distance is at most `range` (inclusive). Placements must carry each id in
// 1..n exactly once; duplicate coordinates are fine, duplicate ids are not.
Graph build_graph(const std::vector<NodePlacement>& placements, double range,
                  CostMode cost_mode);

}  // namespace manet

#endif
