#include "manet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace manet {

bool within_range(const Vec2& a, const Vec2& b, double range) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy <= range * range;
}

double euclidean_distance(const Vec2& a, const Vec2& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

Graph::Graph(int node_count) : n_(node_count), adj_(node_count + 1) {
    if (node_count < 0) {
        throw std::invalid_argument("graph: negative node count");
    }
}

void Graph::add_edge(NodeId u, NodeId w, double cost) {
    if (!has_node(u) || !has_node(w)) {
        throw std::invalid_argument("graph: edge endpoint out of range");
    }
    if (u == w) {
        throw std::invalid_argument("graph: self loop");
    }
    if (cost < 0.0) {
        throw std::invalid_argument("graph: negative edge cost");
    }
    adj_[u].push_back({w, cost});
    adj_[w].push_back({u, cost});
}

const std::vector<Graph::Edge>& Graph::neighbors(NodeId v) const {
    if (!has_node(v)) {
        throw std::invalid_argument("graph: unknown node " + std::to_string(v));
    }
    return adj_[v];
}

std::size_t Graph::edge_count() const {
    std::size_t directed = 0;
    for (int v = 1; v <= n_; ++v) {
        directed += adj_[v].size();
    }
    return directed / 2;
}

Graph build_graph(const std::vector<NodePlacement>& placements, double range,
                  CostMode cost_mode) {
    if (placements.empty()) {
        throw std::invalid_argument("build_graph: no nodes");
    }
    if (range <= 0.0) {
        throw std::invalid_argument("build_graph: range must be positive");
    }
    const int n = static_cast<int>(placements.size());
    std::vector<Vec2> pos(static_cast<std::size_t>(n) + 1);
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (const auto& p : placements) {
        if (p.id < 1 || p.id > n) {
            throw std::invalid_argument("build_graph: node id " +
                                        std::to_string(p.id) +
                                        " outside 1.." + std::to_string(n));
        }
        if (seen[p.id]) {
            throw std::invalid_argument("build_graph: duplicate node id " +
                                        std::to_string(p.id));
        }
        seen[p.id] = true;
        pos[p.id] = p.pos;
    }

    Graph g(n);
    for (NodeId u = 1; u <= n; ++u) {
        for (NodeId w = u + 1; w <= n; ++w) {
            if (!within_range(pos[u], pos[w], range)) {
                continue;
            }
            const double cost = cost_mode == CostMode::Hop
                                    ? 1.0
                                    : euclidean_distance(pos[u], pos[w]);
            g.add_edge(u, w, cost);
        }
    }
    return g;
}

}  // namespace manet
