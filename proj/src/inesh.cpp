#include "manet/inesh.hpp"

#include <algorithm>
#include <cstdio>
#include <queue>
#include <stdexcept>
#include <string>

namespace manet {

FilterDecision trust_filter(NodeId candidate, NodeId best_alternative,
                            const TrustTable& table, NodeId observer,
                            double threshold) {
    if (candidate == observer) {
        throw std::invalid_argument("trust_filter: candidate equals observer");
    }
    const double cand_trust = table.get(observer, candidate);
    const double alt_trust = table.get(observer, best_alternative);
    if (cand_trust >= alt_trust) {
        return FilterDecision::Keep;
    }
    const auto last = table.last_observation(observer, candidate);
    if (!last || last->kind != ObservationKind::Negative) {
        return FilterDecision::Keep;
    }
    if (cand_trust >= threshold) {
        return FilterDecision::Keep;
    }
    return FilterDecision::Exclude;
}

namespace {

// Most trusted neighbor of v other than w; ties go to the lower id. Returns 0
// when v has no other neighbor.
NodeId best_alternative_at(const Graph& graph, const TrustTable& table,
                           NodeId observer, NodeId v, NodeId w) {
    NodeId best = 0;
    double best_trust = -1.0;
    for (const auto& e : graph.neighbors(v)) {
        if (e.to == w) {
            continue;
        }
        const double t = table.get(observer, e.to);
        if (t > best_trust) {
            best = e.to;
            best_trust = t;
        }
    }
    return best;
}

// Nodes with no admissible incoming hop at all are the ones the filter has
// removed outright; a node rejected from one direction but reachable from
// another is merely restricted, not excluded.
std::vector<NodeId> fully_excluded_nodes(const Graph& graph,
                                         const TrustTable& table,
                                         NodeId observer, double threshold,
                                         NodeId source, NodeId dest) {
    std::vector<NodeId> excluded;
    for (NodeId w = 1; w <= graph.node_count(); ++w) {
        if (w == source || w == dest || graph.neighbors(w).empty()) {
            continue;
        }
        bool any_admissible = false;
        for (const auto& e : graph.neighbors(w)) {
            if (hop_admissible(graph, table, observer, threshold, e.to, w,
                               source, dest)) {
                any_admissible = true;
                break;
            }
        }
        if (!any_admissible) {
            excluded.push_back(w);
        }
    }
    return excluded;
}

void require_node(const Graph& graph, NodeId v, const char* what) {
    if (!graph.has_node(v)) {
        throw std::invalid_argument(std::string("inesh: unknown ") + what +
                                    " node " + std::to_string(v));
    }
}

}  // namespace

bool hop_admissible(const Graph& graph, const TrustTable& table,
                    NodeId observer, double threshold, NodeId v, NodeId w,
                    NodeId source, NodeId dest) {
    if (w == dest || w == source) {
        return true;  // endpoints are never filtered out of their own path
    }
    const NodeId alt = best_alternative_at(graph, table, observer, v, w);
    if (alt == 0) {
        return true;  // sole neighbor, nothing to compare against
    }
    return trust_filter(w, alt, table, observer, threshold) ==
           FilterDecision::Keep;
}

namespace {

PathResult dijkstra_core(const Graph& graph, const TrustTable& table,
                         NodeId source, NodeId dest, double threshold);

}  // namespace

PathResult inesh_search(const Graph& graph, TrustTable& table, NodeId source,
                        NodeId dest, double threshold, RewardPolicy reward,
                        double sim_time) {
    PathResult result = dijkstra_core(graph, table, source, dest, threshold);
    if (reward == RewardPolicy::OnSelection) {
        for (std::size_t i = 1; i < result.path.size(); ++i) {
            table.update(source, result.path[i], TrustOutcome::Reward,
                         sim_time);
        }
    }
    return result;
}

PathResult inesh_search(const Graph& graph, const TrustTable& table,
                        NodeId source, NodeId dest, double threshold) {
    return dijkstra_core(graph, table, source, dest, threshold);
}

namespace {

PathResult dijkstra_core(const Graph& graph, const TrustTable& table,
                         NodeId source, NodeId dest, double threshold) {
    require_node(graph, source, "source");
    require_node(graph, dest, "dest");

    const int n = graph.node_count();
    PathResult result;
    result.dist.assign(static_cast<std::size_t>(n) + 1, kInfCost);
    result.dist[source] = 0.0;
    result.excluded =
        fully_excluded_nodes(graph, table, source, threshold, source, dest);

    if (source == dest) {
        result.path = {source};
        result.total_cost = 0.0;
        return result;
    }

    std::vector<NodeId> prev(static_cast<std::size_t>(n) + 1, 0);
    std::vector<bool> settled(static_cast<std::size_t>(n) + 1, false);

    using QueueItem = std::pair<double, NodeId>;  // (distance, node), min first
    std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>> queue;
    queue.push({0.0, source});

    while (!queue.empty()) {
        const auto [d, v] = queue.top();
        queue.pop();
        if (settled[v] || d > result.dist[v]) {
            continue;
        }
        settled[v] = true;
        if (v == dest) {
            break;
        }
        for (const auto& e : graph.neighbors(v)) {
            const NodeId w = e.to;
            if (settled[w]) {
                continue;
            }
            if (!hop_admissible(graph, table, source, threshold, v, w, source,
                                dest)) {
                continue;
            }
            const double nd = result.dist[v] + e.cost;
            if (nd < result.dist[w] ||
                (nd == result.dist[w] && w != source && prev[w] > v)) {
                result.dist[w] = nd;
                prev[w] = v;
                queue.push({nd, w});
            }
        }
    }

    if (result.dist[dest] == kInfCost) {
        return result;  // unreachable: empty path, infinite cost
    }

    for (NodeId v = dest; v != 0; v = prev[v]) {
        result.path.push_back(v);
    }
    std::reverse(result.path.begin(), result.path.end());
    result.total_cost = result.dist[dest];
    return result;
}

struct OracleState {
    const Graph* graph = nullptr;
    const TrustTable* table = nullptr;
    NodeId source = 0;
    NodeId dest = 0;
    double threshold = 0.0;
    std::vector<bool> on_path;
    std::vector<NodeId> current;
    std::vector<NodeId> best_path;
    double best_cost = kInfCost;
};

void oracle_dfs(OracleState& s, NodeId v, double cost) {
    if (v == s.dest) {
        if (cost < s.best_cost ||
            (cost == s.best_cost && s.current < s.best_path)) {
            s.best_cost = cost;
            s.best_path = s.current;
        }
        return;
    }
    for (const auto& e : s.graph->neighbors(v)) {
        const NodeId w = e.to;
        if (s.on_path[w]) {
            continue;
        }
        const double next_cost = cost + e.cost;
        if (next_cost > s.best_cost) {
            continue;  // safe prune: extending never lowers the cost
        }
        if (!hop_admissible(*s.graph, *s.table, s.source, s.threshold, v, w,
                            s.source, s.dest)) {
            continue;
        }
        s.on_path[w] = true;
        s.current.push_back(w);
        oracle_dfs(s, w, next_cost);
        s.current.pop_back();
        s.on_path[w] = false;
    }
}

}  // namespace

PathResult oracle_search(const Graph& graph, const TrustTable& table,
                         NodeId source, NodeId dest, double threshold) {
    require_node(graph, source, "source");
    require_node(graph, dest, "dest");
    if (graph.node_count() > kOracleNodeLimit) {
        throw std::invalid_argument(
            "oracle_search: refusing graph with more than " +
            std::to_string(kOracleNodeLimit) + " nodes");
    }

    const int n = graph.node_count();
    PathResult result;
    result.dist.assign(static_cast<std::size_t>(n) + 1, kInfCost);
    result.dist[source] = 0.0;
    result.excluded =
        fully_excluded_nodes(graph, table, source, threshold, source, dest);

    if (source == dest) {
        result.path = {source};
        result.total_cost = 0.0;
        return result;
    }

    OracleState s;
    s.graph = &graph;
    s.table = &table;
    s.source = source;
    s.dest = dest;
    s.threshold = threshold;
    s.on_path.assign(static_cast<std::size_t>(n) + 1, false);
    s.on_path[source] = true;
    s.current = {source};
    oracle_dfs(s, source, 0.0);

    if (s.best_cost == kInfCost) {
        return result;
    }
    result.path = s.best_path;
    result.total_cost = s.best_cost;
    // Fill per-node distances along the chosen path so the dump is useful.
    double acc = 0.0;
    for (std::size_t i = 1; i < s.best_path.size(); ++i) {
        for (const auto& e : graph.neighbors(s.best_path[i - 1])) {
            if (e.to == s.best_path[i]) {
                acc += e.cost;
                break;
            }
        }
        result.dist[s.best_path[i]] = acc;
    }
    return result;
}

std::string format_double_trimmed(double v);

std::string format_double_trimmed(double v) {
    if (v == kInfCost) {
        return "inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    std::string s(buf);
    while (!s.empty() && s.back() == '0') {
        s.pop_back();
    }
    if (!s.empty() && s.back() == '.') {
        s.pop_back();
    }
    return s;
}

std::string format_path_result(const PathResult& result) {
    std::string out = "path=";
    for (std::size_t i = 0; i < result.path.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += std::to_string(result.path[i]);
    }
    out += " cost=";
    out += format_double_trimmed(result.total_cost);
    out += " excluded=";
    for (std::size_t i = 0; i < result.excluded.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += std::to_string(result.excluded[i]);
    }
    return out;
}

}  // namespace manet
