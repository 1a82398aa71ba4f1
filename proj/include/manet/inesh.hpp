#ifndef MANET_INESH_HPP
#define MANET_INESH_HPP

#include <string>
#include <vector>

#include "manet/graph.hpp"
#include "manet/trust.hpp"

namespace manet {

enum class FilterDecision { Keep, Exclude };

// A neighbor candidate is excluded when all three hold from the observer's
// point of view: it is less trusted than the best alternative next hop, the
// most recent first-hand observation of it is negative, and its trust is
// below the threshold. Anything else keeps the candidate. Pairs without a
// stored score read as the table's initial trust; a candidate that was never
// observed cannot be excluded.
FilterDecision trust_filter(NodeId candidate, NodeId best_alternative,
                            const TrustTable& table, NodeId observer,
                            double threshold);

struct PathResult {
    std::vector<NodeId> path;     // source..dest, empty when unreachable
    double total_cost = kInfCost;
    std::vector<double> dist;     // tentative distance per node, index 0 unused
    std::vector<NodeId> excluded; // nodes removed outright by the trust filter

    bool reachable() const { return !path.empty(); }
};

// Whether the directed hop v -> w survives the trust filter. The observer
// compares w against the most trusted other neighbor of v; with no other
// neighbor there is nothing to compare against and the hop is kept. The
// search endpoints are never filtered.
bool hop_admissible(const Graph& graph, const TrustTable& table,
                    NodeId observer, double threshold, NodeId v, NodeId w,
                    NodeId source, NodeId dest);

enum class RewardPolicy {
    OnDelivery,   // caller rewards after confirmed delivery (default)
    OnSelection,  // every node selected into the path is rewarded now
};

// Trust-filtered min-cost search. Distances start at zero for the source and
// infinity elsewhere; a priority queue ordered by (distance, node id) settles
// nodes, and every neighbor is screened by trust_filter before its edge is
// relaxed. Nodes whose every incoming hop fails the filter are reported in
// `excluded`. An unreachable destination yields an empty path with infinite
// cost. The observer for all filtering is the searching node, i.e. `source`.
PathResult inesh_search(const Graph& graph, TrustTable& table, NodeId source,
                        NodeId dest, double threshold,
                        RewardPolicy reward = RewardPolicy::OnDelivery,
                        double sim_time = 0.0);

// Read-only variant for callers that never reward at selection time.
PathResult inesh_search(const Graph& graph, const TrustTable& table,
                        NodeId source, NodeId dest, double threshold);

// Brute-force ground truth: enumerates every simple path from source to dest,
// discards paths using a hop the trust filter rejects, and returns the
// cheapest survivor (ties broken by lexicographic path order). Refuses graphs
// with more than kOracleNodeLimit nodes.
constexpr int kOracleNodeLimit = 14;
PathResult oracle_search(const Graph& graph, const TrustTable& table,
                         NodeId source, NodeId dest, double threshold);

// Line-oriented debug form, e.g. "path=1,2,4 cost=2 excluded=3".
std::string format_path_result(const PathResult& result);

}  // namespace manet

#endif
