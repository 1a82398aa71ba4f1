#include <doctest.h>

#include <stdexcept>

#include "manet/inesh.hpp"
#include "manet/rng.hpp"

using namespace manet;

namespace {

// Shared random-instance generator for the oracle equivalence corpus. Edge
// costs are small dyadic rationals so path sums are exact in binary floating
// point and cost comparisons can be ==.
struct Instance {
    Graph graph{0};
    TrustTable table;
    double threshold = 0.5;
};

Instance random_instance(RngStream& rng, int max_nodes) {
    Instance inst;
    const int n = rng.uniform_int(3, max_nodes);
    const double density = rng.uniform(0.2, 0.8);
    Graph g(n);
    for (NodeId u = 1; u <= n; ++u) {
        for (NodeId w = u + 1; w <= n; ++w) {
            if (rng.bernoulli(density)) {
                const double cost =
                    rng.bernoulli(0.5) ? 1.0 : 0.25 * rng.uniform_int(1, 16);
                g.add_edge(u, w, cost);
            }
        }
    }
    inst.graph = g;
    for (NodeId v = 2; v <= n; ++v) {
        if (rng.bernoulli(0.8)) {
            inst.table.set(1, v, rng.uniform01());
        }
        if (rng.bernoulli(0.5)) {
            inst.table.add_observation(
                1, v,
                {rng.bernoulli(0.5) ? ObservationKind::Negative
                                    : ObservationKind::Positive,
                 0.0});
        }
    }
    const double thresholds[] = {0.0, 0.3, 0.5, 0.8, 1.0};
    inst.threshold = thresholds[rng.uniform_int(0, 4)];
    return inst;
}

}  // namespace

TEST_CASE("oracle on a unique-path chain") {
    Graph g(3);
    g.add_edge(1, 2, 1.0);
    g.add_edge(2, 3, 1.0);
    TrustTable table;
    for (NodeId v = 2; v <= 3; ++v) {
        table.set(1, v, 1.0);
    }
    PathResult r = oracle_search(g, table, 1, 3, 0.5);
    CHECK(r.path == std::vector<NodeId>{1, 2, 3});
    CHECK(r.total_cost == 2.0);
}

TEST_CASE("oracle picks the direct edge in K4") {
    Graph g(4);
    for (NodeId u = 1; u <= 4; ++u) {
        for (NodeId w = u + 1; w <= 4; ++w) {
            g.add_edge(u, w, 1.0);
        }
    }
    TrustTable table;
    for (NodeId v = 2; v <= 4; ++v) {
        table.set(1, v, 1.0);
    }
    PathResult r = oracle_search(g, table, 1, 4, 0.5);
    CHECK(r.total_cost == 1.0);
    CHECK(r.path == std::vector<NodeId>{1, 4});
}

TEST_CASE("oracle refuses graphs above the enumeration bound") {
    Graph g(kOracleNodeLimit + 1);
    TrustTable table;
    CHECK_THROWS_AS((oracle_search(g, table, 1, 2, 0.5)),
                    std::invalid_argument);
}

TEST_CASE("oracle honors the trust filter on the diamond") {
    Graph g(4);
    g.add_edge(1, 2, 1.0);
    g.add_edge(1, 3, 1.0);
    g.add_edge(2, 4, 1.0);
    g.add_edge(3, 4, 1.0);
    TrustTable table;
    table.set(1, 3, 0.2);
    table.add_observation(1, 3, {ObservationKind::Negative, 1.0});
    PathResult r = oracle_search(g, table, 1, 4, 0.5);
    CHECK(r.path == std::vector<NodeId>{1, 2, 4});
    CHECK(r.total_cost == 2.0);
    CHECK(r.excluded == std::vector<NodeId>{3});
}

TEST_CASE("search agrees with the oracle on random instances") {
    RngStream rng(101);
    int reachable = 0;
    for (int trial = 0; trial < 200; ++trial) {
        Instance inst = random_instance(rng, 10);
        const NodeId dest = inst.graph.node_count();
        PathResult fast = inesh_search(inst.graph, inst.table, 1, dest,
                                       inst.threshold);
        PathResult truth = oracle_search(inst.graph, inst.table, 1, dest,
                                         inst.threshold);
        CHECK(fast.total_cost == truth.total_cost);
        CHECK(fast.excluded == truth.excluded);
        if (fast.reachable()) {
            ++reachable;
            // both paths must cost what they claim
            double sum = 0.0;
            for (std::size_t i = 1; i < fast.path.size(); ++i) {
                for (const auto& e : inst.graph.neighbors(fast.path[i - 1])) {
                    if (e.to == fast.path[i]) {
                        sum += e.cost;
                        break;
                    }
                }
            }
            CHECK(sum == fast.total_cost);
        }
    }
    CHECK(reachable > 50);  // the corpus must actually exercise real paths
}
