#include <doctest.h>

#include <stdexcept>

#include "manet/graph.hpp"
#include "manet/rng.hpp"

using namespace manet;

TEST_CASE("build_graph links exactly at the communication range") {
    // 149.9 m apart with 150 m range: linked.
    Graph close = build_graph({{1, {0, 0}}, {2, {149.9, 0}}}, 150.0,
                              CostMode::Hop);
    CHECK(close.edge_count() == 1);
    CHECK(close.neighbors(1).size() == 1);
    CHECK(close.neighbors(1)[0].to == 2);
    CHECK(close.neighbors(1)[0].cost == 1.0);

    // 150.1 m apart: no link.
    Graph far = build_graph({{1, {0, 0}}, {2, {150.1, 0}}}, 150.0,
                            CostMode::Hop);
    CHECK(far.edge_count() == 0);

    // Exactly 150 m: boundary is inclusive.
    Graph boundary = build_graph({{1, {0, 0}}, {2, {150.0, 0}}}, 150.0,
                                 CostMode::Hop);
    CHECK(boundary.edge_count() == 1);
}

TEST_CASE("build_graph single node") {
    Graph g = build_graph({{1, {10, 10}}}, 150.0, CostMode::Hop);
    CHECK(g.node_count() == 1);
    CHECK(g.neighbors(1).empty());
}

TEST_CASE("build_graph euclidean costs carry the link distance") {
    Graph g = build_graph({{1, {0, 0}}, {2, {30, 40}}}, 150.0,
                          CostMode::Euclidean);
    REQUIRE(g.neighbors(1).size() == 1);
    CHECK(g.neighbors(1)[0].cost == doctest::Approx(50.0));
    // symmetric cost
    CHECK(g.neighbors(2)[0].cost == doctest::Approx(50.0));
}

TEST_CASE("build_graph rejects duplicate ids but allows duplicate positions") {
    CHECK_THROWS_AS((
        build_graph({{1, {0, 0}}, {1, {1, 1}}}, 150.0, CostMode::Hop)),
        std::invalid_argument);
    // co-located nodes are legal and linked at distance zero
    Graph g = build_graph({{1, {5, 5}}, {2, {5, 5}}}, 150.0,
                          CostMode::Euclidean);
    CHECK(g.edge_count() == 1);
    CHECK(g.neighbors(1)[0].cost == 0.0);
}

TEST_CASE("build_graph rejects empty input and bad ranges") {
    CHECK_THROWS_AS((build_graph({}, 150.0, CostMode::Hop)),
                    std::invalid_argument);
    CHECK_THROWS_AS((build_graph({{1, {0, 0}}}, 0.0, CostMode::Hop)),
                    std::invalid_argument);
    CHECK_THROWS_AS((build_graph({{2, {0, 0}}}, 150.0, CostMode::Hop)),
                    std::invalid_argument);  // id outside 1..n
}

TEST_CASE("random geometric graphs are symmetric with sorted adjacency") {
    RngStream rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = rng.uniform_int(2, 20);
        std::vector<NodePlacement> placements;
        for (NodeId id = 1; id <= n; ++id) {
            placements.push_back(
                {id, {rng.uniform(0, 500), rng.uniform(0, 550)}});
        }
        Graph g = build_graph(placements, 150.0, CostMode::Euclidean);
        for (NodeId u = 1; u <= n; ++u) {
            NodeId last = 0;
            for (const auto& e : g.neighbors(u)) {
                CHECK(e.to > last);  // strictly ascending, no self loops
                last = e.to;
                bool mirrored = false;
                for (const auto& back : g.neighbors(e.to)) {
                    if (back.to == u) {
                        mirrored = true;
                        CHECK(back.cost == e.cost);
                    }
                }
                CHECK(mirrored);
                CHECK(e.cost >= 0.0);
            }
        }
    }
}
