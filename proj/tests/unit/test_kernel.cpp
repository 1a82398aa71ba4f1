#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "manet/event_queue.hpp"
#include "manet/mobility.hpp"
#include "manet/rng.hpp"

using namespace manet;

TEST_CASE("scheduler fires events in time order") {
    Scheduler sched;
    std::vector<int> order;
    sched.schedule(2.0, EventKind::TimerExpiry, 1, [&] { order.push_back(2); });
    sched.schedule(1.0, EventKind::TimerExpiry, 1, [&] { order.push_back(1); });

    auto first = sched.step();
    REQUIRE(first.has_value());
    CHECK(first->fire_at == 1.0);
    CHECK(sched.now() == 1.0);
    sched.step();
    CHECK(order == std::vector<int>{1, 2});
}

TEST_CASE("equal fire times dequeue in scheduling order") {
    Scheduler sched;
    std::vector<int> order;
    sched.schedule(1.0, EventKind::TimerExpiry, 7, [&] { order.push_back(7); });
    sched.schedule(1.0, EventKind::TimerExpiry, 9, [&] { order.push_back(9); });
    auto first = sched.step();
    REQUIRE(first.has_value());
    CHECK(first->node == 7);
    sched.step();
    CHECK(order == std::vector<int>{7, 9});
}

TEST_CASE("scheduling rules") {
    Scheduler sched;
    sched.schedule(3.0, EventKind::TimerExpiry, 1, [] {});
    sched.step();
    CHECK(sched.now() == 3.0);
    // zero-delay is legal
    sched.schedule(3.0, EventKind::TimerExpiry, 1, [] {});
    // the past is not
    CHECK_THROWS_AS((sched.schedule(2.0, EventKind::TimerExpiry, 1, [] {})),
                    std::logic_error);
}

TEST_CASE("empty queue returns the end marker") {
    Scheduler sched;
    CHECK(!sched.step().has_value());
}

TEST_CASE("run_until leaves later events in flight") {
    Scheduler sched;
    int fired = 0;
    sched.schedule(1.0, EventKind::TimerExpiry, 1, [&] { ++fired; });
    sched.schedule(5.0, EventKind::TimerExpiry, 1, [&] { ++fired; });
    sched.schedule(10.0, EventKind::TimerExpiry, 1, [&] { ++fired; });
    sched.run_until(10.0);  // horizon is exclusive
    CHECK(fired == 2);
    CHECK(sched.pending() == 1);
    CHECK(sched.now() == 10.0);
}

TEST_CASE("clock is monotone across steps") {
    Scheduler sched;
    RngStream rng(5);
    for (int i = 0; i < 200; ++i) {
        sched.schedule(rng.uniform(0.0, 100.0), EventKind::TimerExpiry, 1,
                       [] {});
    }
    double last = -1.0;
    while (auto fired = sched.step()) {
        CHECK(fired->fire_at >= last);
        last = fired->fire_at;
    }
}

TEST_CASE("waypoint advance moves along the unit vector") {
    MobilityModel model({500, 550}, 20.0, 2.0);
    MobileNode node;
    node.id = 1;
    node.position = {0, 0};
    node.waypoint = {30, 40};
    node.speed = 10.0;
    RngStream rng(1);
    model.advance(node, 0.0, 1.0, rng);
    CHECK(node.position.x == doctest::Approx(6.0));
    CHECK(node.position.y == doctest::Approx(8.0));
}

TEST_CASE("a node at its waypoint stays put through the pause") {
    MobilityModel model({500, 550}, 20.0, 2.0);
    MobileNode node;
    node.id = 1;
    node.position = {100, 100};
    node.waypoint = {100, 100};
    node.speed = 10.0;
    RngStream rng(2);
    model.advance(node, 0.0, 1.0, rng);  // arrival: pause begins
    CHECK(node.position.x == 100.0);
    CHECK(node.position.y == 100.0);
    const double pause_end = node.pause_until;
    if (pause_end > 1.0) {
        model.advance(node, 0.5, 0.5, rng);
        CHECK(node.position.x == 100.0);
        CHECK(node.position.y == 100.0);
    }
}

TEST_CASE("mobility keeps nodes inside the terrain at capped speed") {
    const Terrain terrain{500, 550};
    MobilityModel model(terrain, 20.0, 2.0);
    RngStream rng(33);
    MobileNode node;
    node.id = 1;
    node.position = model.draw_position(rng);
    model.init_node(node, rng);

    const double dt = 0.5;
    double now = 0.0;
    for (int tick = 0; tick < 4000; ++tick) {
        const Vec2 before = node.position;
        model.advance(node, now, dt, rng);
        now += dt;
        CHECK(node.position.x >= 0.0);
        CHECK(node.position.x <= terrain.width);
        CHECK(node.position.y >= 0.0);
        CHECK(node.position.y <= terrain.height);
        const double moved = euclidean_distance(before, node.position);
        CHECK(moved <= 20.0 * dt + 1e-9);
    }
}

TEST_CASE("in_range boundary is inclusive and symmetric") {
    RadioModel radio;  // 150 m default
    MobileNode a, b;
    a.id = 1;
    b.id = 2;
    a.position = {0, 0};

    b.position = {150.0, 0};
    CHECK(in_range(a, b, radio));
    b.position = {150.0001, 0};
    CHECK(!in_range(a, b, radio));
    b.position = {0, 0};  // co-located
    CHECK(in_range(a, b, radio));

    RngStream rng(17);
    for (int i = 0; i < 500; ++i) {
        a.position = {rng.uniform(0, 500), rng.uniform(0, 550)};
        b.position = {rng.uniform(0, 500), rng.uniform(0, 550)};
        CHECK(in_range(a, b, radio) == in_range(b, a, radio));
    }
}

TEST_CASE("snapshot_graph mirrors the radio predicate") {
    RadioModel radio;
    std::vector<MobileNode> nodes(2);
    nodes[0].id = 1;
    nodes[1].id = 2;
    nodes[0].position = {0, 0};

    nodes[1].position = {100, 0};
    CHECK(snapshot_graph(nodes, radio, CostMode::Hop).edge_count() == 1);
    nodes[1].position = {200, 0};
    CHECK(snapshot_graph(nodes, radio, CostMode::Hop).edge_count() == 0);
}
