#include "manet/mobility.hpp"

#include <cmath>

namespace manet {

bool in_range(const MobileNode& a, const MobileNode& b,
              const RadioModel& radio) {
    return within_range(a.position, b.position, radio.range);
}

Vec2 MobilityModel::draw_position(RngStream& rng) const {
    Vec2 p;
    p.x = rng.uniform(0.0, terrain_.width);
    p.y = rng.uniform(0.0, terrain_.height);
    return p;
}

void MobilityModel::init_node(MobileNode& node, RngStream& rng) const {
    node.waypoint = draw_position(rng);
    node.speed = rng.uniform_positive(max_speed_);
    node.pause_until = 0.0;
    node.needs_waypoint = false;
}

void MobilityModel::advance(MobileNode& node, SimTime now, double dt,
                            RngStream& rng) const {
    if (max_speed_ <= 0.0) {
        return;  // static scenario
    }
    const SimTime end = now + dt;
    if (node.pause_until > now) {
        if (node.pause_until >= end) {
            return;  // paused for the whole slice
        }
        now = node.pause_until;
    }
    if (node.needs_waypoint) {
        node.waypoint = draw_position(rng);
        node.speed = rng.uniform_positive(max_speed_);
        node.needs_waypoint = false;
    }

    const double dx = node.waypoint.x - node.position.x;
    const double dy = node.waypoint.y - node.position.y;
    const double remaining = std::sqrt(dx * dx + dy * dy);
    const double budget = node.speed * (end - now);

    if (remaining <= budget || remaining == 0.0) {
        // Arrived: snap to the waypoint and pause; a fresh waypoint is drawn
        // once the pause runs out.
        const double travel_time =
            node.speed > 0.0 ? remaining / node.speed : 0.0;
        node.position = node.waypoint;
        node.pause_until = now + travel_time + rng.uniform(0.0, 2.0 * mean_pause_);
        node.needs_waypoint = true;
        return;
    }
    const double scale = budget / remaining;
    node.position.x += dx * scale;
    node.position.y += dy * scale;
}

Graph snapshot_graph(const std::vector<MobileNode>& nodes,
                     const RadioModel& radio, CostMode cost_mode) {
    std::vector<NodePlacement> placements;
    placements.reserve(nodes.size());
    for (const auto& n : nodes) {
        placements.push_back({n.id, n.position});
    }
    return build_graph(placements, radio.range, cost_mode);
}

}  // namespace manet
