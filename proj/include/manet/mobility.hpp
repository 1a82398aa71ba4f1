#ifndef MANET_MOBILITY_HPP
#define MANET_MOBILITY_HPP

#include <vector>

#include "manet/event_queue.hpp"
#include "manet/graph.hpp"
#include "manet/rng.hpp"

namespace manet {

struct Terrain {
    double width = 500.0;   // meters, x in [0, width]
    double height = 550.0;  // meters, y in [0, height]
};

struct MobileNode {
    NodeId id = 0;
    Vec2 position;
    Vec2 waypoint;
    double speed = 0.0;         // meters/second, in (0, max] while moving
    SimTime pause_until = 0.0;  // paused at the waypoint until this time
    bool needs_waypoint = false;
};

// Unit-disk radio: linked iff within `range` (inclusive), no interference,
// no collisions. `per_hop_delay` stands in for bandwidth.
struct RadioModel {
    double range = 150.0;          // meters
    double per_hop_delay = 0.002;  // seconds per packet per hop
};

bool in_range(const MobileNode& a, const MobileNode& b,
              const RadioModel& radio);

// Random waypoint movement on a bounded terrain: travel toward the waypoint
// at the drawn speed, pause on arrival, then draw a fresh uniform waypoint
// and a fresh uniform speed in (0, max_speed].
class MobilityModel {
  public:
    MobilityModel(Terrain terrain, double max_speed, double mean_pause)
        : terrain_(terrain), max_speed_(max_speed), mean_pause_(mean_pause) {}

    Vec2 draw_position(RngStream& rng) const;

    // Initializes waypoint and speed for a freshly placed node.
    void init_node(MobileNode& node, RngStream& rng) const;

    // Advances one node by dt seconds of simulated time starting at `now`;
    // positions never leave the terrain and displacement never exceeds
    // speed * dt.
    void advance(MobileNode& node, SimTime now, double dt,
                 RngStream& rng) const;

    double max_speed() const { return max_speed_; }
    const Terrain& terrain() const { return terrain_; }

  private:
    Terrain terrain_;
    double max_speed_;
    double mean_pause_;  // pause duration drawn uniform in [0, 2 * mean]
};

// Current connectivity snapshot over live positions; delegates to
// build_graph so the simulator and the path engine agree on links.
Graph snapshot_graph(const std::vector<MobileNode>& nodes,
                     const RadioModel& radio, CostMode cost_mode);

}  // namespace manet

#endif
