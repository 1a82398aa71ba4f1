#ifndef MANET_AODV_HPP
#define MANET_AODV_HPP

#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <utility>

#include "manet/event_queue.hpp"
#include "manet/graph.hpp"
#include "manet/packets.hpp"

namespace manet {

struct AodvRouteEntry {
    NodeId next_hop = 0;
    int hop_count = 0;
    std::uint32_t dest_seq = 0;
    SimTime lifetime = 0.0;  // expiry time; stale entries count as no route
    bool valid = false;
    std::set<NodeId> precursors;  // upstream nodes using this route
};

struct RouteDiscovery {
    bool pending = false;
    int attempts = 0;
    std::uint32_t request_id = 0;
};

struct AodvState {
    std::uint32_t own_seq = 0;
    std::uint32_t next_request_id = 0;
    std::map<NodeId, AodvRouteEntry> routes;  // keyed by destination
    std::set<std::pair<NodeId, std::uint32_t>> seen_rreq;  // (origin, id)
    std::map<NodeId, RouteDiscovery> discovery;            // keyed by target
};

}  // namespace manet

#endif
