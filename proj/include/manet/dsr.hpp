#ifndef MANET_DSR_HPP
#define MANET_DSR_HPP

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "manet/aodv.hpp"  // RouteDiscovery
#include "manet/event_queue.hpp"
#include "manet/graph.hpp"

namespace manet {

struct DsrCachedRoute {
    std::vector<NodeId> hops;  // starts at the owning node
    SimTime inserted_at = 0.0;
};

struct DsrState {
    std::uint32_t next_request_id = 0;
    std::vector<DsrCachedRoute> cache;
    std::set<std::pair<NodeId, std::uint32_t>> seen_rreq;  // (origin, id)
    std::map<NodeId, RouteDiscovery> discovery;            // keyed by target
};

// True when the route is usable as a source route from `owner`: starts at
// the owner, visits no node twice.
bool dsr_route_well_formed(NodeId owner, const std::vector<NodeId>& hops);

}  // namespace manet

#endif
