#ifndef MANET_PACKETS_HPP
#define MANET_PACKETS_HPP

#include <cstdint>
#include <vector>

#include "manet/event_queue.hpp"
#include "manet/graph.hpp"

namespace manet {

enum class ControlKind { Rreq, Rrep, Rerr };

const char* control_kind_name(ControlKind kind);

// One control message for either protocol. AODV uses the sequence-number
// fields, DSR the accumulated route; RERR carries the unreachable
// destinations (AODV) or the broken link (DSR).
struct ControlMessage {
    ControlKind kind = ControlKind::Rreq;
    NodeId origin = 0;       // node that started the discovery
    NodeId target = 0;       // destination being searched / replied for
    std::uint32_t request_id = 0;  // unique per origin
    int hop_count = 0;
    std::uint32_t origin_seq = 0;  // AODV
    std::uint32_t dest_seq = 0;    // AODV
    std::vector<NodeId> route;     // DSR accumulated / replied route
    std::vector<NodeId> unreachable;  // AODV RERR payload
    NodeId broken_from = 0;           // DSR RERR: broken link tail
    NodeId broken_to = 0;             // DSR RERR: broken link head
    int size_bits = 120;
};

struct DataPacket {
    std::uint64_t uid = 0;  // unique per generated packet
    NodeId src = 0;
    NodeId dest = 0;
    std::uint32_t seq = 0;  // per-flow sequence
    SimTime sent_at = 0.0;
    int payload_bytes = 512;
    std::vector<NodeId> route;  // DSR source route; empty for AODV
    std::size_t route_index = 0;  // position of the current holder in `route`
    int hops_travelled = 0;
    bool salvaged = false;  // DSR: one salvage retry allowed
};

}  // namespace manet

#endif
