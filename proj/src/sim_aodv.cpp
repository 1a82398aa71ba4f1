#include <algorithm>

#include "manet/simulation.hpp"

// AODV, teaching-grade subset: flooded RREQ with duplicate suppression,
// reverse-path RREP (destination or fresh-enough intermediate), precursor
// tracking, RERR propagation on link breaks, three discovery attempts with
// doubled timeouts. No expanding-ring search, no gratuitous RREP, no hello
// beacons, no local repair; see docs/DEVIATIONS.md.

namespace manet {

void Simulation::aodv_bump_seq(NodeId self, std::uint32_t at_least) {
    AodvState& state = aodv_[self];
    const std::uint32_t next = std::max(state.own_seq, at_least);
    if (next < state.own_seq) {
        ++invariant_violations_;  // sequence numbers must never decrease
    }
    state.own_seq = next;
}

void Simulation::aodv_install_route(NodeId self, NodeId dest, NodeId next_hop,
                                    int hop_count, std::uint32_t dest_seq) {
    AodvRouteEntry& entry = aodv_[self].routes[dest];
    const bool fresher = dest_seq > entry.dest_seq;
    const bool same_but_better =
        dest_seq == entry.dest_seq &&
        (!entry.valid || hop_count < entry.hop_count);
    if (entry.valid && !fresher && !same_but_better) {
        return;
    }
    entry.next_hop = next_hop;
    entry.hop_count = hop_count;
    entry.dest_seq = std::max(entry.dest_seq, dest_seq);
    entry.lifetime = sched_.now() + kRouteLifetime;
    entry.valid = true;
}

bool Simulation::aodv_route_usable(NodeId self, NodeId dest) {
    const AodvRouteEntry& entry = aodv_[self].routes[dest];
    if (!entry.valid || entry.lifetime < sched_.now()) {
        return false;
    }
    // a route into a screened-out next hop cannot resolve a discovery
    return entry.next_hop == dest || !inesh_rejects(self, entry.next_hop);
}

void Simulation::aodv_ensure_discovery(NodeId origin, NodeId dest) {
    RouteDiscovery& disc = aodv_[origin].discovery[dest];
    if (disc.pending) {
        return;
    }
    disc.pending = true;
    disc.attempts = 1;
    inesh_discovery_hook(origin, dest);
    aodv_send_rreq(origin, dest);
    const double timeout = kRreqRetryBase;
    sched_.schedule(sched_.now() + timeout, EventKind::TimerExpiry, origin,
                    [this, origin, dest] { aodv_retry_timer(origin, dest); });
}

void Simulation::aodv_send_rreq(NodeId origin, NodeId dest) {
    AodvState& state = aodv_[origin];
    aodv_bump_seq(origin, state.own_seq + 1);  // fresh origin sequence

    ControlMessage rreq;
    rreq.kind = ControlKind::Rreq;
    rreq.origin = origin;
    rreq.target = dest;
    rreq.request_id = state.next_request_id++;
    rreq.hop_count = 0;
    rreq.origin_seq = state.own_seq;
    rreq.dest_seq = state.routes[dest].dest_seq;  // last known freshness
    rreq.size_bits = cfg_.control_bits;

    state.discovery[dest].request_id = rreq.request_id;
    state.seen_rreq.insert({origin, rreq.request_id});
    broadcast_control(origin, rreq);
}

void Simulation::aodv_retry_timer(NodeId origin, NodeId dest) {
    AodvState& state = aodv_[origin];
    RouteDiscovery& disc = state.discovery[dest];
    if (!disc.pending) {
        return;  // already resolved
    }
    if (aodv_route_usable(origin, dest)) {
        disc.pending = false;
        aodv_flush_buffer(origin, dest);
        return;
    }
    if (disc.attempts >= kMaxRouteRequests) {
        disc.pending = false;
        drop_buffered(origin, dest, DropReason::NoRoute);
        trace_line("discovery_failed", origin, "dest=" + std::to_string(dest));
        return;
    }
    ++disc.attempts;
    aodv_send_rreq(origin, dest);
    const double timeout = kRreqRetryBase * (1 << (disc.attempts - 1));
    sched_.schedule(sched_.now() + timeout, EventKind::TimerExpiry, origin,
                    [this, origin, dest] { aodv_retry_timer(origin, dest); });
}

void Simulation::aodv_handle_rreq(NodeId self, const ControlMessage& msg,
                                  NodeId from) {
    // a blackhole answers every request with a forged, maximally fresh reply
    if (auto profile = adversary_.profile(self);
        profile && profile->kind == MaliciousKind::Blackhole) {
        transmit_control(self, from,
                         blackhole_forge_aodv_rrep(*profile, self, msg));
        return;  // and never rebroadcasts the request
    }
    if (inesh_rejects(self, from)) {
        trace_line("inesh_ignored", self, "from=" + std::to_string(from));
        return;
    }
    AodvState& state = aodv_[self];
    if (state.seen_rreq.count({msg.origin, msg.request_id})) {
        return;  // duplicate flood copy
    }
    state.seen_rreq.insert({msg.origin, msg.request_id});

    // reverse route toward the origin
    aodv_install_route(self, msg.origin, from, msg.hop_count + 1,
                       msg.origin_seq);

    if (self == msg.target) {
        aodv_bump_seq(self, std::max(state.own_seq, msg.dest_seq) + 1);
        ControlMessage rrep;
        rrep.kind = ControlKind::Rrep;
        rrep.origin = msg.origin;
        rrep.target = self;
        rrep.request_id = msg.request_id;
        rrep.hop_count = 0;
        rrep.dest_seq = state.own_seq;
        rrep.size_bits = cfg_.control_bits;
        transmit_control(self, from, rrep);
        return;
    }

    const AodvRouteEntry& entry = state.routes[msg.target];
    const bool can_answer = entry.valid && entry.lifetime >= sched_.now() &&
                            entry.dest_seq > 0 &&
                            entry.dest_seq >= msg.dest_seq;
    if (can_answer) {
        ControlMessage rrep;
        rrep.kind = ControlKind::Rrep;
        rrep.origin = msg.origin;
        rrep.target = msg.target;
        rrep.request_id = msg.request_id;
        rrep.hop_count = entry.hop_count;
        rrep.dest_seq = entry.dest_seq;
        rrep.size_bits = cfg_.control_bits;
        transmit_control(self, from, rrep);
        return;
    }

    ControlMessage fwd = msg;
    ++fwd.hop_count;
    broadcast_control(self, fwd);
}

void Simulation::aodv_handle_rrep(NodeId self, const ControlMessage& msg,
                                  NodeId from) {
    if (inesh_rejects(self, from)) {
        trace_line("inesh_ignored", self, "from=" + std::to_string(from));
        return;
    }
    AodvState& state = aodv_[self];
    aodv_install_route(self, msg.target, from, msg.hop_count + 1,
                       msg.dest_seq);

    if (self == msg.origin) {
        // the discovery resolves only once a trust-admissible route exists;
        // a reply that the screen rejects leaves the retry timer in charge
        if (aodv_route_usable(self, msg.target)) {
            state.discovery[msg.target].pending = false;
            aodv_flush_buffer(self, msg.target);
        }
        return;
    }

    // relay along the reverse path
    const AodvRouteEntry& reverse = state.routes[msg.origin];
    if (!reverse.valid) {
        return;  // reverse path evaporated; the origin will retry
    }
    state.routes[msg.target].precursors.insert(reverse.next_hop);
    ControlMessage fwd = msg;
    ++fwd.hop_count;
    transmit_control(self, reverse.next_hop, fwd);
}

void Simulation::aodv_handle_rerr(NodeId self, const ControlMessage& msg,
                                  NodeId from) {
    AodvState& state = aodv_[self];
    std::map<NodeId, std::set<NodeId>> to_notify;
    for (NodeId dest : msg.unreachable) {
        auto it = state.routes.find(dest);
        if (it == state.routes.end() || !it->second.valid ||
            it->second.next_hop != from) {
            continue;
        }
        it->second.valid = false;
        if (!it->second.precursors.empty()) {
            to_notify[dest] = it->second.precursors;
        }
        it->second.precursors.clear();
        // a source with queued traffic starts over
        auto buf = buffers_[self].find(dest);
        if (buf != buffers_[self].end() && !buf->second.empty()) {
            aodv_ensure_discovery(self, dest);
        }
    }
    aodv_send_rerr(self, to_notify);
}

void Simulation::aodv_send_rerr(
    NodeId self, const std::map<NodeId, std::set<NodeId>>& dest_to_precursors) {
    // group unreachable destinations per precursor so each gets one message
    std::map<NodeId, std::vector<NodeId>> per_precursor;
    for (const auto& [dest, precursors] : dest_to_precursors) {
        for (NodeId p : precursors) {
            per_precursor[p].push_back(dest);
        }
    }
    for (const auto& [precursor, dests] : per_precursor) {
        ControlMessage rerr;
        rerr.kind = ControlKind::Rerr;
        rerr.origin = self;
        rerr.unreachable = dests;
        rerr.size_bits = cfg_.control_bits;
        transmit_control(self, precursor, rerr);
    }
}

void Simulation::aodv_invalidate_via(NodeId self, NodeId broken_next_hop) {
    AodvState& state = aodv_[self];
    std::map<NodeId, std::set<NodeId>> to_notify;
    for (auto& [dest, entry] : state.routes) {
        if (!entry.valid || entry.next_hop != broken_next_hop) {
            continue;
        }
        entry.valid = false;
        if (!entry.precursors.empty()) {
            to_notify[dest] = entry.precursors;
        }
        entry.precursors.clear();
    }
    aodv_send_rerr(self, to_notify);
}

void Simulation::aodv_forward_data(NodeId self, DataPacket pkt,
                                   NodeId prev_hop) {
    AodvState& state = aodv_[self];
    AodvRouteEntry& entry = state.routes[pkt.dest];
    bool usable = entry.valid && entry.lifetime >= sched_.now();

    // trust screen on the chosen next hop (final hop is exempt: the
    // destination itself can always be delivered to)
    if (usable && entry.next_hop != pkt.dest &&
        inesh_rejects(self, entry.next_hop)) {
        trace_line("inesh_excluded", self,
                   "next=" + std::to_string(entry.next_hop));
        aodv_invalidate_via(self, entry.next_hop);
        usable = false;
    }

    if (!usable) {
        if (prev_hop == 0) {
            buffer_packet(self, pkt);
            aodv_ensure_discovery(self, pkt.dest);
        } else {
            record_drop(pkt, self, DropReason::NoRoute);
            ControlMessage rerr;
            rerr.kind = ControlKind::Rerr;
            rerr.origin = self;
            rerr.unreachable = {pkt.dest};
            rerr.size_bits = cfg_.control_bits;
            transmit_control(self, prev_hop, rerr);
        }
        return;
    }

    const NodeId next = entry.next_hop;
    if (!neighbors_contain(self, next)) {
        // link break: purge everything through the vanished neighbor
        aodv_invalidate_via(self, next);
        if (prev_hop == 0) {
            buffer_packet(self, pkt);
            aodv_ensure_discovery(self, pkt.dest);
        } else {
            record_drop(pkt, self, DropReason::LinkBreak);
        }
        return;
    }

    if (prev_hop != 0) {
        entry.precursors.insert(prev_hop);
    }
    entry.lifetime = sched_.now() + kRouteLifetime;  // refresh on use
    transmit_data(self, next, pkt);
}

void Simulation::aodv_flush_buffer(NodeId origin, NodeId dest) {
    auto& per_dest = buffers_[origin];
    auto it = per_dest.find(dest);
    if (it == per_dest.end()) {
        return;
    }
    std::deque<DataPacket> pending = std::move(it->second);
    per_dest.erase(it);
    for (DataPacket& pkt : pending) {
        aodv_forward_data(origin, pkt, 0);
    }
}

}  // namespace manet
