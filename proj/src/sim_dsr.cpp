#include <algorithm>

#include "manet/simulation.hpp"

// DSR, teaching-grade subset: accumulating RREQ flood, full-route RREP,
// source routes carried in every data packet, route caches with a fixed
// lifetime, one salvage attempt per packet, RERR naming the broken link.
// Relays learn the suffix of routes they carry in replies. No promiscuous
// route shortening, no gratuitous replies; see docs/DEVIATIONS.md.

namespace manet {

bool Simulation::dsr_cache_insert(NodeId self, const std::vector<NodeId>& route) {
    if (!dsr_route_well_formed(self, route)) {
        return false;  // forged or corrupt routes never enter the cache
    }
    DsrState& state = dsr_[self];
    for (auto& cached : state.cache) {
        if (cached.hops == route) {
            cached.inserted_at = sched_.now();  // refresh
            return true;
        }
    }
    state.cache.push_back({route, sched_.now()});
    return true;
}

std::optional<std::vector<NodeId>> Simulation::dsr_pick_route(NodeId self,
                                                              NodeId dest) {
    const DsrState& state = dsr_.at(self);
    const std::vector<NodeId>* best = nullptr;
    for (const auto& cached : state.cache) {
        if (cached.hops.back() != dest) {
            continue;
        }
        if (sched_.now() - cached.inserted_at > kRouteLifetime) {
            continue;  // stale
        }
        if (cfg_.inesh_enabled) {
            bool rejected = false;
            for (std::size_t i = 1; i + 1 < cached.hops.size(); ++i) {
                if (inesh_rejects(self, cached.hops[i])) {
                    rejected = true;
                    break;
                }
            }
            if (rejected) {
                continue;
            }
        }
        if (!best || cached.hops.size() < best->size()) {
            best = &cached.hops;
        }
    }
    if (!best) {
        return std::nullopt;
    }
    return *best;
}

void Simulation::dsr_originate(NodeId origin, DataPacket pkt) {
    auto route = dsr_pick_route(origin, pkt.dest);
    if (!route) {
        buffer_packet(origin, pkt);
        dsr_ensure_discovery(origin, pkt.dest);
        return;
    }
    pkt.route = *route;
    pkt.route_index = 0;
    dsr_forward_data(origin, pkt, 0);
}

void Simulation::dsr_ensure_discovery(NodeId origin, NodeId dest) {
    RouteDiscovery& disc = dsr_[origin].discovery[dest];
    if (disc.pending) {
        return;
    }
    disc.pending = true;
    disc.attempts = 1;
    inesh_discovery_hook(origin, dest);
    dsr_send_rreq(origin, dest);
    sched_.schedule(sched_.now() + kRreqRetryBase, EventKind::TimerExpiry,
                    origin,
                    [this, origin, dest] { dsr_retry_timer(origin, dest); });
}

void Simulation::dsr_send_rreq(NodeId origin, NodeId dest) {
    DsrState& state = dsr_[origin];
    ControlMessage rreq;
    rreq.kind = ControlKind::Rreq;
    rreq.origin = origin;
    rreq.target = dest;
    rreq.request_id = state.next_request_id++;
    rreq.route = {origin};
    rreq.size_bits = cfg_.control_bits;
    state.discovery[dest].request_id = rreq.request_id;
    state.seen_rreq.insert({origin, rreq.request_id});
    broadcast_control(origin, rreq);
}

void Simulation::dsr_retry_timer(NodeId origin, NodeId dest) {
    DsrState& state = dsr_[origin];
    RouteDiscovery& disc = state.discovery[dest];
    if (!disc.pending) {
        return;
    }
    if (dsr_pick_route(origin, dest)) {
        disc.pending = false;
        dsr_flush_buffer(origin, dest);
        return;
    }
    if (disc.attempts >= kMaxRouteRequests) {
        disc.pending = false;
        drop_buffered(origin, dest, DropReason::NoRoute);
        trace_line("discovery_failed", origin, "dest=" + std::to_string(dest));
        return;
    }
    ++disc.attempts;
    dsr_send_rreq(origin, dest);
    const double timeout = kRreqRetryBase * (1 << (disc.attempts - 1));
    sched_.schedule(sched_.now() + timeout, EventKind::TimerExpiry, origin,
                    [this, origin, dest] { dsr_retry_timer(origin, dest); });
}

void Simulation::dsr_handle_rreq(NodeId self, const ControlMessage& msg,
                                 NodeId from) {
    if (auto profile = adversary_.profile(self);
        profile && profile->kind == MaliciousKind::Blackhole) {
        ControlMessage forged = blackhole_forge_dsr_rrep(*profile, self, msg);
        transmit_control(self, from, forged);
        return;
    }
    if (inesh_rejects(self, from)) {
        trace_line("inesh_ignored", self, "from=" + std::to_string(from));
        return;
    }
    DsrState& state = dsr_[self];
    if (std::find(msg.route.begin(), msg.route.end(), self) !=
        msg.route.end()) {
        return;  // loop guard: already a forwarder of this request
    }
    if (state.seen_rreq.count({msg.origin, msg.request_id})) {
        return;
    }
    state.seen_rreq.insert({msg.origin, msg.request_id});

    if (self == msg.target) {
        ControlMessage rrep;
        rrep.kind = ControlKind::Rrep;
        rrep.origin = msg.origin;
        rrep.target = self;
        rrep.request_id = msg.request_id;
        rrep.route = msg.route;
        rrep.route.push_back(self);
        rrep.size_bits = cfg_.control_bits;
        transmit_control(self, from, rrep);
        return;
    }

    ControlMessage fwd = msg;
    fwd.route.push_back(self);
    ++fwd.hop_count;
    broadcast_control(self, fwd);
}

void Simulation::dsr_handle_rrep(NodeId self, const ControlMessage& msg,
                                 NodeId from) {
    if (inesh_rejects(self, from)) {
        trace_line("inesh_ignored", self, "from=" + std::to_string(from));
        return;
    }
    const auto& route = msg.route;
    const auto it = std::find(route.begin(), route.end(), self);
    if (it == route.end()) {
        return;  // not on the replied route
    }
    const auto idx = static_cast<std::size_t>(it - route.begin());

    // everyone on the route learns the suffix toward the target
    dsr_cache_insert(self,
                     std::vector<NodeId>(route.begin() + idx, route.end()));

    if (self == msg.origin) {
        // resolve only when an admissible route is actually in the cache; a
        // screened-out (e.g. forged) route leaves the retry timer in charge
        if (dsr_pick_route(self, msg.target)) {
            dsr_[self].discovery[msg.target].pending = false;
            dsr_flush_buffer(self, msg.target);
        }
        return;
    }
    if (idx == 0) {
        return;
    }
    transmit_control(self, route[idx - 1], msg);
}

void Simulation::dsr_send_rerr(NodeId self, const DataPacket& pkt,
                               NodeId broken_to) {
    // reverse path back to the source along the travelled prefix
    ControlMessage rerr;
    rerr.kind = ControlKind::Rerr;
    rerr.origin = pkt.src;  // final recipient
    rerr.broken_from = self;
    rerr.broken_to = broken_to;
    rerr.size_bits = cfg_.control_bits;
    rerr.route.assign(pkt.route.begin(),
                      pkt.route.begin() +
                          static_cast<std::ptrdiff_t>(pkt.route_index) + 1);
    std::reverse(rerr.route.begin(), rerr.route.end());
    if (rerr.route.size() < 2) {
        dsr_purge_link(self, rerr.broken_from, rerr.broken_to);
        return;  // we are the source
    }
    dsr_purge_link(self, rerr.broken_from, rerr.broken_to);
    transmit_control(self, rerr.route[1], rerr);
}

void Simulation::dsr_handle_rerr(NodeId self, const ControlMessage& msg,
                                 NodeId from) {
    (void)from;
    dsr_purge_link(self, msg.broken_from, msg.broken_to);
    if (self == msg.origin) {
        // source: rediscover if traffic is waiting
        auto it = buffers_[self].begin();
        for (; it != buffers_[self].end(); ++it) {
            if (!it->second.empty()) {
                dsr_ensure_discovery(self, it->first);
            }
        }
        return;
    }
    const auto& route = msg.route;
    const auto pos = std::find(route.begin(), route.end(), self);
    if (pos == route.end() || pos + 1 == route.end()) {
        return;
    }
    transmit_control(self, *(pos + 1), msg);
}

void Simulation::dsr_purge_via(NodeId self, NodeId subject) {
    DsrState& state = dsr_[self];
    auto uses_subject = [subject](const DsrCachedRoute& cached) {
        for (std::size_t i = 1; i + 1 < cached.hops.size(); ++i) {
            if (cached.hops[i] == subject) {
                return true;  // subject would forward on this route
            }
        }
        return false;
    };
    state.cache.erase(
        std::remove_if(state.cache.begin(), state.cache.end(), uses_subject),
        state.cache.end());
}

void Simulation::dsr_purge_link(NodeId self, NodeId a, NodeId b) {
    DsrState& state = dsr_[self];
    auto uses_link = [a, b](const DsrCachedRoute& cached) {
        for (std::size_t i = 0; i + 1 < cached.hops.size(); ++i) {
            const NodeId u = cached.hops[i];
            const NodeId w = cached.hops[i + 1];
            if ((u == a && w == b) || (u == b && w == a)) {
                return true;
            }
        }
        return false;
    };
    state.cache.erase(
        std::remove_if(state.cache.begin(), state.cache.end(), uses_link),
        state.cache.end());
}

void Simulation::dsr_forward_data(NodeId self, DataPacket pkt, NodeId prev_hop) {
    // locate ourselves on the source route
    const auto it = std::find(pkt.route.begin(), pkt.route.end(), self);
    if (it == pkt.route.end()) {
        record_drop(pkt, self, DropReason::NoRoute);
        return;
    }
    pkt.route_index = static_cast<std::size_t>(it - pkt.route.begin());
    if (pkt.route_index + 1 >= pkt.route.size()) {
        record_drop(pkt, self, DropReason::NoRoute);  // malformed route
        return;
    }
    NodeId next = pkt.route[pkt.route_index + 1];

    (void)prev_hop;
    // One salvage attempt from the cache. Only a trust break may fall back
    // to the filtered snapshot search: a plain link break salvages exactly
    // like the baseline protocol, so the overlay stays inert until the
    // filter actually excludes someone.
    auto salvage = [&](bool trust_break) -> bool {
        if (pkt.salvaged) {
            return false;
        }
        std::optional<std::vector<NodeId>> alt = dsr_pick_route(self, pkt.dest);
        if (alt && (*alt)[1] == next) {
            alt.reset();  // same broken hop again is pointless
        }
        if (!alt && trust_break) {
            PathResult repair = inesh_snapshot_path(self, pkt.dest);
            if (repair.path.size() >= 2 &&
                neighbors_contain(self, repair.path[1]) &&
                repair.path[1] != next) {
                alt = repair.path;
            }
        }
        if (!alt) {
            return false;
        }
        pkt.route = *alt;
        pkt.route_index = 0;
        pkt.salvaged = true;
        trace_line("dsr_salvage", self, "dest=" + std::to_string(pkt.dest));
        return true;
    };

    // a failing source re-buffers and rediscovers; a failing relay reports
    auto give_up = [&](NodeId broken, DropReason reason) {
        if (self == pkt.src) {
            dsr_purge_link(self, self, broken);
            pkt.route.clear();
            pkt.route_index = 0;
            buffer_packet(self, pkt);
            dsr_ensure_discovery(self, pkt.dest);
        } else {
            record_drop(pkt, self, reason);
            dsr_send_rerr(self, pkt, broken);
        }
    };

    if (cfg_.inesh_enabled && next != pkt.dest && inesh_rejects(self, next)) {
        trace_line("inesh_excluded", self, "next=" + std::to_string(next));
        const NodeId broken = next;
        if (!salvage(true)) {
            give_up(broken, DropReason::NoRoute);
            return;
        }
        next = pkt.route[1];
    }

    if (!neighbors_contain(self, next)) {
        const NodeId broken = next;
        if (!salvage(false)) {
            give_up(broken, DropReason::LinkBreak);
            return;
        }
        next = pkt.route[1];
        if (!neighbors_contain(self, next)) {
            give_up(next, DropReason::LinkBreak);
            return;
        }
    }

    transmit_data(self, next, pkt);
}

void Simulation::dsr_flush_buffer(NodeId origin, NodeId dest) {
    auto& per_dest = buffers_[origin];
    auto it = per_dest.find(dest);
    if (it == per_dest.end()) {
        return;
    }
    std::deque<DataPacket> pending = std::move(it->second);
    per_dest.erase(it);
    for (DataPacket& pkt : pending) {
        dsr_originate(origin, pkt);
    }
}

}  // namespace manet
