#include "manet/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace manet {

const char* control_kind_name(ControlKind kind) {
    switch (kind) {
        case ControlKind::Rreq:
            return "rreq";
        case ControlKind::Rrep:
            return "rrep";
        case ControlKind::Rerr:
            return "rerr";
    }
    return "unknown";
}

bool dsr_route_well_formed(NodeId owner, const std::vector<NodeId>& hops) {
    if (hops.size() < 2 || hops.front() != owner) {
        return false;
    }
    std::vector<NodeId> sorted = hops;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

namespace {

std::string fmt_time(SimTime t) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", t);
    return buf;
}

// Random sub-stream ids per concern.
constexpr std::uint64_t kStreamMobility = 0;
constexpr std::uint64_t kStreamTraffic = 1;
constexpr std::uint64_t kStreamAdversary = 2;

}  // namespace

Simulation::Simulation(const ScenarioConfig& cfg)
    : Simulation(cfg, draw_placements(cfg)) {}

Simulation::Simulation(const ScenarioConfig& cfg, std::vector<Vec2> positions)
    : cfg_(cfg),
      mobility_model_({cfg.terrain_x_m, cfg.terrain_y_m}, cfg.max_speed_mps,
                      kMeanPause),
      rng_mobility_(RngStream::derive(cfg.seed, kStreamMobility)),
      rng_traffic_(RngStream::derive(cfg.seed, kStreamTraffic)),
      rng_adversary_(RngStream::derive(cfg.seed, kStreamAdversary)) {
    radio_.range = cfg.range_m;
    init(std::move(positions));
}

std::vector<Vec2> Simulation::draw_placements(const ScenarioConfig& cfg) {
    RngStream rng = RngStream::derive(cfg.seed, kStreamMobility);
    MobilityModel model({cfg.terrain_x_m, cfg.terrain_y_m}, cfg.max_speed_mps,
                        kMeanPause);
    std::vector<Vec2> positions(static_cast<std::size_t>(cfg.node_count));
    for (auto& p : positions) {
        p = model.draw_position(rng);
    }
    return positions;
}

void Simulation::init(std::vector<Vec2> positions) {
    if (static_cast<int>(positions.size()) != cfg_.node_count) {
        throw std::invalid_argument(
            "simulation: placement count does not match node_count");
    }
    flows_ = cfg_.resolved_flows();
    for (const Flow& f : flows_) {
        if (f.src == f.dest) {
            throw ConfigError("config error: flows: flow " +
                              std::to_string(f.src) + "->" +
                              std::to_string(f.dest) +
                              " has identical endpoints (line 0)");
        }
        if (f.src < 1 || f.src > cfg_.node_count || f.dest < 1 ||
            f.dest > cfg_.node_count) {
            throw ConfigError(
                "config error: flows: endpoint outside 1.." +
                std::to_string(cfg_.node_count) + " (line 0)");
        }
    }

    trust_ = TrustTable(
        TrustParams{cfg_.trust_init, cfg_.trust_reward, cfg_.trust_penalty});

    // The placement stream has already been consumed by draw_placements (or
    // skipped entirely for explicit positions); waypoint and speed draws
    // follow in node order.
    nodes_.resize(static_cast<std::size_t>(cfg_.node_count) + 1);
    for (NodeId id = 1; id <= cfg_.node_count; ++id) {
        MobileNode& node = nodes_[id];
        node.id = id;
        node.position = positions[static_cast<std::size_t>(id - 1)];
        if (cfg_.max_speed_mps > 0.0) {
            mobility_model_.init_node(node, rng_mobility_);
        }
    }

    for (NodeId id = 1; id <= cfg_.node_count; ++id) {
        aodv_[id];
        dsr_[id];
    }

    setup_adversary();
    recompute_neighbors();
}

void Simulation::setup_adversary() {
    std::vector<NodeId> protected_nodes;
    for (const Flow& f : flows_) {
        protected_nodes.push_back(f.src);
        protected_nodes.push_back(f.dest);
    }
    MaliciousProfile profile;  // blackhole by default
    for (NodeId id : cfg_.malicious_nodes) {
        const bool shielded =
            std::find(protected_nodes.begin(), protected_nodes.end(), id) !=
            protected_nodes.end();
        if (shielded) {
            throw ConfigError(
                "config error: malicious_nodes: node " + std::to_string(id) +
                " is a flow endpoint and cannot be malicious (line 0)");
        }
        adversary_.assign(id, profile);
    }
    if (cfg_.malicious_fraction > 0.0) {
        adversary_.draw_random(cfg_.node_count, cfg_.malicious_fraction,
                               profile, protected_nodes, rng_adversary_);
    }
}

void Simulation::recompute_neighbors() {
    nbrs_.assign(static_cast<std::size_t>(cfg_.node_count) + 1, {});
    for (NodeId u = 1; u <= cfg_.node_count; ++u) {
        for (NodeId v = u + 1; v <= cfg_.node_count; ++v) {
            if (in_range(nodes_[u], nodes_[v], radio_)) {
                nbrs_[u].push_back(v);
                nbrs_[v].push_back(u);
            }
        }
    }
}

bool Simulation::neighbors_contain(NodeId u, NodeId v) const {
    const auto& list = nbrs_[u];
    return std::binary_search(list.begin(), list.end(), v);
}

void Simulation::schedule_mobility() {
    if (cfg_.max_speed_mps <= 0.0) {
        return;  // static scenario: no ticks, no draws
    }
    const SimTime next = sched_.now() + kMobilityTick;
    if (next >= cfg_.duration_s) {
        return;
    }
    sched_.schedule(next, EventKind::MobilityUpdate, 0, [this] {
        for (NodeId id = 1; id <= cfg_.node_count; ++id) {
            mobility_model_.advance(nodes_[id], sched_.now() - kMobilityTick,
                                    kMobilityTick, rng_mobility_);
        }
        recompute_neighbors();
        schedule_mobility();
    });
}

void Simulation::schedule_traffic() {
    for (std::size_t i = 0; i < flows_.size(); ++i) {
        sched_.schedule(0.0, EventKind::TrafficGeneration, flows_[i].src,
                        [this, i] { generate_packet(i, 0); });
    }
}

void Simulation::generate_packet(std::size_t flow_index, std::uint32_t seq) {
    const Flow& flow = flows_[flow_index];
    DataPacket pkt;
    pkt.uid = next_uid_++;
    pkt.src = flow.src;
    pkt.dest = flow.dest;
    pkt.seq = seq;
    pkt.sent_at = sched_.now();
    pkt.payload_bytes = cfg_.payload_bytes;

    ++sent_;
    registry_[pkt.uid] =
        PacketRecord{pkt.src, pkt.dest, seq, pkt.sent_at, PacketStatus::Buffered};
    trace_line("gen", pkt.src,
               "dest=" + std::to_string(pkt.dest) + " seq=" +
                   std::to_string(seq));

    // next generation for this flow
    const SimTime next = sched_.now() + 1.0 / cfg_.data_rate_pps;
    if (next < cfg_.duration_s) {
        sched_.schedule(next, EventKind::TrafficGeneration, flow.src,
                        [this, flow_index, seq] {
                            generate_packet(flow_index, seq + 1);
                        });
    }

    if (cfg_.protocol == Protocol::Aodv) {
        aodv_forward_data(pkt.src, pkt, 0);
    } else {
        dsr_originate(pkt.src, pkt);
    }
}

void Simulation::trace_line(const std::string& kind, NodeId node,
                            const std::string& rest) {
    if (!trace_) {
        return;
    }
    *trace_ << "t=" << fmt_time(sched_.now()) << " ev=" << kind
            << " node=" << node;
    if (!rest.empty()) {
        *trace_ << ' ' << rest;
    }
    *trace_ << '\n';
}

void Simulation::transmit_data(NodeId from, NodeId to, const DataPacket& pkt) {
    DataPacket sent = pkt;
    ++sent.hops_travelled;
    if (sent.hops_travelled > kMaxHops) {
        record_drop(sent, from, DropReason::NoRoute);  // routing loop guard
        return;
    }
    registry_[sent.uid].status = PacketStatus::Transit;
    confirm_forwarding(sent.uid, from);
    if (to != sent.dest) {
        arm_watchdog(sent.uid, from, to);
    }
    trace_line("tx_data", from,
               "to=" + std::to_string(to) + " uid=" + std::to_string(sent.uid));
    sched_.schedule(sched_.now() + radio_.per_hop_delay,
                    EventKind::PacketArrival, to, [this, to, sent, from] {
                        handle_data_arrival(to, sent, from);
                    });
}

void Simulation::transmit_control(NodeId from, NodeId to,
                                  const ControlMessage& msg) {
    if (!neighbors_contain(from, to)) {
        trace_line("tx_lost", from,
                   std::string("kind=") + control_kind_name(msg.kind) +
                       " to=" + std::to_string(to));
        return;  // unicast into a vanished link is silently lost
    }
    ++control_tx_;
    trace_line("tx_ctl", from,
               std::string("kind=") + control_kind_name(msg.kind) +
                   " to=" + std::to_string(to));
    sched_.schedule(sched_.now() + radio_.per_hop_delay,
                    EventKind::PacketArrival, to, [this, to, msg, from] {
                        handle_control_arrival(to, msg, from);
                    });
}

void Simulation::broadcast_control(NodeId from, const ControlMessage& msg) {
    ++control_tx_;  // one radio transmission reaches every neighbor
    trace_line("bcast_ctl", from,
               std::string("kind=") + control_kind_name(msg.kind));
    for (NodeId v : nbrs_[from]) {
        sched_.schedule(sched_.now() + radio_.per_hop_delay,
                        EventKind::PacketArrival, v, [this, v, msg, from] {
                            handle_control_arrival(v, msg, from);
                        });
    }
}

void Simulation::handle_control_arrival(NodeId self, ControlMessage msg,
                                        NodeId from) {
    if (cfg_.protocol == Protocol::Aodv) {
        switch (msg.kind) {
            case ControlKind::Rreq:
                aodv_handle_rreq(self, msg, from);
                break;
            case ControlKind::Rrep:
                aodv_handle_rrep(self, msg, from);
                break;
            case ControlKind::Rerr:
                aodv_handle_rerr(self, msg, from);
                break;
        }
    } else {
        switch (msg.kind) {
            case ControlKind::Rreq:
                dsr_handle_rreq(self, msg, from);
                break;
            case ControlKind::Rrep:
                dsr_handle_rrep(self, msg, from);
                break;
            case ControlKind::Rerr:
                dsr_handle_rerr(self, msg, from);
                break;
        }
    }
}

void Simulation::handle_data_arrival(NodeId self, DataPacket pkt, NodeId from) {
    // malicious behavior applies to transiting packets only
    if (self != pkt.dest) {
        if (auto profile = adversary_.profile(self)) {
            if (maybe_drop(*profile, pkt, rng_adversary_) ==
                DropDecision::Drop) {
                record_drop(pkt, self,
                            profile->kind == MaliciousKind::Blackhole
                                ? DropReason::Blackhole
                                : DropReason::Dropper);
                return;
            }
        }
    }
    if (self == pkt.dest) {
        record_delivery(pkt, self, from);
        return;
    }
    if (cfg_.protocol == Protocol::Aodv) {
        aodv_forward_data(self, pkt, from);
    } else {
        dsr_forward_data(self, pkt, from);
    }
}

void Simulation::record_delivery(const DataPacket& pkt, NodeId at,
                                 NodeId from) {
    registry_[pkt.uid].status = PacketStatus::Delivered;
    ++delivered_;
    const double delay = sched_.now() - pkt.sent_at;
    delay_sum_ += delay;
    deliveries_.push_back(
        {sched_.now(), static_cast<std::int64_t>(pkt.payload_bytes) * 8});
    delivery_trace_.push_back("t=" + fmt_time(sched_.now()) +
                              " src=" + std::to_string(pkt.src) +
                              " dest=" + std::to_string(pkt.dest) +
                              " seq=" + std::to_string(pkt.seq));
    trace_line("deliver", at,
               "src=" + std::to_string(pkt.src) + " seq=" +
                   std::to_string(pkt.seq) + " delay=" + fmt_time(delay));
    // delivery through the final hop confirms the chosen neighbor
    trust_.update(from, at, TrustOutcome::Reward, sched_.now());
}

void Simulation::record_drop(const DataPacket& pkt, NodeId at,
                             DropReason reason) {
    registry_[pkt.uid].status = PacketStatus::Dropped;
    ++drops_[reason];
    drop_log_.push_back("t=" + fmt_time(sched_.now()) + " drop node=" +
                        std::to_string(at) + " reason=" +
                        drop_reason_name(reason));
    trace_line("drop", at,
               "uid=" + std::to_string(pkt.uid) + " reason=" +
                   drop_reason_name(reason));
}

void Simulation::buffer_packet(NodeId origin, const DataPacket& pkt) {
    buffers_[origin][pkt.dest].push_back(pkt);
    registry_[pkt.uid].status = PacketStatus::Buffered;
}

void Simulation::drop_buffered(NodeId origin, NodeId dest, DropReason reason) {
    auto& per_dest = buffers_[origin];
    auto it = per_dest.find(dest);
    if (it == per_dest.end()) {
        return;
    }
    std::deque<DataPacket> pending = std::move(it->second);
    per_dest.erase(it);
    for (const DataPacket& pkt : pending) {
        record_drop(pkt, origin, reason);
    }
}

// --- watchdog ------------------------------------------------------------

void Simulation::arm_watchdog(std::uint64_t uid, NodeId observer,
                              NodeId subject) {
    pending_watch_[{uid, subject}] = observer;
    sched_.schedule(sched_.now() + kWatchdogTimeout, EventKind::TimerExpiry,
                    observer,
                    [this, uid, subject] { watchdog_expire(uid, subject); });
}

void Simulation::confirm_forwarding(std::uint64_t uid, NodeId subject) {
    auto it = pending_watch_.find({uid, subject});
    if (it == pending_watch_.end()) {
        return;
    }
    const NodeId observer = it->second;
    pending_watch_.erase(it);
    trust_.update(observer, subject, TrustOutcome::Reward, sched_.now());
}

void Simulation::watchdog_expire(std::uint64_t uid, NodeId subject) {
    auto it = pending_watch_.find({uid, subject});
    if (it == pending_watch_.end()) {
        return;  // confirmed in time
    }
    const NodeId observer = it->second;
    pending_watch_.erase(it);
    trust_.update(observer, subject, TrustOutcome::Penalize, sched_.now());
    trace_line("watchdog_negative", observer,
               "subject=" + std::to_string(subject));
    // the routing table follows the trust table: once the subject falls to
    // exclusion, routes through it are dead to this observer
    if (inesh_rejects(observer, subject)) {
        if (cfg_.protocol == Protocol::Aodv) {
            aodv_invalidate_via(observer, subject);
        } else {
            dsr_purge_via(observer, subject);
        }
    }
}

// --- INESH overlay --------------------------------------------------------

bool Simulation::inesh_rejects(NodeId observer, NodeId candidate) {
    if (!cfg_.inesh_enabled || observer == candidate) {
        return false;
    }
    // best alternative: most trusted other current neighbor (ties to the
    // lower id, which comes first in the sorted list)
    NodeId best = 0;
    double best_trust = -1.0;
    for (NodeId v : nbrs_[observer]) {
        if (v == candidate) {
            continue;
        }
        const double t = trust_.get(observer, v);
        if (t > best_trust) {
            best = v;
            best_trust = t;
        }
    }
    if (best == 0) {
        return false;
    }
    return trust_filter(candidate, best, trust_, observer,
                        cfg_.trust_threshold) == FilterDecision::Exclude;
}

PathResult Simulation::inesh_snapshot_path(NodeId self, NodeId dest) {
    std::vector<NodePlacement> placements;
    placements.reserve(static_cast<std::size_t>(cfg_.node_count));
    for (NodeId id = 1; id <= cfg_.node_count; ++id) {
        placements.push_back({id, nodes_[id].position});
    }
    Graph snapshot = build_graph(placements, radio_.range, CostMode::Hop);
    return inesh_search(snapshot, trust_, self, dest, cfg_.trust_threshold);
}

std::optional<NodeId> Simulation::inesh_admit_next_hop(
    NodeId self, const std::vector<NodeId>& candidates, NodeId dest) {
    PathResult result = inesh_snapshot_path(self, dest);
    if (result.path.size() < 2) {
        return std::nullopt;
    }
    const NodeId hop = result.path[1];
    if (std::find(candidates.begin(), candidates.end(), hop) ==
        candidates.end()) {
        return std::nullopt;  // stale candidate list
    }
    return hop;
}

void Simulation::inesh_discovery_hook(NodeId origin, NodeId dest) {
    if (!cfg_.inesh_enabled) {
        return;
    }
    const auto admit = inesh_admit_next_hop(origin, nbrs_[origin], dest);
    trace_line("inesh_admit", origin,
               "dest=" + std::to_string(dest) + " hop=" +
                   (admit ? std::to_string(*admit) : std::string("none")));
}

// --- run ------------------------------------------------------------------

void Simulation::set_table_dump_times(std::vector<SimTime> times) {
    dump_times_ = std::move(times);
}

void Simulation::dump_tables() {
    std::ostringstream out;
    const std::string t = fmt_time(sched_.now());
    if (cfg_.protocol == Protocol::Aodv) {
        for (const auto& [node, state] : aodv_) {
            for (const auto& [dest, entry] : state.routes) {
                if (entry.next_hop == 0) {
                    continue;  // placeholder created by a lookup, never set
                }
                out << "t=" << t << " node=" << node << " dest=" << dest
                    << " next=" << entry.next_hop << " hops=" << entry.hop_count
                    << " seq=" << entry.dest_seq
                    << " valid=" << (entry.valid ? 1 : 0) << "\n";
            }
        }
    } else {
        for (const auto& [node, state] : dsr_) {
            for (const auto& cached : state.cache) {
                out << "t=" << t << " node=" << node << " route=";
                for (std::size_t i = 0; i < cached.hops.size(); ++i) {
                    if (i > 0) {
                        out << ',';
                    }
                    out << cached.hops[i];
                }
                out << "\n";
            }
        }
    }
    table_dump_ += out.str();
}

MetricsReport Simulation::run() {
    if (ran_) {
        throw std::logic_error("simulation: run() called twice");
    }
    ran_ = true;

    sched_.set_observer([this](const FiredEvent& ev) {
        if (trace_) {
            *trace_ << "t=" << fmt_time(ev.fire_at)
                    << " ev=" << event_kind_name(ev.kind) << " node=" << ev.node
                    << '\n';
        }
    });

    schedule_traffic();
    schedule_mobility();
    for (SimTime t : dump_times_) {
        if (t < cfg_.duration_s) {
            sched_.schedule(t, EventKind::TimerExpiry, 0,
                            [this] { dump_tables(); });
        }
    }

    sched_.run_until(cfg_.duration_s);

    MetricsReport report;
    finalize(report);
    return report;
}

void Simulation::finalize(MetricsReport& report) {
    std::int64_t in_flight = 0;
    for (const auto& [uid, record] : registry_) {
        if (record.status == PacketStatus::Buffered ||
            record.status == PacketStatus::Transit) {
            ++in_flight;
        }
    }
    std::int64_t dropped = 0;
    for (const auto& [reason, count] : drops_) {
        dropped += count;
    }
    if (sent_ != delivered_ + dropped + in_flight) {
        ++invariant_violations_;
        throw std::logic_error("simulation: packet conservation violated");
    }

    report.sent = sent_;
    report.delivered = delivered_;
    report.dropped = dropped;
    report.in_flight_at_horizon = in_flight;
    report.control_transmissions = control_tx_;
    report.pdr = sent_ > 0
                     ? static_cast<double>(delivered_) / static_cast<double>(sent_)
                     : 1.0;
    report.mean_delay_s =
        delivered_ > 0 ? delay_sum_ / static_cast<double>(delivered_) : 0.0;
    if (delivered_ > 0) {
        report.routing_overhead = static_cast<double>(control_tx_) /
                                  static_cast<double>(delivered_);
    } else {
        report.routing_overhead =
            control_tx_ > 0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    report.drops_by_reason = drops_;
    report.throughput_series =
        compute_throughput(deliveries_, kThroughputWindow, cfg_.duration_s);
}

MetricsReport run_scenario(const ScenarioConfig& cfg) {
    Simulation sim(cfg);
    return sim.run();
}

}  // namespace manet
