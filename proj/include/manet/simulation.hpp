#ifndef MANET_SIMULATION_HPP
#define MANET_SIMULATION_HPP

#include <deque>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "manet/adversary.hpp"
#include "manet/aodv.hpp"
#include "manet/config.hpp"
#include "manet/dsr.hpp"
#include "manet/event_queue.hpp"
#include "manet/graph.hpp"
#include "manet/inesh.hpp"
#include "manet/metrics.hpp"
#include "manet/mobility.hpp"
#include "manet/packets.hpp"
#include "manet/rng.hpp"
#include "manet/trust.hpp"

namespace manet {

// Protocol timing constants. None of these come from the scenario file; they
// are fixed properties of the simulated stack.
constexpr double kMobilityTick = 0.5;        // seconds between position updates
constexpr double kMeanPause = 2.0;           // random-waypoint pause parameter
constexpr double kRouteLifetime = 10.0;      // route/cache entry lifetime
constexpr double kRreqRetryBase = 0.5;       // first retry timeout, then x2
constexpr int kMaxRouteRequests = 3;         // discovery attempts per round
constexpr double kWatchdogTimeout = 0.05;    // forwarding confirmation window
constexpr int kMaxHops = 64;                 // data-plane loop guard
constexpr double kThroughputWindow = 10.0;   // seconds per metrics window

// Deterministic single-instance simulation: random-waypoint mobility over a
// bounded terrain, unit-disk radio, AODV or DSR routing with an optional
// trust-filtered (INESH) overlay, and malicious-node profiles. Everything is
// driven by one event queue; two runs with the same config produce identical
// traces.
class Simulation {
  public:
    explicit Simulation(const ScenarioConfig& cfg);
    // Test entry: explicit initial positions instead of random placement.
    Simulation(const ScenarioConfig& cfg, std::vector<Vec2> positions);

    // Runs to the configured duration and computes the report. Single shot.
    MetricsReport run();

    // --- knobs that must be set before run() ---
    void enable_trace(std::ostream* sink) { trace_ = sink; }
    void set_table_dump_times(std::vector<SimTime> times);
    RadioModel& radio() { return radio_; }

    // --- inspection ---
    const ScenarioConfig& config() const { return cfg_; }
    const TrustTable& trust() const { return trust_; }
    TrustTable& trust_mutable() { return trust_; }
    const AdversaryAssignment& adversary() const { return adversary_; }
    const std::vector<MobileNode>& nodes() const { return nodes_; }
    const std::vector<std::string>& delivery_trace() const {
        return delivery_trace_;
    }
    const std::vector<std::string>& drop_log() const { return drop_log_; }
    const std::string& table_dump() const { return table_dump_; }
    const AodvState& aodv_state(NodeId v) const { return aodv_.at(v); }
    const DsrState& dsr_state(NodeId v) const { return dsr_.at(v); }
    int invariant_violations() const { return invariant_violations_; }

    // Current-neighbors next-hop admission: snapshot the connectivity graph,
    // run the trust-filtered search from `self`, and return the first hop of
    // the resulting path. Empty when no trust-admissible path exists.
    std::optional<NodeId> inesh_admit_next_hop(
        NodeId self, const std::vector<NodeId>& candidates, NodeId dest);

    // Deterministic uniform placement for a scenario; also used to freeze
    // topology fixtures.
    static std::vector<Vec2> draw_placements(const ScenarioConfig& cfg);

  private:
    enum class PacketStatus { Buffered, Transit, Delivered, Dropped };

    struct PacketRecord {
        NodeId src = 0;
        NodeId dest = 0;
        std::uint32_t seq = 0;
        SimTime sent_at = 0.0;
        PacketStatus status = PacketStatus::Buffered;
    };

    // --- setup ---
    void init(std::vector<Vec2> positions);
    void setup_adversary();
    void schedule_traffic();
    void schedule_mobility();
    void recompute_neighbors();

    // --- shared machinery ---
    void trace_line(const std::string& kind, NodeId node,
                    const std::string& rest);
    void generate_packet(std::size_t flow_index, std::uint32_t seq);
    void handle_data_arrival(NodeId self, DataPacket pkt, NodeId from);
    void transmit_data(NodeId from, NodeId to, const DataPacket& pkt);
    void transmit_control(NodeId from, NodeId to, const ControlMessage& msg);
    void broadcast_control(NodeId from, const ControlMessage& msg);
    void handle_control_arrival(NodeId self, ControlMessage msg, NodeId from);
    void record_delivery(const DataPacket& pkt, NodeId at, NodeId from);
    void record_drop(const DataPacket& pkt, NodeId at, DropReason reason);
    void buffer_packet(NodeId origin, const DataPacket& pkt);
    void drop_buffered(NodeId origin, NodeId dest, DropReason reason);

    // watchdog: the upstream node observes whether its chosen next hop
    // retransmits within the timeout
    void arm_watchdog(std::uint64_t uid, NodeId observer, NodeId subject);
    void confirm_forwarding(std::uint64_t uid, NodeId subject);
    void watchdog_expire(std::uint64_t uid, NodeId subject);

    // INESH overlay
    bool inesh_rejects(NodeId observer, NodeId candidate);
    PathResult inesh_snapshot_path(NodeId self, NodeId dest);
    void inesh_discovery_hook(NodeId origin, NodeId dest);

    bool neighbors_contain(NodeId u, NodeId v) const;

    // --- AODV ---
    bool aodv_route_usable(NodeId self, NodeId dest);
    void aodv_ensure_discovery(NodeId origin, NodeId dest);
    void aodv_send_rreq(NodeId origin, NodeId dest);
    void aodv_retry_timer(NodeId origin, NodeId dest);
    void aodv_handle_rreq(NodeId self, const ControlMessage& msg, NodeId from);
    void aodv_handle_rrep(NodeId self, const ControlMessage& msg, NodeId from);
    void aodv_handle_rerr(NodeId self, const ControlMessage& msg, NodeId from);
    void aodv_forward_data(NodeId self, DataPacket pkt, NodeId prev_hop);
    void aodv_install_route(NodeId self, NodeId dest, NodeId next_hop,
                            int hop_count, std::uint32_t dest_seq);
    void aodv_invalidate_via(NodeId self, NodeId broken_next_hop);
    void aodv_send_rerr(NodeId self, const std::map<NodeId, std::set<NodeId>>&
                                         dest_to_precursors);
    void aodv_flush_buffer(NodeId origin, NodeId dest);
    void aodv_bump_seq(NodeId self, std::uint32_t at_least);

    // --- DSR ---
    void dsr_originate(NodeId origin, DataPacket pkt);
    void dsr_ensure_discovery(NodeId origin, NodeId dest);
    void dsr_send_rreq(NodeId origin, NodeId dest);
    void dsr_retry_timer(NodeId origin, NodeId dest);
    void dsr_handle_rreq(NodeId self, const ControlMessage& msg, NodeId from);
    void dsr_handle_rrep(NodeId self, const ControlMessage& msg, NodeId from);
    void dsr_handle_rerr(NodeId self, const ControlMessage& msg, NodeId from);
    void dsr_forward_data(NodeId self, DataPacket pkt, NodeId prev_hop);
    bool dsr_cache_insert(NodeId self, const std::vector<NodeId>& route);
    std::optional<std::vector<NodeId>> dsr_pick_route(NodeId self, NodeId dest);
    void dsr_purge_link(NodeId self, NodeId from, NodeId to);
    void dsr_purge_via(NodeId self, NodeId subject);
    void dsr_send_rerr(NodeId self, const DataPacket& pkt, NodeId broken_to);
    void dsr_flush_buffer(NodeId origin, NodeId dest);

    void dump_tables();
    void finalize(MetricsReport& report);

    // --- state ---
    ScenarioConfig cfg_;
    std::vector<Flow> flows_;
    Scheduler sched_;
    MobilityModel mobility_model_;
    RadioModel radio_;
    RngStream rng_mobility_;
    RngStream rng_traffic_;
    RngStream rng_adversary_;

    std::vector<MobileNode> nodes_;            // index 0 unused
    std::vector<std::vector<NodeId>> nbrs_;    // recomputed every tick
    TrustTable trust_;
    AdversaryAssignment adversary_;
    std::map<NodeId, AodvState> aodv_;
    std::map<NodeId, DsrState> dsr_;
    std::map<NodeId, std::map<NodeId, std::deque<DataPacket>>> buffers_;

    // watchdog bookkeeping: (packet uid, watched subject) -> observer
    std::map<std::pair<std::uint64_t, NodeId>, NodeId> pending_watch_;

    std::map<std::uint64_t, PacketRecord> registry_;
    std::uint64_t next_uid_ = 0;

    // metrics accumulators
    std::int64_t sent_ = 0;
    std::int64_t delivered_ = 0;
    std::int64_t control_tx_ = 0;
    double delay_sum_ = 0.0;
    std::map<DropReason, std::int64_t> drops_;
    std::vector<DeliveryRecord> deliveries_;

    std::vector<std::string> delivery_trace_;
    std::vector<std::string> drop_log_;
    std::ostream* trace_ = nullptr;
    std::vector<SimTime> dump_times_;
    std::string table_dump_;
    int invariant_violations_ = 0;
    bool ran_ = false;
};

// Harness entry point: validates the flow spec, builds a simulation with
// seeded uniform placement, runs it and returns the report.
MetricsReport run_scenario(const ScenarioConfig& cfg);

}  // namespace manet

#endif
