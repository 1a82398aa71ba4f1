#ifndef MANET_ADVERSARY_HPP
#define MANET_ADVERSARY_HPP

#include <map>
#include <optional>
#include <vector>

#include "manet/graph.hpp"
#include "manet/packets.hpp"
#include "manet/rng.hpp"

namespace manet {

enum class MaliciousKind { Blackhole, Dropper };

struct MaliciousProfile {
    MaliciousKind kind = MaliciousKind::Blackhole;
    double drop_probability = 1.0;  // Dropper only
    std::uint32_t seq_inflation = 100;  // Blackhole: claimed freshness boost
    int hop_claim = 1;                  // Blackhole: claimed distance to dest
};

enum class DropDecision { Forward, Drop };

// Which nodes behave maliciously in a scenario. Flow endpoints are never
// assigned so measured effects are attributable to routing.
class AdversaryAssignment {
  public:
    AdversaryAssignment() = default;

    void assign(NodeId node, MaliciousProfile profile);

    // Draws round(fraction * n) nodes from 1..n excluding `protected_nodes`,
    // using the adversary random stream. Explicit assignments stay in place.
    void draw_random(int node_count, double fraction, MaliciousProfile profile,
                     const std::vector<NodeId>& protected_nodes,
                     RngStream& rng);

    bool is_malicious(NodeId node) const;
    std::optional<MaliciousProfile> profile(NodeId node) const;
    std::vector<NodeId> assigned_nodes() const;
    bool empty() const { return profiles_.empty(); }

  private:
    std::map<NodeId, MaliciousProfile> profiles_;
};

// Blackhole answer to a route request: an immediate reply claiming an
// inflated destination sequence number and a short hop count, which pulls
// the flow toward the attacker.
ControlMessage blackhole_forge_aodv_rrep(const MaliciousProfile& profile,
                                         NodeId self,
                                         const ControlMessage& rreq);

// DSR flavor: a reply whose route pretends the attacker is one hop from the
// destination.
ControlMessage blackhole_forge_dsr_rrep(const MaliciousProfile& profile,
                                        NodeId self,
                                        const ControlMessage& rreq);

// Data-plane decision at an assigned node. Blackholes drop every data
// packet; droppers drop with their configured probability (control packets
// never reach this path: droppers stay route-visible and blackholes answer
// route requests themselves).
DropDecision maybe_drop(const MaliciousProfile& profile, const DataPacket& pkt,
                        RngStream& rng);

}  // namespace manet

#endif
