#include "manet/adversary.hpp"

#include <algorithm>
#include <cmath>

namespace manet {

void AdversaryAssignment::assign(NodeId node, MaliciousProfile profile) {
    profiles_[node] = profile;
}

void AdversaryAssignment::draw_random(int node_count, double fraction,
                                      MaliciousProfile profile,
                                      const std::vector<NodeId>& protected_nodes,
                                      RngStream& rng) {
    if (fraction <= 0.0) {
        return;  // no draws at all, so disabling the adversary is a no-op
    }
    std::vector<NodeId> eligible;
    for (NodeId id = 1; id <= node_count; ++id) {
        const bool shielded =
            std::find(protected_nodes.begin(), protected_nodes.end(), id) !=
            protected_nodes.end();
        if (!shielded && !profiles_.count(id)) {
            eligible.push_back(id);
        }
    }
    auto want = static_cast<std::size_t>(
        std::llround(fraction * static_cast<double>(node_count)));
    want = std::min(want, eligible.size());
    // Fisher-Yates prefix draw over the sorted eligible list.
    for (std::size_t i = 0; i < want; ++i) {
        const auto j = static_cast<std::size_t>(rng.uniform_int(
            static_cast<int>(i), static_cast<int>(eligible.size()) - 1));
        std::swap(eligible[i], eligible[j]);
        profiles_[eligible[i]] = profile;
    }
}

bool AdversaryAssignment::is_malicious(NodeId node) const {
    return profiles_.count(node) > 0;
}

std::optional<MaliciousProfile> AdversaryAssignment::profile(NodeId node) const {
    auto it = profiles_.find(node);
    if (it == profiles_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<NodeId> AdversaryAssignment::assigned_nodes() const {
    std::vector<NodeId> out;
    out.reserve(profiles_.size());
    for (const auto& [id, profile] : profiles_) {
        out.push_back(id);
    }
    return out;
}

ControlMessage blackhole_forge_aodv_rrep(const MaliciousProfile& profile,
                                         NodeId self,
                                         const ControlMessage& rreq) {
    ControlMessage rrep;
    rrep.kind = ControlKind::Rrep;
    rrep.origin = rreq.origin;
    rrep.target = rreq.target;
    rrep.request_id = rreq.request_id;
    rrep.dest_seq = rreq.dest_seq + profile.seq_inflation;
    rrep.hop_count = profile.hop_claim;
    rrep.size_bits = rreq.size_bits;
    (void)self;
    return rrep;
}

ControlMessage blackhole_forge_dsr_rrep(const MaliciousProfile& profile,
                                        NodeId self,
                                        const ControlMessage& rreq) {
    ControlMessage rrep;
    rrep.kind = ControlKind::Rrep;
    rrep.origin = rreq.origin;
    rrep.target = rreq.target;
    rrep.request_id = rreq.request_id;
    rrep.route = rreq.route;  // accumulated route ends at the attacker's
                              // upstream neighbor
    if (std::find(rrep.route.begin(), rrep.route.end(), self) ==
        rrep.route.end()) {
        rrep.route.push_back(self);
    }
    rrep.route.push_back(rreq.target);  // claimed one-hop link to the target
    rrep.hop_count = profile.hop_claim;
    rrep.size_bits = rreq.size_bits;
    return rrep;
}

DropDecision maybe_drop(const MaliciousProfile& profile, const DataPacket& pkt,
                        RngStream& rng) {
    (void)pkt;
    if (profile.kind == MaliciousKind::Blackhole) {
        return DropDecision::Drop;
    }
    return rng.bernoulli(profile.drop_probability) ? DropDecision::Drop
                                                   : DropDecision::Forward;
}

}  // namespace manet
