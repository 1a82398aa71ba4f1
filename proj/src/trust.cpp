#include "manet/trust.hpp"

#include <algorithm>

namespace manet {

namespace {
double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

const std::vector<Observation> kNoObservations;
}  // namespace

double TrustTable::get(NodeId observer, NodeId subject) const {
    auto it = entries_.find({observer, subject});
    return it == entries_.end() ? params_.initial : it->second.value;
}

void TrustTable::set(NodeId observer, NodeId subject, double value) {
    entry(observer, subject).value = clamp01(value);
}

double TrustTable::update(NodeId observer, NodeId subject, TrustOutcome outcome,
                          double sim_time) {
    Entry& e = entry(observer, subject);
    if (outcome == TrustOutcome::Reward) {
        e.value = clamp01(e.value + params_.reward);
        e.history.push_back({ObservationKind::Positive, sim_time});
    } else {
        e.value = clamp01(e.value - params_.penalty);
        e.history.push_back({ObservationKind::Negative, sim_time});
    }
    return e.value;
}

std::optional<Observation> TrustTable::last_observation(NodeId observer,
                                                        NodeId subject) const {
    auto it = entries_.find({observer, subject});
    if (it == entries_.end() || it->second.history.empty()) {
        return std::nullopt;
    }
    return it->second.history.back();
}

const std::vector<Observation>& TrustTable::observations(NodeId observer,
                                                         NodeId subject) const {
    auto it = entries_.find({observer, subject});
    return it == entries_.end() ? kNoObservations : it->second.history;
}

void TrustTable::add_observation(NodeId observer, NodeId subject,
                                 Observation obs) {
    entry(observer, subject).history.push_back(obs);
}

bool TrustTable::all_in_bounds() const {
    for (const auto& [key, e] : entries_) {
        if (e.value < 0.0 || e.value > 1.0) {
            return false;
        }
    }
    return true;
}

TrustTable::Entry& TrustTable::entry(NodeId observer, NodeId subject) {
    auto [it, inserted] = entries_.try_emplace({observer, subject});
    if (inserted) {
        it->second.value = params_.initial;
    }
    return it->second;
}

}  // namespace manet
