#include "manet/event_queue.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace manet {

const char* event_kind_name(EventKind kind) {
    switch (kind) {
        case EventKind::PacketArrival:
            return "packet_arrival";
        case EventKind::TimerExpiry:
            return "timer_expiry";
        case EventKind::MobilityUpdate:
            return "mobility_update";
        case EventKind::TrafficGeneration:
            return "traffic_generation";
    }
    return "unknown";
}

void Scheduler::schedule(SimTime fire_at, EventKind kind, NodeId node,
                         std::function<void()> action) {
    if (fire_at < now_) {
        throw std::logic_error("scheduler: event at t=" +
                               std::to_string(fire_at) +
                               " is in the past (now=" + std::to_string(now_) +
                               ")");
    }
    queue_.push(Entry{fire_at, next_seq_++, kind, node, std::move(action)});
}

std::optional<FiredEvent> Scheduler::step() {
    if (queue_.empty()) {
        return std::nullopt;
    }
    // priority_queue::top is const; the entry is copied out before popping so
    // the action can be run after the queue mutation.
    Entry entry = queue_.top();
    queue_.pop();
    now_ = entry.fire_at;
    FiredEvent fired{entry.fire_at, entry.seq, entry.kind, entry.node};
    if (observer_) {
        observer_(fired);
    }
    if (entry.action) {
        entry.action();
    }
    return fired;
}

void Scheduler::run_until(SimTime horizon) {
    while (!queue_.empty() && queue_.top().fire_at < horizon) {
        step();
    }
    if (horizon > now_) {
        now_ = horizon;
    }
}

}  // namespace manet
