#ifndef MANET_EVENT_QUEUE_HPP
#define MANET_EVENT_QUEUE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <vector>

#include "manet/graph.hpp"

namespace manet {

using SimTime = double;  // seconds

enum class EventKind {
    PacketArrival,
    TimerExpiry,
    MobilityUpdate,
    TrafficGeneration,
};

const char* event_kind_name(EventKind kind);

struct FiredEvent {
    SimTime fire_at = 0.0;
    std::uint64_t seq = 0;  // FIFO tie-break among equal fire times
    EventKind kind = EventKind::TimerExpiry;
    NodeId node = 0;
};

// Deterministic event queue: events dequeue by (fire_at, seq), the clock
// never runs backwards, and scheduling into the past signals a logic bug.
class Scheduler {
  public:
    SimTime now() const { return now_; }
    bool empty() const { return queue_.empty(); }
    std::size_t pending() const { return queue_.size(); }

    std::optional<SimTime> next_fire_time() const {
        if (queue_.empty()) {
            return std::nullopt;
        }
        return queue_.top().fire_at;
    }

    // Invoked for every dequeued event before its action runs; used for
    // event-trace logging.
    void set_observer(std::function<void(const FiredEvent&)> observer) {
        observer_ = std::move(observer);
    }

    void schedule(SimTime fire_at, EventKind kind, NodeId node,
                  std::function<void()> action);

    // Dequeues and runs the next event; advances the clock to its fire time.
    // Returns the end-of-simulation marker (nullopt) when the queue is empty.
    std::optional<FiredEvent> step();

    // Runs every event strictly before `horizon`, then pins the clock to it.
    // Events scheduled at or after the horizon stay queued (in flight).
    void run_until(SimTime horizon);

  private:
    struct Entry {
        SimTime fire_at;
        std::uint64_t seq;
        EventKind kind;
        NodeId node;
        std::function<void()> action;

        bool operator>(const Entry& other) const {
            if (fire_at != other.fire_at) {
                return fire_at > other.fire_at;
            }
            return seq > other.seq;
        }
    };

    SimTime now_ = 0.0;
    std::uint64_t next_seq_ = 0;
    std::function<void(const FiredEvent&)> observer_;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue_;
};

}  // namespace manet

#endif
