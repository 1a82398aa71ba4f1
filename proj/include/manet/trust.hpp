#ifndef MANET_TRUST_HPP
#define MANET_TRUST_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "manet/graph.hpp"

namespace manet {

enum class ObservationKind { Positive, Negative };

enum class TrustOutcome { Reward, Penalize };

// A first-hand record: the observer watched the subject either forward an
// entrusted packet (Positive) or fail to (Negative).
struct Observation {
    ObservationKind kind = ObservationKind::Positive;
    double sim_time = 0.0;  // seconds
};

struct TrustParams {
    double initial = 0.5;  // score assumed for pairs never observed
    double reward = 0.1;   // added on Reward
    double penalty = 0.2;  // subtracted on Penalize
};

// Per-(observer, subject) trust scores in [0,1] plus the observation history
// backing them. One table can hold every node's first-hand view; each node
// only ever reads and writes its own observer rows.
class TrustTable {
  public:
    TrustTable() = default;
    explicit TrustTable(TrustParams params) : params_(params) {}

    const TrustParams& params() const { return params_; }

    // Missing entries read as the configured initial trust.
    double get(NodeId observer, NodeId subject) const;

    // Direct assignment, clamped to [0,1]. No observation is recorded.
    void set(NodeId observer, NodeId subject, double value);

    // Applies the reward/penalty delta, clamps to [0,1], appends the matching
    // observation, and returns the new score.
    double update(NodeId observer, NodeId subject, TrustOutcome outcome,
                  double sim_time);

    std::optional<Observation> last_observation(NodeId observer,
                                                NodeId subject) const;

    const std::vector<Observation>& observations(NodeId observer,
                                                 NodeId subject) const;

    void add_observation(NodeId observer, NodeId subject, Observation obs);

    std::size_t entry_count() const { return entries_.size(); }

    // True when every stored score lies in [0,1].
    bool all_in_bounds() const;

  private:
    struct Entry {
        double value = 0.5;
        std::vector<Observation> history;
    };

    using Key = std::pair<NodeId, NodeId>;

    Entry& entry(NodeId observer, NodeId subject);

    TrustParams params_;
    std::map<Key, Entry> entries_;
};

}  // namespace manet

#endif
