#ifndef MANET_CONFIG_HPP
#define MANET_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "manet/graph.hpp"

namespace manet {

enum class Protocol { Aodv, Dsr };

const char* protocol_name(Protocol p);

struct Flow {
    NodeId src = 0;
    NodeId dest = 0;
    auto operator<=>(const Flow&) const = default;
};

// One scenario: topology scale, radio, traffic, trust knobs and adversary
// placement. Field defaults are the standard 35-node setup; duration and
// seed have no canonical value and simply default to 100 s / 1.
struct ScenarioConfig {
    int node_count = 35;
    double terrain_x_m = 500.0;
    double terrain_y_m = 550.0;
    double range_m = 150.0;
    double max_speed_mps = 20.0;
    double data_rate_pps = 4.0;
    int payload_bytes = 512;
    int control_bits = 120;
    double duration_s = 100.0;
    std::uint64_t seed = 1;
    Protocol protocol = Protocol::Aodv;
    bool inesh_enabled = false;
    double trust_threshold = 0.5;
    double trust_init = 0.5;
    double trust_reward = 0.1;
    double trust_penalty = 0.2;
    double malicious_fraction = 0.0;
    std::vector<NodeId> malicious_nodes;  // explicit ids, beats the fraction
    // Unset -> one flow from node 1 to node n; empty -> explicitly no flows.
    std::optional<std::vector<Flow>> flows;

    bool operator==(const ScenarioConfig&) const = default;

    std::vector<Flow> resolved_flows() const;
};

// Campaign: a base scenario plus sweep axes; the run set is the cross
// product. Empty axes fall back to the base config's value.
struct CampaignSpec {
    ScenarioConfig base;
    std::vector<int> node_counts;
    std::vector<Protocol> protocols;
    std::vector<bool> inesh_modes;
    std::vector<std::uint64_t> seeds;

    bool operator==(const CampaignSpec&) const = default;

    std::vector<ScenarioConfig> expand() const;
};

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Parses the flat `key = value` grammar ([scenario]/[adversary]/[flows]
// sections, `#` comments). Unknown keys, type mismatches and out-of-range
// values raise ConfigError naming the key and line; missing keys keep their
// defaults. parse_config(render_config(c)) == c for any valid c.
ScenarioConfig parse_config(const std::string& text);
std::string render_config(const ScenarioConfig& cfg);

// Campaign files use the same grammar plus a [campaign] section with keys
// node_counts, protocols, inesh_modes, seeds (comma-separated lists).
CampaignSpec parse_campaign(const std::string& text);
std::string render_campaign(const CampaignSpec& spec);

}  // namespace manet

#endif
