#include "manet/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

namespace manet {

const char* protocol_name(Protocol p) {
    return p == Protocol::Aodv ? "aodv" : "dsr";
}

std::vector<Flow> ScenarioConfig::resolved_flows() const {
    if (flows.has_value()) {
        return *flows;
    }
    return {Flow{1, node_count}};
}

std::vector<ScenarioConfig> CampaignSpec::expand() const {
    const std::vector<int> ncs =
        node_counts.empty() ? std::vector<int>{base.node_count} : node_counts;
    const std::vector<Protocol> protos =
        protocols.empty() ? std::vector<Protocol>{base.protocol} : protocols;
    const std::vector<bool> modes =
        inesh_modes.empty() ? std::vector<bool>{base.inesh_enabled}
                            : inesh_modes;
    const std::vector<std::uint64_t> sds =
        seeds.empty() ? std::vector<std::uint64_t>{base.seed} : seeds;

    std::vector<ScenarioConfig> runs;
    for (int nc : ncs) {
        for (Protocol p : protos) {
            for (bool inesh : modes) {
                for (std::uint64_t seed : sds) {
                    ScenarioConfig c = base;
                    c.node_count = nc;
                    c.protocol = p;
                    c.inesh_enabled = inesh;
                    c.seed = seed;
                    runs.push_back(c);
                }
            }
        }
    }
    return runs;
}

namespace {

struct RawEntry {
    std::string value;
    int line = 0;
};

// key -> (value, line). Keys are unique across sections; a repeated key is
// rejected so a config cannot silently override itself.
using RawConfig = std::map<std::string, RawEntry>;

[[noreturn]] void fail(const std::string& key, int line,
                       const std::string& what) {
    throw ConfigError("config error: " + key + ": " + what + " (line " +
                      std::to_string(line) + ")");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string piece;
    std::istringstream in(s);
    while (std::getline(in, piece, sep)) {
        parts.push_back(trim(piece));
    }
    return parts;
}

const std::vector<std::string> kScenarioKeys = {
    "node_count",   "terrain_x_m",   "terrain_y_m",
    "range_m",      "max_speed_mps", "data_rate_pps",
    "payload_bytes", "control_bits",  "duration_s",
    "seed",         "protocol",      "inesh_enabled",
    "trust_threshold", "trust_init", "trust_reward",
    "trust_penalty"};
const std::vector<std::string> kAdversaryKeys = {"malicious_fraction",
                                                 "malicious_nodes"};
const std::vector<std::string> kFlowKeys = {"flows"};
const std::vector<std::string> kCampaignKeys = {"node_counts", "protocols",
                                                "inesh_modes", "seeds"};

bool contains(const std::vector<std::string>& keys, const std::string& k) {
    return std::find(keys.begin(), keys.end(), k) != keys.end();
}

RawConfig tokenize(const std::string& text, bool allow_campaign) {
    RawConfig raw;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                fail(line, line_no, "malformed section header");
            }
            const std::string section = lower(trim(line.substr(1, line.size() - 2)));
            const bool known = section == "scenario" || section == "adversary" ||
                               section == "flows" ||
                               (allow_campaign && section == "campaign");
            if (!known) {
                fail(section, line_no, "unknown section");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            fail(line, line_no, "expected key = value");
        }
        const std::string key = lower(trim(line.substr(0, eq)));
        const std::string value = trim(line.substr(eq + 1));
        const bool known = contains(kScenarioKeys, key) ||
                           contains(kAdversaryKeys, key) ||
                           contains(kFlowKeys, key) ||
                           (allow_campaign && contains(kCampaignKeys, key));
        if (!known) {
            fail(key, line_no, "unknown key");
        }
        if (raw.count(key)) {
            fail(key, line_no, "duplicate key");
        }
        raw[key] = {value, line_no};
    }
    return raw;
}

double parse_double(const std::string& key, const RawEntry& e) {
    const std::string v = trim(e.value);
    double out = 0.0;
    const auto [ptr, ec] =
        std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        fail(key, e.line, "expected a number, got '" + v + "'");
    }
    if (!std::isfinite(out)) {
        fail(key, e.line, "value must be finite");
    }
    return out;
}

long long parse_int(const std::string& key, const RawEntry& e) {
    const std::string v = trim(e.value);
    long long out = 0;
    const auto [ptr, ec] =
        std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        fail(key, e.line, "expected an integer, got '" + v + "'");
    }
    return out;
}

std::uint64_t parse_u64(const std::string& key, const RawEntry& e) {
    const std::string v = trim(e.value);
    std::uint64_t out = 0;
    const auto [ptr, ec] =
        std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        fail(key, e.line, "expected an unsigned integer, got '" + v + "'");
    }
    return out;
}

bool parse_bool(const std::string& key, const RawEntry& e) {
    const std::string v = lower(trim(e.value));
    if (v == "true" || v == "1" || v == "yes" || v == "on") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no" || v == "off") {
        return false;
    }
    fail(key, e.line, "expected true/false, got '" + v + "'");
}

Protocol parse_protocol(const std::string& key, const RawEntry& e) {
    const std::string v = lower(trim(e.value));
    if (v == "aodv") {
        return Protocol::Aodv;
    }
    if (v == "dsr") {
        return Protocol::Dsr;
    }
    fail(key, e.line, "expected aodv or dsr, got '" + v + "'");
}

std::vector<Flow> parse_flows(const std::string& key, const RawEntry& e) {
    std::vector<Flow> flows;
    const std::string v = trim(e.value);
    if (v.empty() || lower(v) == "none") {
        return flows;
    }
    for (const std::string& part : split(v, ',')) {
        const auto arrow = part.find("->");
        if (arrow == std::string::npos) {
            fail(key, e.line, "expected src->dest pairs, got '" + part + "'");
        }
        Flow f;
        const std::string src = trim(part.substr(0, arrow));
        const std::string dst = trim(part.substr(arrow + 2));
        try {
            f.src = std::stoi(src);
            f.dest = std::stoi(dst);
        } catch (const std::exception&) {
            fail(key, e.line, "bad flow endpoint in '" + part + "'");
        }
        flows.push_back(f);
    }
    return flows;
}

template <typename T, typename Fn>
std::vector<T> parse_list(const std::string& key, const RawEntry& e, Fn item) {
    std::vector<T> out;
    const std::string v = trim(e.value);
    if (v.empty() || lower(v) == "none") {
        return out;
    }
    for (const std::string& part : split(v, ',')) {
        out.push_back(item(key, RawEntry{part, e.line}));
    }
    return out;
}

void validate(const ScenarioConfig& c,
              const std::map<std::string, int>& lines) {
    auto line_of = [&lines](const std::string& key) {
        auto it = lines.find(key);
        return it == lines.end() ? 0 : it->second;
    };
    auto check = [&](bool ok, const std::string& key, const std::string& msg) {
        if (!ok) {
            fail(key, line_of(key), msg);
        }
    };
    check(c.node_count >= 1, "node_count", "must be >= 1");
    check(c.terrain_x_m > 0, "terrain_x_m", "must be > 0");
    check(c.terrain_y_m > 0, "terrain_y_m", "must be > 0");
    check(c.range_m > 0, "range_m", "must be > 0");
    check(c.max_speed_mps >= 0 && c.max_speed_mps <= 20.0, "max_speed_mps",
          "must be in [0, 20]");
    check(c.data_rate_pps > 0, "data_rate_pps", "must be > 0");
    check(c.payload_bytes > 0, "payload_bytes", "must be > 0");
    check(c.control_bits > 0, "control_bits", "must be > 0");
    check(c.duration_s > 0, "duration_s", "must be > 0");
    check(c.trust_threshold >= 0 && c.trust_threshold <= 1, "trust_threshold",
          "must be in [0, 1]");
    check(c.trust_init >= 0 && c.trust_init <= 1, "trust_init",
          "must be in [0, 1]");
    check(c.trust_reward >= 0 && c.trust_reward <= 1, "trust_reward",
          "must be in [0, 1]");
    check(c.trust_penalty >= 0 && c.trust_penalty <= 1, "trust_penalty",
          "must be in [0, 1]");
    check(c.malicious_fraction >= 0 && c.malicious_fraction <= 1,
          "malicious_fraction", "must be in [0, 1]");
    for (NodeId id : c.malicious_nodes) {
        check(id >= 1 && id <= c.node_count, "malicious_nodes",
              "node " + std::to_string(id) + " outside 1.." +
                  std::to_string(c.node_count));
    }
    if (c.flows.has_value()) {
        for (const Flow& f : *c.flows) {
            check(f.src >= 1 && f.src <= c.node_count, "flows",
                  "flow source " + std::to_string(f.src) + " outside 1.." +
                      std::to_string(c.node_count));
            check(f.dest >= 1 && f.dest <= c.node_count, "flows",
                  "flow destination " + std::to_string(f.dest) +
                      " outside 1.." + std::to_string(c.node_count));
        }
    }
}

ScenarioConfig from_raw(const RawConfig& raw) {
    ScenarioConfig c;
    std::map<std::string, int> lines;
    for (const auto& [key, entry] : raw) {
        lines[key] = entry.line;
        if (key == "node_count") {
            c.node_count = static_cast<int>(parse_int(key, entry));
        } else if (key == "terrain_x_m") {
            c.terrain_x_m = parse_double(key, entry);
        } else if (key == "terrain_y_m") {
            c.terrain_y_m = parse_double(key, entry);
        } else if (key == "range_m") {
            c.range_m = parse_double(key, entry);
        } else if (key == "max_speed_mps") {
            c.max_speed_mps = parse_double(key, entry);
        } else if (key == "data_rate_pps") {
            c.data_rate_pps = parse_double(key, entry);
        } else if (key == "payload_bytes") {
            c.payload_bytes = static_cast<int>(parse_int(key, entry));
        } else if (key == "control_bits") {
            c.control_bits = static_cast<int>(parse_int(key, entry));
        } else if (key == "duration_s") {
            c.duration_s = parse_double(key, entry);
        } else if (key == "seed") {
            c.seed = parse_u64(key, entry);
        } else if (key == "protocol") {
            c.protocol = parse_protocol(key, entry);
        } else if (key == "inesh_enabled") {
            c.inesh_enabled = parse_bool(key, entry);
        } else if (key == "trust_threshold") {
            c.trust_threshold = parse_double(key, entry);
        } else if (key == "trust_init") {
            c.trust_init = parse_double(key, entry);
        } else if (key == "trust_reward") {
            c.trust_reward = parse_double(key, entry);
        } else if (key == "trust_penalty") {
            c.trust_penalty = parse_double(key, entry);
        } else if (key == "malicious_fraction") {
            c.malicious_fraction = parse_double(key, entry);
        } else if (key == "malicious_nodes") {
            c.malicious_nodes = parse_list<NodeId>(
                key, entry, [](const std::string& k, const RawEntry& e) {
                    return static_cast<NodeId>(parse_int(k, e));
                });
        } else if (key == "flows") {
            c.flows = parse_flows(key, entry);
        }
    }
    validate(c, lines);
    return c;
}

std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::fixed);
    return std::string(buf, res.ptr);
}

std::string fmt_flows(const std::vector<Flow>& flows) {
    if (flows.empty()) {
        return "none";
    }
    std::string out;
    for (std::size_t i = 0; i < flows.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += std::to_string(flows[i].src) + "->" +
               std::to_string(flows[i].dest);
    }
    return out;
}

template <typename T, typename Fn>
std::string fmt_list(const std::vector<T>& items, Fn fmt) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += fmt(items[i]);
    }
    return out;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
    return from_raw(tokenize(text, /*allow_campaign=*/false));
}

std::string render_config(const ScenarioConfig& c) {
    std::ostringstream out;
    out << "[scenario]\n";
    out << "node_count = " << c.node_count << "\n";
    out << "terrain_x_m = " << fmt_double(c.terrain_x_m) << "\n";
    out << "terrain_y_m = " << fmt_double(c.terrain_y_m) << "\n";
    out << "range_m = " << fmt_double(c.range_m) << "\n";
    out << "max_speed_mps = " << fmt_double(c.max_speed_mps) << "\n";
    out << "data_rate_pps = " << fmt_double(c.data_rate_pps) << "\n";
    out << "payload_bytes = " << c.payload_bytes << "\n";
    out << "control_bits = " << c.control_bits << "\n";
    out << "duration_s = " << fmt_double(c.duration_s) << "\n";
    out << "seed = " << c.seed << "\n";
    out << "protocol = " << protocol_name(c.protocol) << "\n";
    out << "inesh_enabled = " << (c.inesh_enabled ? "true" : "false") << "\n";
    out << "trust_threshold = " << fmt_double(c.trust_threshold) << "\n";
    out << "trust_init = " << fmt_double(c.trust_init) << "\n";
    out << "trust_reward = " << fmt_double(c.trust_reward) << "\n";
    out << "trust_penalty = " << fmt_double(c.trust_penalty) << "\n";
    out << "\n[adversary]\n";
    out << "malicious_fraction = " << fmt_double(c.malicious_fraction) << "\n";
    if (!c.malicious_nodes.empty()) {
        out << "malicious_nodes = "
            << fmt_list(c.malicious_nodes,
                        [](NodeId id) { return std::to_string(id); })
            << "\n";
    }
    if (c.flows.has_value()) {
        out << "\n[flows]\n";
        out << "flows = " << fmt_flows(*c.flows) << "\n";
    }
    return out.str();
}

CampaignSpec parse_campaign(const std::string& text) {
    const RawConfig raw = tokenize(text, /*allow_campaign=*/true);
    RawConfig scenario_raw;
    CampaignSpec spec;
    for (const auto& [key, entry] : raw) {
        if (key == "node_counts") {
            spec.node_counts = parse_list<int>(
                key, entry, [](const std::string& k, const RawEntry& e) {
                    return static_cast<int>(parse_int(k, e));
                });
        } else if (key == "protocols") {
            spec.protocols = parse_list<Protocol>(key, entry, parse_protocol);
        } else if (key == "inesh_modes") {
            spec.inesh_modes = parse_list<bool>(key, entry, parse_bool);
        } else if (key == "seeds") {
            spec.seeds = parse_list<std::uint64_t>(key, entry, parse_u64);
        } else {
            scenario_raw[key] = entry;
        }
    }
    spec.base = from_raw(scenario_raw);
    return spec;
}

std::string render_campaign(const CampaignSpec& spec) {
    std::ostringstream out;
    out << render_config(spec.base);
    out << "\n[campaign]\n";
    if (!spec.node_counts.empty()) {
        out << "node_counts = "
            << fmt_list(spec.node_counts,
                        [](int v) { return std::to_string(v); })
            << "\n";
    }
    if (!spec.protocols.empty()) {
        out << "protocols = "
            << fmt_list(spec.protocols,
                        [](Protocol p) { return std::string(protocol_name(p)); })
            << "\n";
    }
    if (!spec.inesh_modes.empty()) {
        out << "inesh_modes = "
            << fmt_list(spec.inesh_modes,
                        [](bool b) { return std::string(b ? "true" : "false"); })
            << "\n";
    }
    if (!spec.seeds.empty()) {
        out << "seeds = "
            << fmt_list(spec.seeds,
                        [](std::uint64_t s) { return std::to_string(s); })
            << "\n";
    }
    return out.str();
}

}  // namespace manet
