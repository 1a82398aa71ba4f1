#ifndef MANET_CAMPAIGN_HPP
#define MANET_CAMPAIGN_HPP

#include <string>
#include <vector>

#include "manet/config.hpp"
#include "manet/metrics.hpp"

namespace manet {

struct RunResult {
    std::string run_id;
    ScenarioConfig cfg;
    MetricsReport metrics;
};

struct CampaignResult {
    std::vector<RunResult> runs;

    // Byte-stable CSV bodies including header rows.
    std::string summary_csv() const;
    std::string throughput_csv() const;
};

std::string make_run_id(std::size_t index, const ScenarioConfig& cfg);

// Expands the sweep axes and runs every scenario in order; the result table
// is ordered by config index. Any scenario failure aborts with a message
// that echoes the failing config.
CampaignResult run_campaign(const CampaignSpec& spec);

// Single-scenario wrapper producing the same CSV artifacts.
CampaignResult run_single(const ScenarioConfig& cfg);

}  // namespace manet

#endif
