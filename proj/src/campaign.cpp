#include "manet/campaign.hpp"

#include <sstream>
#include <stdexcept>

#include "manet/simulation.hpp"

namespace manet {

std::string make_run_id(std::size_t index, const ScenarioConfig& cfg) {
    std::ostringstream id;
    id << 'r' << index << '_' << protocol_name(cfg.protocol) << "_n"
       << cfg.node_count << "_inesh" << (cfg.inesh_enabled ? 1 : 0) << "_s"
       << cfg.seed;
    return id.str();
}

std::string CampaignResult::summary_csv() const {
    std::ostringstream out;
    out << kSummaryCsvHeader << '\n';
    for (const auto& run : runs) {
        out << summary_csv_row(run.run_id, protocol_name(run.cfg.protocol),
                               run.cfg.inesh_enabled, run.cfg.node_count,
                               run.cfg.seed, run.cfg.duration_s, run.metrics)
            << '\n';
    }
    return out.str();
}

std::string CampaignResult::throughput_csv() const {
    std::ostringstream out;
    out << kThroughputCsvHeader << '\n';
    for (const auto& run : runs) {
        out << throughput_csv_rows(run.run_id, run.metrics);
    }
    return out.str();
}

CampaignResult run_campaign(const CampaignSpec& spec) {
    CampaignResult result;
    const std::vector<ScenarioConfig> configs = spec.expand();
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const ScenarioConfig& cfg = configs[i];
        try {
            RunResult run;
            run.run_id = make_run_id(i, cfg);
            run.cfg = cfg;
            run.metrics = run_scenario(cfg);
            result.runs.push_back(std::move(run));
        } catch (const std::exception& e) {
            throw std::runtime_error(std::string("campaign aborted: ") +
                                     e.what() + "\nfailing config:\n" +
                                     render_config(cfg));
        }
    }
    return result;
}

CampaignResult run_single(const ScenarioConfig& cfg) {
    CampaignSpec spec;
    spec.base = cfg;
    return run_campaign(spec);
}

}  // namespace manet
