// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Thresholds are fixed here, not tuned at runtime.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "manet/campaign.hpp"
#include "manet/inesh.hpp"
#include "manet/rng.hpp"
#include "manet/simulation.hpp"
#include "manet/trust.hpp"

using namespace manet;

namespace {

int g_failures = 0;

void report(int number, bool ok, const std::string& what) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", number,
                what.c_str());
    if (!ok) {
        ++g_failures;
    }
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    return values[values.size() / 2];
}

// --- 1: oracle equivalence over 1000 random instances ----------------------

bool oracle_equivalence() {
    RngStream rng(0xC0FFEE);
    const double thresholds[] = {0.0, 0.3, 0.5, 0.8, 1.0};
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = rng.uniform_int(4, 12);
        const double density = rng.uniform(0.2, 0.8);
        Graph g(n);
        for (NodeId u = 1; u <= n; ++u) {
            for (NodeId w = u + 1; w <= n; ++w) {
                if (rng.bernoulli(density)) {
                    // dyadic costs: path sums are exact, == comparison is fair
                    const double cost = rng.bernoulli(0.5)
                                            ? 1.0
                                            : 0.25 * rng.uniform_int(1, 16);
                    g.add_edge(u, w, cost);
                }
            }
        }
        TrustTable table;
        for (NodeId v = 2; v <= n; ++v) {
            if (rng.bernoulli(0.8)) {
                table.set(1, v, rng.uniform01());
            }
            if (rng.bernoulli(0.5)) {
                table.add_observation(
                    1, v,
                    {rng.bernoulli(0.5) ? ObservationKind::Negative
                                        : ObservationKind::Positive,
                     0.0});
            }
        }
        const double threshold = thresholds[trial % 5];
        PathResult fast = inesh_search(g, table, 1, n, threshold);
        PathResult truth = oracle_search(g, table, 1, n, threshold);
        if (fast.total_cost != truth.total_cost ||
            fast.excluded != truth.excluded) {
            return false;
        }
    }
    return true;
}

// --- 2: trust bounds --------------------------------------------------------

bool trust_bounds() {
    RngStream rng(0xBEEF);
    TrustTable table;
    for (int i = 0; i < 10000; ++i) {
        const NodeId observer = rng.uniform_int(1, 40);
        NodeId subject = rng.uniform_int(1, 40);
        if (subject == observer) {
            subject = observer % 40 + 1;
        }
        const double value = table.update(
            observer, subject,
            rng.bernoulli(0.5) ? TrustOutcome::Reward : TrustOutcome::Penalize,
            static_cast<double>(i) * 0.01);
        if (value < 0.0 || value > 1.0) {
            return false;
        }
    }
    return table.all_in_bounds();
}

// --- 3: filter no-op reduction ----------------------------------------------

bool filter_noop_reduction() {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        ScenarioConfig cfg;  // Table-1 defaults: 35 nodes, aodv
        cfg.seed = seed;
        cfg.trust_init = 1.0;

        ScenarioConfig overlay = cfg;
        overlay.inesh_enabled = true;

        Simulation base(cfg);
        Simulation enhanced(overlay);
        base.run();
        enhanced.run();
        if (base.delivery_trace() != enhanced.delivery_trace()) {
            return false;
        }
    }
    return true;
}

// --- 4: determinism of the CSV artifacts -------------------------------------

bool artifact_determinism() {
    ScenarioConfig cfg;
    cfg.node_count = 50;
    cfg.malicious_fraction = 0.1;
    cfg.seed = 7;
    CampaignResult a = run_single(cfg);
    CampaignResult b = run_single(cfg);
    return a.summary_csv() == b.summary_csv() &&
           a.throughput_csv() == b.throughput_csv();
}

// --- 5: packet conservation over a 40-run campaign ---------------------------

bool packet_conservation() {
    CampaignSpec spec;
    spec.base.duration_s = 20.0;
    spec.base.malicious_fraction = 0.1;
    spec.node_counts = {35, 40, 45, 50};
    spec.protocols = {Protocol::Aodv, Protocol::Dsr};
    spec.seeds = {1, 2, 3, 4, 5};
    CampaignResult result = run_campaign(spec);
    if (result.runs.size() != 40) {
        return false;
    }
    for (const auto& run : result.runs) {
        const MetricsReport& m = run.metrics;
        if (m.sent !=
            m.delivered + m.dropped + m.in_flight_at_horizon) {
            return false;
        }
    }
    return true;
}

// --- 6/7/8: adversary campaigns ----------------------------------------------

struct AdversaryCampaign {
    // [protocol][variant] -> per-seed reports at 50 nodes
    std::vector<MetricsReport> clean50[2];
    std::vector<MetricsReport> bh50[2];
    std::vector<MetricsReport> inesh50[2];
    std::vector<MetricsReport> bh35[2];
};

ScenarioConfig adversary_config(Protocol proto, int nodes, bool blackholes,
                                bool inesh, std::uint64_t seed) {
    ScenarioConfig cfg;
    cfg.node_count = nodes;
    cfg.protocol = proto;
    cfg.seed = seed;
    cfg.malicious_fraction = blackholes ? 0.1 : 0.0;
    cfg.inesh_enabled = inesh;
    return cfg;
}

AdversaryCampaign run_adversary_campaign() {
    AdversaryCampaign out;
    const Protocol protocols[] = {Protocol::Aodv, Protocol::Dsr};
    for (int p = 0; p < 2; ++p) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            out.clean50[p].push_back(
                run_scenario(adversary_config(protocols[p], 50, false, false, seed)));
            out.bh50[p].push_back(
                run_scenario(adversary_config(protocols[p], 50, true, false, seed)));
            out.inesh50[p].push_back(
                run_scenario(adversary_config(protocols[p], 50, true, true, seed)));
            out.bh35[p].push_back(
                run_scenario(adversary_config(protocols[p], 35, true, false, seed)));
        }
    }
    return out;
}

std::vector<double> pdrs(const std::vector<MetricsReport>& reports) {
    std::vector<double> out;
    for (const auto& m : reports) {
        out.push_back(m.pdr);
    }
    return out;
}

std::vector<double> final_cumulative_bits(
    const std::vector<MetricsReport>& reports) {
    std::vector<double> out;
    for (const auto& m : reports) {
        out.push_back(m.throughput_series.empty()
                          ? 0.0
                          : static_cast<double>(
                                m.throughput_series.back().cumulative_bits));
    }
    return out;
}

bool blackhole_efficacy(const AdversaryCampaign& c) {
    for (int p = 0; p < 2; ++p) {
        if (!(median(pdrs(c.bh50[p])) < median(pdrs(c.clean50[p])))) {
            return false;
        }
    }
    return true;
}

bool inesh_benefit(const AdversaryCampaign& c) {
    for (int p = 0; p < 2; ++p) {
        if (!(median(pdrs(c.inesh50[p])) > median(pdrs(c.bh50[p])))) {
            return false;
        }
    }
    return true;
}

bool throughput_trends(const AdversaryCampaign& c) {
    // cumulative throughput must be non-decreasing within every run
    auto monotone = [](const std::vector<MetricsReport>& reports) {
        for (const auto& m : reports) {
            std::int64_t last = 0;
            for (const auto& point : m.throughput_series) {
                if (point.cumulative_bits < last) {
                    return false;
                }
                last = point.cumulative_bits;
            }
        }
        return true;
    };
    for (int p = 0; p < 2; ++p) {
        if (!monotone(c.clean50[p]) || !monotone(c.bh50[p]) ||
            !monotone(c.inesh50[p]) || !monotone(c.bh35[p])) {
            return false;
        }
        // denser networks offer more alternate routes: the median final
        // cumulative throughput at 50 nodes must not fall below 35 nodes
        if (median(final_cumulative_bits(c.bh50[p])) <
            median(final_cumulative_bits(c.bh35[p]))) {
            return false;
        }
    }
    return true;
}

// --- 9: desk-scale runtime ----------------------------------------------------

bool desk_scale_runtime(double* seconds_out) {
    ScenarioConfig cfg;
    cfg.node_count = 50;
    cfg.duration_s = 300.0;
    cfg.seed = 13;
    const auto start = std::chrono::steady_clock::now();
    MetricsReport m = run_scenario(cfg);
    const auto stop = std::chrono::steady_clock::now();
    const double seconds =
        std::chrono::duration<double>(stop - start).count();
    *seconds_out = seconds;
    return seconds < 60.0 && m.sent > 0;
}

}  // namespace

int main() {
    {
        const auto start = std::chrono::steady_clock::now();
        const bool ok = oracle_equivalence();
        const double secs = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - start)
                                .count();
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "oracle equivalence on 1000 random instances (%.1fs)",
                      secs);
        report(1, ok && secs < 30.0, buf);
    }
    report(2, trust_bounds(), "trust stays in [0,1] over 10000 updates");
    report(3, filter_noop_reduction(),
           "full-trust overlay reproduces baseline delivery traces (5 seeds)");
    report(4, artifact_determinism(),
           "summary.csv and throughput.csv are byte-identical across reruns");
    report(5, packet_conservation(),
           "sent == delivered + dropped + in-flight over a 40-run campaign");

    const AdversaryCampaign campaign = run_adversary_campaign();
    report(6, blackhole_efficacy(campaign),
           "blackholes strictly lower median baseline PDR (aodv, dsr)");
    report(7, inesh_benefit(campaign),
           "trust overlay strictly raises median PDR under blackholes");
    report(8, throughput_trends(campaign),
           "cumulative throughput monotone; 50-node median >= 35-node median");

    {
        double seconds = 0.0;
        const bool ok = desk_scale_runtime(&seconds);
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "300 s simulated, 50 nodes in %.1f s wall clock (< 60 s)",
                      seconds);
        report(9, ok, buf);
    }

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
