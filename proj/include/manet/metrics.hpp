#ifndef MANET_METRICS_HPP
#define MANET_METRICS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "manet/event_queue.hpp"

namespace manet {

enum class DropReason { Blackhole, Dropper, NoRoute, LinkBreak };

const char* drop_reason_name(DropReason reason);

struct DeliveryRecord {
    SimTime time = 0.0;
    std::int64_t bits = 0;
};

struct ThroughputPoint {
    SimTime window_end = 0.0;
    double bits_per_s = 0.0;
    std::int64_t cumulative_bits = 0;
};

// Windowed throughput over half-open windows [k*w, (k+1)*w): a delivery
// exactly on a boundary counts toward the later window. Windows cover
// [0, horizon).
std::vector<ThroughputPoint> compute_throughput(
    const std::vector<DeliveryRecord>& deliveries, double window,
    double horizon);

struct MetricsReport {
    std::int64_t sent = 0;
    std::int64_t delivered = 0;
    std::int64_t dropped = 0;
    std::int64_t in_flight_at_horizon = 0;
    std::int64_t control_transmissions = 0;
    double pdr = 1.0;              // delivered/sent; 1.0 when nothing was sent
    double mean_delay_s = 0.0;     // over delivered packets; 0 when none
    double routing_overhead = 0.0; // control tx per delivered data packet
    std::map<DropReason, std::int64_t> drops_by_reason;
    std::vector<ThroughputPoint> throughput_series;

    std::int64_t drops(DropReason reason) const;

    // Canonical one-line scalar form, fixed decimal, for byte-stable output.
    std::string summary_line() const;
};

// Frozen CSV schema. The header row carries the schema version in its first
// column so golden files survive refactors.
extern const char* kSummaryCsvHeader;
extern const char* kThroughputCsvHeader;

std::string summary_csv_row(const std::string& run_id,
                            const std::string& protocol, bool inesh,
                            int node_count, std::uint64_t seed,
                            double duration_s, const MetricsReport& m);

std::string throughput_csv_rows(const std::string& run_id,
                                const MetricsReport& m);

// Fixed-decimal rendering used for every numeric CSV field ("inf" for
// infinities).
std::string csv_double(double v);

}  // namespace manet

#endif
