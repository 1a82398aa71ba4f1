#include "manet/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace manet {

const char* drop_reason_name(DropReason reason) {
    switch (reason) {
        case DropReason::Blackhole:
            return "blackhole";
        case DropReason::Dropper:
            return "dropper";
        case DropReason::NoRoute:
            return "noroute";
        case DropReason::LinkBreak:
            return "linkbreak";
    }
    return "unknown";
}

std::vector<ThroughputPoint> compute_throughput(
    const std::vector<DeliveryRecord>& deliveries, double window,
    double horizon) {
    if (window <= 0.0) {
        throw std::invalid_argument("compute_throughput: window must be > 0");
    }
    const std::size_t n_windows =
        static_cast<std::size_t>(std::ceil(horizon / window));
    std::vector<std::int64_t> bits(n_windows, 0);
    for (const auto& d : deliveries) {
        const auto idx = static_cast<std::size_t>(d.time / window);
        if (idx < n_windows) {
            bits[idx] += d.bits;
        }
    }
    std::vector<ThroughputPoint> series;
    series.reserve(n_windows);
    std::int64_t cumulative = 0;
    for (std::size_t i = 0; i < n_windows; ++i) {
        cumulative += bits[i];
        ThroughputPoint p;
        p.window_end = window * static_cast<double>(i + 1);
        p.bits_per_s = static_cast<double>(bits[i]) / window;
        p.cumulative_bits = cumulative;
        series.push_back(p);
    }
    return series;
}

std::int64_t MetricsReport::drops(DropReason reason) const {
    auto it = drops_by_reason.find(reason);
    return it == drops_by_reason.end() ? 0 : it->second;
}

std::string csv_double(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string MetricsReport::summary_line() const {
    std::ostringstream out;
    out << "sent=" << sent << " delivered=" << delivered
        << " dropped=" << dropped << " in_flight=" << in_flight_at_horizon
        << " pdr=" << csv_double(pdr) << " mean_delay_s=" << csv_double(mean_delay_s)
        << " overhead=" << csv_double(routing_overhead)
        << " control_tx=" << control_transmissions;
    return out.str();
}

const char* kSummaryCsvHeader =
    "schema_version,run_id,protocol,inesh,node_count,seed,duration_s,sent,"
    "delivered,dropped,in_flight,drop_blackhole,drop_dropper,drop_noroute,"
    "drop_linkbreak,control_tx,pdr,mean_delay_s,overhead,final_cumulative_bits";

const char* kThroughputCsvHeader =
    "schema_version,run_id,window_end_s,bits_per_s,cumulative_bits";

std::string summary_csv_row(const std::string& run_id,
                            const std::string& protocol, bool inesh,
                            int node_count, std::uint64_t seed,
                            double duration_s, const MetricsReport& m) {
    const std::int64_t final_bits = m.throughput_series.empty()
                                        ? 0
                                        : m.throughput_series.back().cumulative_bits;
    std::ostringstream out;
    out << 1 << ',' << run_id << ',' << protocol << ','
        << (inesh ? "true" : "false") << ',' << node_count << ',' << seed
        << ',' << csv_double(duration_s) << ',' << m.sent << ',' << m.delivered
        << ',' << m.dropped << ',' << m.in_flight_at_horizon << ','
        << m.drops(DropReason::Blackhole) << ',' << m.drops(DropReason::Dropper)
        << ',' << m.drops(DropReason::NoRoute) << ','
        << m.drops(DropReason::LinkBreak) << ',' << m.control_transmissions
        << ',' << csv_double(m.pdr) << ',' << csv_double(m.mean_delay_s) << ','
        << csv_double(m.routing_overhead) << ',' << final_bits;
    return out.str();
}

std::string throughput_csv_rows(const std::string& run_id,
                                const MetricsReport& m) {
    std::ostringstream out;
    for (const auto& p : m.throughput_series) {
        out << 1 << ',' << run_id << ',' << csv_double(p.window_end) << ','
            << csv_double(p.bits_per_s) << ',' << p.cumulative_bits << '\n';
    }
    return out.str();
}

}  // namespace manet
