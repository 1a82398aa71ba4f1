// manetsim: deterministic MANET simulator with AODV/DSR routing, blackhole
// adversaries and an optional trust-filtered neighbor-selection overlay.
//
//   manetsim simulate --config scenario.cfg --out results/ [--trace]
//   manetsim campaign --spec sweep.cfg --out results/
//
// Exit codes: 0 success, 1 configuration error, 2 runtime failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "manet/campaign.hpp"
#include "manet/config.hpp"
#include "manet/simulation.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw manet::ConfigError("config error: cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    out << content;
}

struct SimulateOptions {
    std::string config_path;
    std::string out_dir = ".";
    bool trace = false;
    // optional overrides
    std::string protocol;
    bool inesh = false;
    double duration = 0.0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool duration_set = false;
};

int do_simulate(const SimulateOptions& opt) {
    manet::ScenarioConfig cfg = manet::parse_config(read_file(opt.config_path));
    if (!opt.protocol.empty()) {
        cfg.protocol = opt.protocol == "dsr" ? manet::Protocol::Dsr
                                             : manet::Protocol::Aodv;
    }
    if (opt.inesh) {
        cfg.inesh_enabled = true;
    }
    if (opt.duration_set) {
        cfg.duration_s = opt.duration;
    }
    if (opt.seed_set) {
        cfg.seed = opt.seed;
    }

    fs::create_directories(opt.out_dir);

    manet::Simulation sim(cfg);
    std::ostringstream trace_stream;
    if (opt.trace) {
        sim.enable_trace(&trace_stream);
    }
    manet::MetricsReport metrics = sim.run();

    manet::CampaignResult result;
    result.runs.push_back({manet::make_run_id(0, cfg), cfg, metrics});
    write_file(fs::path(opt.out_dir) / "summary.csv", result.summary_csv());
    write_file(fs::path(opt.out_dir) / "throughput.csv",
               result.throughput_csv());
    if (opt.trace) {
        write_file(fs::path(opt.out_dir) / "trace.log", trace_stream.str());
        std::string drops;
        for (const auto& line : sim.drop_log()) {
            drops += line;
            drops += '\n';
        }
        write_file(fs::path(opt.out_dir) / "drops.log", drops);
    }

    std::cout << metrics.summary_line() << '\n';
    return 0;
}

int do_campaign(const std::string& spec_path, const std::string& out_dir) {
    manet::CampaignSpec spec = manet::parse_campaign(read_file(spec_path));
    manet::CampaignResult result = manet::run_campaign(spec);
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "summary.csv", result.summary_csv());
    write_file(fs::path(out_dir) / "throughput.csv", result.throughput_csv());
    std::cout << result.runs.size() << " runs written to " << out_dir << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic MANET routing simulator"};
    app.require_subcommand(1);

    SimulateOptions sim_opt;
    CLI::App* simulate = app.add_subcommand("simulate", "run one scenario");
    simulate->add_option("--config", sim_opt.config_path, "scenario file")
        ->required();
    simulate->add_option("--out", sim_opt.out_dir, "output directory");
    simulate->add_flag("--trace", sim_opt.trace,
                       "write trace.log and drops.log");
    simulate
        ->add_option("--protocol", sim_opt.protocol, "override: aodv or dsr")
        ->check(CLI::IsMember({"aodv", "dsr"}));
    simulate->add_flag("--inesh", sim_opt.inesh,
                       "override: enable the trust overlay");
    simulate->add_option("--duration", sim_opt.duration,
                         "override: duration in seconds")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim_opt.seed, "override: RNG seed");

    std::string spec_path;
    std::string campaign_out = ".";
    CLI::App* campaign = app.add_subcommand("campaign", "run a sweep");
    campaign->add_option("--spec", spec_path, "campaign file")->required();
    campaign->add_option("--out", campaign_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    sim_opt.seed_set = simulate->count("--seed") > 0;
    sim_opt.duration_set = simulate->count("--duration") > 0;

    try {
        if (simulate->parsed()) {
            return do_simulate(sim_opt);
        }
        return do_campaign(spec_path, campaign_out);
    } catch (const manet::ConfigError& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "runtime failure: " << e.what() << '\n';
        return 2;
    }
}
