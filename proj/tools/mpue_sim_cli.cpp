#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mpue_sim/engine.hpp"
#include "mpue_sim/io.hpp"

namespace {

using namespace mpue_sim;

RunConfig load_config(const std::string& profile, const std::string& config_path) {
    RunConfig base = profile == "paper" ? paper_profile() : desk_profile();
    if (config_path.empty()) return base;
    std::ifstream is(config_path);
    if (!is) throw std::runtime_error("cannot open config file " + config_path);
    nlohmann::json j;
    is >> j;
    return config_from_json(j, base);
}

std::vector<Approach> parse_approaches(const std::string& csv) {
    std::vector<Approach> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto a = approach_from_name(item);
        if (!a) throw std::runtime_error("unknown approach: " + item);
        out.push_back(*a);
    }
    if (out.empty()) throw std::runtime_error("no approaches given");
    return out;
}

std::vector<std::uint64_t> parse_seeds(const std::string& csv) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoull(item));
    if (out.empty()) throw std::runtime_error("no seeds given");
    return out;
}

void dump_patterns(const std::filesystem::path& out_dir, const RunConfig& cfg) {
    std::filesystem::create_directories(out_dir);
    const auto grid = TxBeamGrid::make(cfg.tx_element, cfg.tx_spacing_v_lambda,
                                       cfg.tx_spacing_h_lambda);
    {
        std::ostringstream os;
        os << "beam,theta_deg,phi_deg,gain_db\n";
        for (int b = 1; b <= 12; ++b) {
            const double theta = grid.beam(b).theta_deg;
            for (double phi = -180.0; phi <= 180.0; phi += 0.5)
                os << b << ',' << theta << ',' << phi << ','
                   << tx_beam_gain(grid, b, theta, phi) << '\n';
        }
        write_text_file(out_dir / "tx_gain_azimuth.csv", os.str());
    }
    const auto panels = MpuePanelSet::make(cfg.rx_element, cfg.panel_offsets_deg);
    {
        std::ostringstream os;
        os << "panel,rx_beam,phi_ue_deg,gain_db\n";
        for (int d = 1; d <= 3; ++d) {
            for (int r = 0; r <= 7; ++r)
                for (double phi = -180.0; phi <= 180.0; phi += 0.5)
                    os << d << ',' << r << ',' << phi << ','
                       << rx_gain(panels, d, r, 90.0, phi) << '\n';
        }
        write_text_file(out_dir / "rx_gain_azimuth.csv", os.str());
    }
    std::cout << "wrote " << (out_dir / "tx_gain_azimuth.csv") << " and "
              << (out_dir / "rx_gain_azimuth.csv") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-panel UE Rx-beamforming mobility simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string profile = "desk";
    std::string out_dir = "out";
    std::string approach = "reference";
    std::string approaches_csv = "reference,rx1,rx2,rx3";
    std::string seeds_csv = "1,2,3,4,5";
    std::uint64_t seed = 1;
    int trace_ue = -1;
    unsigned threads = 0;
    std::string campaign_dir;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file (unknown keys are errors)");
        cmd->add_option("--profile", profile, "desk (100 UEs, 10 s) or paper (420 UEs, 30 s)")
            ->check(CLI::IsMember({"desk", "paper"}));
        cmd->add_option("--out", out_dir, "output directory");
    };

    auto* run_cmd = app.add_subcommand("run", "single simulation run");
    add_common(run_cmd);
    run_cmd->add_option("--approach", approach, "reference|rx1|rx2|rx3")
        ->check(CLI::IsMember({"reference", "rx1", "rx2", "rx3"}));
    run_cmd->add_option("--seed", seed, "master seed");
    run_cmd->add_option("--trace-ue", trace_ue, "dump the channel trace of one UE");

    auto* campaign_cmd = app.add_subcommand("campaign", "paired multi-run comparison");
    add_common(campaign_cmd);
    campaign_cmd->add_option("--approaches", approaches_csv, "comma-separated approach list");
    campaign_cmd->add_option("--seeds", seeds_csv, "comma-separated seed list");
    campaign_cmd->add_option("--threads", threads, "worker threads (default: hardware)");

    auto* dump_cmd = app.add_subcommand("dump-patterns", "antenna gain-vs-angle CSV dumps");
    add_common(dump_cmd);

    auto* plot_cmd = app.add_subcommand("plot-data", "figure-ready CSVs from a campaign");
    plot_cmd->add_option("--campaign", campaign_dir, "campaign output directory")->required();
    plot_cmd->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            RunConfig cfg = load_config(profile, config_path);
            if (run_cmd->count("--approach") > 0) cfg.approach = *approach_from_name(approach);
            if (run_cmd->count("--seed") > 0) cfg.seed = seed;
            cfg.validate();
            const RunResult result = run_simulation(cfg, trace_ue);
            const auto dir = std::filesystem::path(out_dir) /
                             run_dir_name(cfg.approach, cfg.seed);
            save_run(dir, result);
            std::cout << run_result_to_json(result).dump(2) << "\n";
            std::cout << "outputs in " << dir << "\n";
        } else if (campaign_cmd->parsed()) {
            RunConfig cfg = load_config(profile, config_path);
            const auto approaches = parse_approaches(approaches_csv);
            const auto seeds = parse_seeds(seeds_csv);
            const CampaignResult campaign = run_campaign(cfg, approaches, seeds, threads);
            save_campaign(out_dir, campaign);
            std::cout << campaign_table_text(campaign);
            std::cout << "outputs in " << out_dir << "\n";
        } else if (dump_cmd->parsed()) {
            dump_patterns(out_dir, load_config(profile, config_path));
        } else if (plot_cmd->parsed()) {
            write_plot_data(campaign_dir, out_dir);
            std::cout << "plot data in " << out_dir << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
