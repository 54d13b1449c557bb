#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mpue_sim/engine.hpp"

namespace mpue_sim {

inline nlohmann::json report_to_json(const KpiReport& r) {
    return {
        {"counters",
         {{"rlf", r.counters.rlf},
          {"hof", r.counters.hof},
          {"ho_success", r.counters.ho_success},
          {"pingpong", r.counters.pingpong},
          {"shortstay", r.counters.shortstay},
          {"fast_ho", r.counters.fast_ho()}}},
        {"rates_per_ue_min",
         {{"rlf", r.rlf_per_ue_min},
          {"hof", r.hof_per_ue_min},
          {"ho_success", r.ho_success_per_ue_min},
          {"fast_ho", r.fast_ho_per_ue_min}}},
        {"outage_pct",
         {{"total", r.total_outage_pct},
          {"sinr_degradation", r.outage_sinr_degradation_pct},
          {"reestablishment", r.outage_reestablishment_pct},
          {"successful_ho", r.outage_successful_ho_pct}}},
    };
}

inline nlohmann::json run_result_to_json(const RunResult& r) {
    nlohmann::json j = report_to_json(r.report);
    j["approach"] = approach_name(r.config.approach);
    j["seed"] = r.config.seed;
    j["n_ue"] = r.config.n_ue;
    j["sim_time_s"] = r.config.sim_time_s;
    j["channel_digest"] = r.channel_digest;
    j["diagnostics"] = {{"pathloss_distance_clamps", r.diagnostics.pathloss_distance_clamps}};
    j["config"] = config_to_json(r.config);
    return j;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os << content;
}

inline void write_events_csv(const std::filesystem::path& path,
                             const std::vector<EventRecord>& events) {
    std::ostringstream os;
    os << "time_ms,ue,event,cell_a,cell_b,beam\n";
    for (const auto& e : events)
        os << e.time_ms << ',' << e.ue << ',' << event_name(e.type) << ',' << e.cell_a << ','
           << e.cell_b << ',' << e.beam << '\n';
    write_text_file(path, os.str());
}

inline void write_sinr_csv(const std::filesystem::path& path, const std::vector<SinrRow>& rows) {
    std::ostringstream os;
    os << "time_ms,ue,sinr_db\n";
    os << std::setprecision(10);
    for (const auto& r : rows) os << r.time_ms << ',' << r.ue << ',' << r.sinr_db << '\n';
    write_text_file(path, os.str());
}

inline void write_channel_trace_csv(const std::filesystem::path& path,
                                    const std::vector<ChannelTraceRow>& rows) {
    std::ostringstream os;
    os << "time_ms,cell,beam,pre_rx_dbm,serving_rx_dbm\n";
    os << std::setprecision(12);
    for (const auto& r : rows)
        os << r.time_ms << ',' << r.cell << ',' << r.beam << ',' << r.pre_rx_dbm << ','
           << r.serving_rx_dbm << '\n';
    write_text_file(path, os.str());
}

/// Writes one run's outputs (report.json, events.csv, sinr.csv) into dir.
inline void save_run(const std::filesystem::path& dir, const RunResult& result) {
    std::filesystem::create_directories(dir);
    write_text_file(dir / "report.json", run_result_to_json(result).dump(2) + "\n");
    write_events_csv(dir / "events.csv", result.events);
    write_sinr_csv(dir / "sinr.csv", result.sinr_rows);
    if (!result.channel_trace.empty())
        write_channel_trace_csv(dir / "channel_trace.csv", result.channel_trace);
}

inline std::string run_dir_name(Approach a, std::uint64_t seed) {
    return approach_name(a) + "_seed" + std::to_string(seed);
}

inline nlohmann::json campaign_to_json(const CampaignResult& campaign) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : campaign.cells) {
        nlohmann::json j = report_to_json(c.report);
        j["approach"] = approach_name(c.approach);
        j["seed"] = c.seed;
        j["channel_digest"] = c.channel_digest;
        j["median_sinr_db"] = c.median_sinr_db;
        j["p2_sinr_db"] = c.p2_sinr_db;
        cells.push_back(j);
    }
    nlohmann::json summaries = nlohmann::json::array();
    for (const auto& s : campaign.summaries) {
        summaries.push_back({{"approach", approach_name(s.approach)},
                             {"rlf_per_ue_min", s.rlf_per_ue_min},
                             {"hof_per_ue_min", s.hof_per_ue_min},
                             {"ho_success_per_ue_min", s.ho_success_per_ue_min},
                             {"fast_ho_per_ue_min", s.fast_ho_per_ue_min},
                             {"total_outage_pct", s.total_outage_pct},
                             {"outage_sinr_degradation_pct", s.outage_sinr_degradation_pct},
                             {"outage_reestablishment_pct", s.outage_reestablishment_pct},
                             {"outage_successful_ho_pct", s.outage_successful_ho_pct},
                             {"median_sinr_db", s.median_sinr_db},
                             {"p2_sinr_db", s.p2_sinr_db}});
    }
    return {{"cells", cells}, {"summaries", summaries}};
}

/// Text comparison table with relative deltas against the reference row.
inline std::string campaign_table_text(const CampaignResult& campaign) {
    const CampaignSummary* ref = nullptr;
    for (const auto& s : campaign.summaries)
        if (s.approach == Approach::kReference) ref = &s;

    std::ostringstream os;
    os << std::left << std::setw(11) << "approach" << std::right << std::setw(10) << "rlf/UE/m"
       << std::setw(10) << "hof/UE/m" << std::setw(10) << "ho/UE/m" << std::setw(10) << "fast/UE/m"
       << std::setw(10) << "outage%" << std::setw(10) << "med dB" << std::setw(10) << "p2 dB";
    if (ref != nullptr) os << std::setw(10) << "d_rlf" << std::setw(10) << "d_out";
    os << '\n';
    auto rel = [](double v, double base) {
        if (base == 0.0) return std::string("-");
        std::ostringstream s;
        s << std::fixed << std::setprecision(1) << (v / base - 1.0) * 100.0 << '%';
        return s.str();
    };
    for (const auto& s : campaign.summaries) {
        os << std::left << std::setw(11) << approach_name(s.approach) << std::right << std::fixed
           << std::setprecision(3) << std::setw(10) << s.rlf_per_ue_min << std::setw(10)
           << s.hof_per_ue_min << std::setw(10) << s.ho_success_per_ue_min << std::setw(10)
           << s.fast_ho_per_ue_min << std::setw(10) << s.total_outage_pct << std::setw(10)
           << s.median_sinr_db << std::setw(10) << s.p2_sinr_db;
        if (ref != nullptr)
            os << std::setw(10) << rel(s.rlf_per_ue_min, ref->rlf_per_ue_min) << std::setw(10)
               << rel(s.total_outage_pct, ref->total_outage_pct);
        os << '\n';
    }
    return os.str();
}

inline void write_campaign_csv(const std::filesystem::path& path,
                               const CampaignResult& campaign) {
    std::ostringstream os;
    os << "approach,seed,rlf_per_ue_min,hof_per_ue_min,ho_success_per_ue_min,fast_ho_per_ue_min,"
          "total_outage_pct,outage_sinr_degradation_pct,outage_reestablishment_pct,"
          "outage_successful_ho_pct,median_sinr_db,p2_sinr_db\n";
    os << std::setprecision(10);
    for (const auto& c : campaign.cells) {
        const auto& r = c.report;
        os << approach_name(c.approach) << ',' << c.seed << ',' << r.rlf_per_ue_min << ','
           << r.hof_per_ue_min << ',' << r.ho_success_per_ue_min << ',' << r.fast_ho_per_ue_min
           << ',' << r.total_outage_pct << ',' << r.outage_sinr_degradation_pct << ','
           << r.outage_reestablishment_pct << ',' << r.outage_successful_ho_pct << ','
           << c.median_sinr_db << ',' << c.p2_sinr_db << '\n';
    }
    write_text_file(path, os.str());
}

/// Full campaign output tree: one subdirectory per (approach, seed) plus the
/// aggregate table, CSV, and JSON.
inline void save_campaign(const std::filesystem::path& dir, const CampaignResult& campaign) {
    std::filesystem::create_directories(dir);
    for (std::size_t k = 0; k < campaign.runs.size(); ++k) {
        const auto& cell = campaign.cells[k];
        save_run(dir / run_dir_name(cell.approach, cell.seed), campaign.runs[k]);
    }
    write_text_file(dir / "campaign.json", campaign_to_json(campaign).dump(2) + "\n");
    write_campaign_csv(dir / "campaign.csv", campaign);
    write_text_file(dir / "table.txt", campaign_table_text(campaign));
}

// ---------------------------------------------------------------------------
// Figure-style exports (per-approach KPI bars, SINR CDF, outage decomposition)

inline void write_plot_data(const std::filesystem::path& campaign_dir,
                            const std::filesystem::path& out_dir) {
    std::ifstream is(campaign_dir / "campaign.json");
    if (!is) throw std::runtime_error("no campaign.json under " + campaign_dir.string());
    nlohmann::json j;
    is >> j;
    std::filesystem::create_directories(out_dir);

    {
        std::ostringstream os;
        os << "approach,rlf_per_ue_min,hof_per_ue_min,ho_success_per_ue_min,fast_ho_per_ue_min\n";
        for (const auto& s : j.at("summaries"))
            os << s.at("approach").get<std::string>() << ',' << s.at("rlf_per_ue_min") << ','
               << s.at("hof_per_ue_min") << ',' << s.at("ho_success_per_ue_min") << ','
               << s.at("fast_ho_per_ue_min") << '\n';
        write_text_file(out_dir / "kpi_rates.csv", os.str());
    }
    {
        std::ostringstream os;
        os << "approach,total_outage_pct,sinr_degradation_pct,reestablishment_pct,"
              "successful_ho_pct\n";
        for (const auto& s : j.at("summaries"))
            os << s.at("approach").get<std::string>() << ',' << s.at("total_outage_pct") << ','
               << s.at("outage_sinr_degradation_pct") << ','
               << s.at("outage_reestablishment_pct") << ',' << s.at("outage_successful_ho_pct")
               << '\n';
        write_text_file(out_dir / "outage.csv", os.str());
    }

    // SINR CDF: pool each approach's per-run samples over all seeds.
    std::vector<std::string> approaches;
    std::vector<std::vector<double>> pools;
    for (const auto& c : j.at("cells")) {
        const std::string name = c.at("approach").get<std::string>();
        const auto dir = campaign_dir / (name + "_seed" + std::to_string(c.at("seed").get<std::uint64_t>()));
        std::ifstream csv(dir / "sinr.csv");
        if (!csv) continue;
        std::size_t idx = 0;
        for (; idx < approaches.size(); ++idx)
            if (approaches[idx] == name) break;
        if (idx == approaches.size()) {
            approaches.push_back(name);
            pools.emplace_back();
        }
        std::string line;
        std::getline(csv, line);  // header
        while (std::getline(csv, line)) {
            const auto last = line.rfind(',');
            if (last == std::string::npos) continue;
            pools[idx].push_back(std::stod(line.substr(last + 1)));
        }
    }
    std::ostringstream os;
    os << "percentile";
    for (const auto& a : approaches) os << ',' << a;
    os << '\n';
    for (auto& pool : pools) std::sort(pool.begin(), pool.end());
    auto sorted_quantile = [](const std::vector<double>& sorted, double p) {
        const double rank = p / 100.0 * (static_cast<double>(sorted.size()) - 1.0);
        const auto lo = static_cast<std::size_t>(std::floor(rank));
        const auto hi = static_cast<std::size_t>(std::ceil(rank));
        const double frac = rank - static_cast<double>(lo);
        return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
    };
    for (double p = 0.5; p <= 99.51; p += 0.5) {
        os << p;
        for (const auto& pool : pools) {
            os << ',';
            if (!pool.empty()) os << sorted_quantile(pool, p);
        }
        os << '\n';
    }
    write_text_file(out_dir / "sinr_cdf.csv", os.str());
}

}  // namespace mpue_sim
