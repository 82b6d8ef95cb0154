#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "psi/config.hpp"
#include "psi/metrics.hpp"
#include "psi/personality.hpp"
#include "psi/util.hpp"
#include "psi/world.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Exit codes: 0 ok, 2 bad config/usage, 3 runtime failure, 4 corrupt log.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitLog = 4;

std::string default_out_dir() {
    if (const char* env = std::getenv("PSISIM_OUT_DIR")) return env;
    return "runs";
}

psi::RunConfig build_config(const std::string& config_path,
                            const std::vector<std::string>& overrides) {
    psi::RunConfig cfg = config_path.empty() ? psi::RunConfig::defaults()
                                             : psi::RunConfig::from_file(config_path);
    for (const std::string& kv : overrides) cfg.apply_override(kv);
    return cfg;
}

std::string run_dir_name(const psi::ScenarioSpec& sp) {
    return std::string(psi::to_string(sp.scenario)) + "_g" +
           std::to_string(sp.group_seed) + "_r" + std::to_string(sp.sim_seed);
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << text;
}

void write_run_artifacts(const psi::RunLog& log, const fs::path& dir) {
    fs::create_directories(dir);
    log.save((dir / "run.jsonl").string());
    write_text(dir / "engage_bins.csv",
               psi::engage_bins_to_csv(psi::bin_engage_counts(log.events)));
    write_text(dir / "action_counts.csv",
               psi::action_counts_to_csv(psi::count_actions(log.events)));
    write_text(dir / "network.graphml", psi::network_to_graphml(log.final_network));
    write_text(dir / "network.csv", psi::network_to_csv(log.final_network));
}

int do_run(const psi::RunConfig& cfg, const psi::ScenarioSpec& spec,
           const std::string& out_dir) {
    psi::RunLog log = psi::run_scenario(cfg, spec);
    fs::path dir = fs::path(out_dir) / run_dir_name(spec);
    write_run_artifacts(log, dir);
    std::cout << dir.string() << ": " << log.events.size() << " events, "
              << log.final_network.edges.size() << " network edges\n";
    return kExitOk;
}

int do_grid(const psi::RunConfig& cfg, const std::string& out_dir,
            const std::string& scenario_filter, int jobs) {
    std::vector<psi::ScenarioSpec> cells;
    for (psi::Scenario sc : {psi::Scenario::S1, psi::Scenario::S2, psi::Scenario::S3}) {
        if (!scenario_filter.empty() &&
            sc != psi::scenario_from_string(scenario_filter))
            continue;
        for (int gs = 1; gs <= 3; ++gs)
            for (int ss = 1; ss <= 3; ++ss)
                cells.push_back(psi::ScenarioSpec{sc, gs, ss});
    }

    struct CellResult {
        bool ok = false;
        std::string error;
    };
    std::vector<CellResult> results(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            try {
                psi::RunLog log = psi::run_scenario(cfg, cells[i]);
                write_run_artifacts(log, fs::path(out_dir) / run_dir_name(cells[i]));
                results[i].ok = true;
            } catch (const std::exception& e) {
                results[i].error = e.what();
            }
        }
    };

    if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs <= 0) jobs = 1;
    jobs = std::min<int>(jobs, static_cast<int>(cells.size()));
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();

    bool all_ok = true;
    json manifest;
    manifest["cells"] = json::array();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        json c;
        c["scenario"] = psi::to_string(cells[i].scenario);
        c["group_seed"] = cells[i].group_seed;
        c["sim_seed"] = cells[i].sim_seed;
        c["dir"] = run_dir_name(cells[i]);
        c["ok"] = results[i].ok;
        if (!results[i].ok) {
            c["error"] = results[i].error;
            all_ok = false;
        }
        manifest["cells"].push_back(c);
    }
    manifest["ok"] = all_ok;
    fs::create_directories(out_dir);
    write_text(fs::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");

    for (std::size_t i = 0; i < cells.size(); ++i)
        if (!results[i].ok)
            std::cerr << run_dir_name(cells[i]) << " failed: " << results[i].error
                      << "\n";
    std::cout << out_dir << ": " << cells.size() << " runs, "
              << (all_ok ? "all ok" : "with failures") << "\n";
    return all_ok ? kExitOk : kExitRuntime;
}

int do_metrics(const std::string& log_path, const std::string& which, int bin,
               const std::string& family, bool symmetrize, double prune,
               const std::string& out_path) {
    psi::RunLog log = psi::RunLog::load(log_path);
    std::string text;
    if (which == "engage-bins") {
        text = psi::engage_bins_to_csv(psi::bin_engage_counts(log.events, bin));
    } else if (which == "action-counts") {
        text = psi::action_counts_to_csv(
            psi::count_actions(log.events, psi::family_from_string(family)));
    } else if (which == "network-csv") {
        text = psi::network_to_csv(log.final_network, symmetrize, prune);
    } else if (which == "network-graphml") {
        text = psi::network_to_graphml(log.final_network, symmetrize, prune);
    } else {
        throw psi::ConfigError("unknown metric '" + which +
                               "' (engage-bins, action-counts, network-csv, "
                               "network-graphml)");
    }
    if (out_path.empty())
        std::cout << text;
    else
        write_text(out_path, text);
    return kExitOk;
}

int do_validate(const psi::RunConfig& cfg, bool print_effective) {
    psi::WorldMap map = psi::WorldMap::load(cfg.resolved_map_path());
    int fixtures = 0;
    if (cfg.personalities_mode == "fixtures") {
        for (int gs = 1; gs <= 3; ++gs)
            for (int team = 1; team <= 2; ++team) {
                std::string path = cfg.resolved_personalities_dir() + "/seed" +
                                   std::to_string(gs) + "_team" +
                                   std::to_string(team) + ".json";
                std::vector<psi::Personality> roster = psi::load_team_fixture(path);
                if (static_cast<int>(roster.size()) < cfg.agents_per_group)
                    throw psi::ConfigError(path + ": roster smaller than agents_per_group");
                ++fixtures;
            }
    }
    if (print_effective) {
        std::cout << cfg.to_json_text() << "\n";
    } else {
        std::cout << "ok: map '" << map.name() << "' (" << map.width() << "x"
                  << map.height() << ", " << map.food_spawn_points().size()
                  << " food points), " << fixtures << " personality fixtures\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"need-driven multi-agent simulation"};
    app.require_subcommand(1);

    std::string run_scenario_s, run_config, run_out = default_out_dir();
    int run_gs = 1, run_ss = 1;
    std::vector<std::string> run_sets;
    CLI::App* cmd_run = app.add_subcommand("run", "run one scenario, write artifacts");
    cmd_run->add_option("--scenario", run_scenario_s, "s1 | s2 | s3")->required();
    cmd_run->add_option("--group-seed", run_gs, "team generation seed (default 1)");
    cmd_run->add_option("--sim-seed", run_ss, "simulation seed (default 1)");
    cmd_run->add_option("--config", run_config, "config file (json)");
    cmd_run->add_option("--set", run_sets, "override, dotted.key=value (repeatable)");
    cmd_run->add_option("--out-dir", run_out, "output directory ($PSISIM_OUT_DIR)");

    std::string grid_scenario, grid_config, grid_out = default_out_dir();
    int grid_jobs = 0;
    std::vector<std::string> grid_sets;
    CLI::App* cmd_grid =
        app.add_subcommand("grid", "run the full 3 scenarios x 3 x 3 seeds grid");
    cmd_grid->add_option("--scenario", grid_scenario, "only this scenario (9 runs)");
    cmd_grid->add_option("--config", grid_config, "config file (json)");
    cmd_grid->add_option("--set", grid_sets, "override, dotted.key=value (repeatable)");
    cmd_grid->add_option("--out-dir", grid_out, "output directory ($PSISIM_OUT_DIR)");
    cmd_grid->add_option("--jobs", grid_jobs, "parallel runs (default: all cores)");

    std::string m_log, m_which, m_family = "all", m_out;
    int m_bin = 500;
    bool m_sym = false;
    double m_prune = 0.0;
    CLI::App* cmd_metrics =
        app.add_subcommand("metrics", "recompute metrics from a stored run log");
    cmd_metrics->add_option("--log", m_log, "run log (jsonl)")->required();
    cmd_metrics
        ->add_option("--which", m_which,
                     "engage-bins | action-counts | network-csv | network-graphml")
        ->required();
    cmd_metrics->add_option("--bin", m_bin, "bin width in ticks (engage-bins)");
    cmd_metrics->add_option("--family", m_family,
                            "all | social | exchange (action-counts)");
    cmd_metrics->add_flag("--symmetrize", m_sym, "average the two edge directions");
    cmd_metrics->add_option("--prune", m_prune, "drop |score| below this");
    cmd_metrics->add_option("--out", m_out, "write to file instead of stdout");

    std::string v_config;
    std::vector<std::string> v_sets;
    bool v_print = false;
    CLI::App* cmd_validate =
        app.add_subcommand("validate", "check config, map and personality fixtures");
    cmd_validate->add_option("--config", v_config, "config file (json)");
    cmd_validate->add_option("--set", v_sets, "override, dotted.key=value (repeatable)");
    cmd_validate->add_flag("--print", v_print, "print the effective config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (cmd_run->parsed()) {
            psi::ScenarioSpec spec{psi::scenario_from_string(run_scenario_s), run_gs,
                                   run_ss};
            return do_run(build_config(run_config, run_sets), spec, run_out);
        }
        if (cmd_grid->parsed())
            return do_grid(build_config(grid_config, grid_sets), grid_out,
                           grid_scenario, grid_jobs);
        if (cmd_metrics->parsed())
            return do_metrics(m_log, m_which, m_bin, m_family, m_sym, m_prune, m_out);
        if (cmd_validate->parsed())
            return do_validate(build_config(v_config, v_sets), v_print);
        std::cerr << "no command given\n";
        return kExitConfig;
    } catch (const psi::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const psi::LogError& e) {
        std::cerr << "log error: " << e.what() << "\n";
        return kExitLog;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
