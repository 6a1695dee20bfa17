#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ntnsim/config.hpp"
#include "ntnsim/engine.hpp"
#include "ntnsim/errors.hpp"
#include "ntnsim/io.hpp"

namespace {

struct CommonOpts {
    std::string configPath;
    std::string preset;
    std::string scenario = "ntn";
    std::optional<std::uint64_t> seed;
    std::vector<double> gammas;
    std::string outDir = "out";
    bool audit = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool withScenario) {
    cmd->add_option("--config", o.configPath, "JSON configuration file");
    cmd->add_option("--preset", o.preset, "named parameter preset")
        ->check(CLI::IsMember({"paper-v1"}));
    if (withScenario) {
        cmd->add_option("--scenario", o.scenario, "scenario to simulate")
            ->check(CLI::IsMember({"ntn", "tn"}));
    }
    cmd->add_option("--seed", o.seed, "override the run seed");
    cmd->add_option("--gamma", o.gammas, "terrestrial failure ratio (repeatable)")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--out-dir", o.outDir, "output directory");
    cmd->add_flag("--audit", o.audit, "enable per-slot constraint auditing");
}

ntnsim::SimConfig resolve_config(const CommonOpts& o) {
    ntnsim::SimConfig cfg =
        o.preset.empty() ? ntnsim::default_config() : ntnsim::preset_config(o.preset);
    if (!o.configPath.empty()) {
        cfg = ntnsim::load_config(o.configPath);
    }
    if (o.seed) {
        cfg.scenario.seed = *o.seed;
    }
    if (!o.gammas.empty()) {
        cfg.scenario.gamma = o.gammas.back();
    }
    cfg.validate();
    return cfg;
}

std::string gamma_tag(double g) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", g);
    return buf;
}

int cmd_run(const CommonOpts& o) {
    ntnsim::SimConfig cfg = resolve_config(o);
    ntnsim::ScenarioKind kind =
        o.scenario == "tn" ? ntnsim::ScenarioKind::Tn : ntnsim::ScenarioKind::Ntn;
    ntnsim::RunSummary summary = ntnsim::run(cfg, kind, o.audit);
    ntnsim::write_run_outputs(summary, cfg, o.outDir);
    std::cout << "wrote " << o.outDir << " (scenario=" << ntnsim::scenario_kind_name(kind)
              << ", seed=" << cfg.scenario.seed << ", gamma=" << cfg.scenario.gamma
              << ")\n";
    return 0;
}

int cmd_sweep(const CommonOpts& o) {
    ntnsim::SimConfig cfg = resolve_config(o);
    std::vector<double> gammas = o.gammas;
    if (gammas.empty()) {
        gammas = {0.0, 0.3, 0.5, 0.8};
    }
    std::vector<ntnsim::RunSummary> runs = ntnsim::sweep_gamma(cfg, gammas, o.audit);
    std::filesystem::path root(o.outDir);
    std::filesystem::create_directories(root);
    for (const ntnsim::RunSummary& r : runs) {
        ntnsim::SimConfig runCfg = cfg;
        runCfg.scenario.gamma = r.gamma;
        std::string name = r.kind == ntnsim::ScenarioKind::Ntn
                               ? "run_ntn"
                               : "run_tn_g" + gamma_tag(r.gamma);
        ntnsim::write_run_outputs(r, runCfg, root / name);
    }
    ntnsim::write_sweep_medians(runs, root / "sweep_medians.csv");
    std::cout << "wrote " << (root / "sweep_medians.csv").string() << " and "
              << runs.size() << " run directories\n";
    return 0;
}

int cmd_report(const std::string& dir) {
    ntnsim::ReportResult res = ntnsim::report_run(dir);
    std::cout << res.text;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"non-terrestrial network communication and sensing simulator"};
    app.require_subcommand(1);

    CommonOpts runOpts;
    CLI::App* runCmd = app.add_subcommand("run", "simulate one scenario and write outputs");
    add_common(runCmd, runOpts, true);

    CommonOpts sweepOpts;
    CLI::App* sweepCmd =
        app.add_subcommand("sweep", "run the NTN scenario plus a TN failure sweep");
    add_common(sweepCmd, sweepOpts, false);

    std::string reportDir;
    CLI::App* reportCmd = app.add_subcommand("report", "validate and summarize a run directory");
    reportCmd->add_option("dir", reportDir, "run output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (runCmd->parsed()) {
            return cmd_run(runOpts);
        }
        if (sweepCmd->parsed()) {
            return cmd_sweep(sweepOpts);
        }
        return cmd_report(reportDir);
    } catch (const ntnsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
