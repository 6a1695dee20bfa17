#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ntnsim/engine.hpp"
#include "ntnsim/errors.hpp"
#include "ntnsim/io.hpp"

using namespace ntnsim;
namespace fs = std::filesystem;

namespace {

SimConfig tiny_config() {
    SimConfig cfg = default_config();
    cfg.scenario.areaSide = 800.0;
    cfg.scenario.hotspotUsers = 12;
    cfg.scenario.victimUsers = 6;
    cfg.scenario.mobileUsers = 20;
    cfg.scenario.hotspotCenters = {{200.0, 200.0}, {600.0, 200.0}, {400.0, 600.0}};
    cfg.scenario.victimSites = {{300.0, 500.0}, {500.0, 300.0}};
    cfg.scenario.uavCount = 5;
    cfg.scenario.terrestrialCount = 9;
    cfg.scenario.slotCount = 10;
    cfg.scenario.seed = 55;
    return cfg;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::string without_wall_clock(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find("wall_clock_sec") == std::string::npos) {
            out << line << '\n';
        }
    }
    return out.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("run outputs land in six files and pass their own report") {
    SimConfig cfg = tiny_config();
    RunSummary s = run(cfg, ScenarioKind::Ntn);
    fs::path dir = fresh_dir("ntnsim_io_basic");
    write_run_outputs(s, cfg, dir);

    for (const char* name : {"links.csv", "sensing.csv", "tracking.csv",
                             "confusion.json", "cdf_sinr.csv", "summary.json"}) {
        CHECK(fs::exists(dir / name));
    }

    ReportResult rep = report_run(dir);
    CHECK(rep.valid);
    CHECK(rep.text.find("median SINR") != std::string::npos);
    CHECK(rep.text.find("confusion") != std::string::npos);
    CHECK(rep.text.find("gate") != std::string::npos);

    nlohmann::json summary = nlohmann::json::parse(slurp(dir / "summary.json"));
    CHECK(summary.at("scenario") == "ntn");
    CHECK(summary.at("seed") == 55);
    CHECK(summary.at("config").at("scenario").at("uavCount") == 5);
    CHECK(summary.at("counts").at("links") == s.links.size());

    fs::remove_all(dir);
}

TEST_CASE("rewriting the same run is byte-identical up to the wall clock") {
    SimConfig cfg = tiny_config();
    RunSummary a = run(cfg, ScenarioKind::Ntn);
    RunSummary b = run(cfg, ScenarioKind::Ntn);
    fs::path d1 = fresh_dir("ntnsim_io_rep1");
    fs::path d2 = fresh_dir("ntnsim_io_rep2");
    write_run_outputs(a, cfg, d1);
    write_run_outputs(b, cfg, d2);

    for (const char* name : {"links.csv", "sensing.csv", "tracking.csv",
                             "confusion.json", "cdf_sinr.csv"}) {
        CHECK(slurp(d1 / name) == slurp(d2 / name));
    }
    CHECK(without_wall_clock(slurp(d1 / "summary.json")) ==
          without_wall_clock(slurp(d2 / "summary.json")));

    fs::remove_all(d1);
    fs::remove_all(d2);
}

TEST_CASE("report rejects tampered and incomplete directories") {
    SimConfig cfg = tiny_config();
    RunSummary s = run(cfg, ScenarioKind::Ntn);
    fs::path dir = fresh_dir("ntnsim_io_tamper");
    write_run_outputs(s, cfg, dir);

    // Negative count.
    nlohmann::json cm = nlohmann::json::parse(slurp(dir / "confusion.json"));
    cm["tp"] = -3;
    std::ofstream(dir / "confusion.json") << cm.dump(2) << '\n';
    CHECK_THROWS_AS(report_run(dir), DataError);

    // Counts that disagree with the sensing log.
    cm["tp"] = 1;
    std::ofstream(dir / "confusion.json") << cm.dump(2) << '\n';
    CHECK_THROWS_AS(report_run(dir), DataError);

    // Missing file.
    write_run_outputs(s, cfg, dir);
    fs::remove(dir / "links.csv");
    CHECK_THROWS_AS(report_run(dir), ConfigError);

    fs::remove_all(dir);
}

TEST_CASE("sweep table matches medians recomputed from each run directory") {
    SimConfig cfg = tiny_config();
    cfg.scenario.slotCount = 6;
    auto runs = sweep_gamma(cfg, {0.0, 0.5});
    fs::path dir = fresh_dir("ntnsim_io_sweep");
    for (const auto& r : runs) {
        SimConfig runCfg = cfg;
        runCfg.scenario.gamma = r.gamma;
        std::string name = r.kind == ScenarioKind::Ntn
                               ? std::string("run_ntn")
                               : "run_tn_g" + std::to_string(r.gamma).substr(0, 3);
        write_run_outputs(r, runCfg, dir / name);
    }
    write_sweep_medians(runs, dir / "sweep_medians.csv");

    std::ifstream table(dir / "sweep_medians.csv");
    std::string line;
    std::getline(table, line);
    CHECK(line == std::string("scenario,gamma,median_sinr_db_all,median_sinr_db_hotspot,"
                              "median_sinr_db_victim,median_sinr_db_mobile"));
    int row = 0;
    while (std::getline(table, line)) {
        if (line.empty()) {
            continue;
        }
        REQUIRE(row < static_cast<int>(runs.size()));
        std::istringstream ss(line);
        std::string scenario, gammaStr, allStr;
        std::getline(ss, scenario, ',');
        std::getline(ss, gammaStr, ',');
        std::getline(ss, allStr, ',');
        CHECK(scenario == scenario_kind_name(runs[row].kind));
        CHECK(std::stod(allStr) == doctest::Approx(runs[row].medianAllDb).epsilon(1e-9));
        ++row;
    }
    CHECK(row == static_cast<int>(runs.size()));

    // Cross-check one run directory against the table entry.
    std::ifstream links(dir / "run_ntn" / "links.csv");
    std::getline(links, line);
    std::vector<double> db;
    while (std::getline(links, line)) {
        if (line.empty()) {
            continue;
        }
        size_t pos = 0;
        for (int c = 0; c < 6; ++c) {
            pos = line.find(',', pos) + 1;
        }
        db.push_back(std::stod(line.substr(pos, line.find(',', pos) - pos)));
    }
    CHECK(empirical_cdf(db).median() == doctest::Approx(runs[0].medianAllDb).epsilon(1e-6));

    fs::remove_all(dir);
}
