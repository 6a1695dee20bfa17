#include "ntnsim/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ntnsim/errors.hpp"

namespace ntnsim {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

double to_db(double linear) {
    return 10.0 * std::log10(std::max(linear, 1e-30));
}

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write output file: " + p.string());
    }
    return out;
}

json opt_to_json(const std::optional<double>& v) {
    if (v) {
        return *v;
    }
    return nullptr;
}

json finite_or_null(double v) {
    if (std::isfinite(v)) {
        return v;
    }
    return nullptr;
}

void write_links_csv(const RunSummary& s, const std::filesystem::path& p) {
    std::ofstream out = open_out(p);
    out << "slot,mini_slot,user_id,user_class,serving_kind,serving_id,sinr_db,rate_bps\n";
    for (const LinkReport& r : s.links) {
        out << r.slot << ',' << r.miniSlot << ',' << r.userId << ','
            << user_class_name(r.cls) << ',' << node_kind_name(r.servingKind) << ','
            << r.servingNode << ',' << fmt(to_db(r.sinr)) << ',' << fmt(r.rateBps) << '\n';
    }
}

void write_sensing_csv(const RunSummary& s, const std::filesystem::path& p) {
    std::ofstream out = open_out(p);
    out << "user_id,slot,mu_hat_hz,sigma_v2,confidence,predicted,truth\n";
    for (const SensingRecord& r : s.sensing) {
        out << r.userId << ',' << r.slot << ',' << fmt(r.muHat) << ',' << fmt(r.sigmaV2)
            << ',' << fmt(r.confidence) << ',' << (r.predicted ? 1 : 0) << ','
            << (r.truth ? 1 : 0) << '\n';
    }
}

void write_tracking_csv(const RunSummary& s, const std::filesystem::path& p) {
    std::ofstream out = open_out(p);
    out << "slot,true_speed,est_speed,true_dist,est_dist\n";
    for (const TrackPoint& t : s.tracking) {
        out << t.slot << ',' << fmt(t.trueSpeed) << ',' << fmt(t.estSpeed) << ','
            << fmt(t.trueDist) << ',' << fmt(t.estDist) << '\n';
    }
}

json confusion_json(const RunSummary& s) {
    json j;
    j["tp"] = s.cm.tp;
    j["fn"] = s.cm.fn;
    j["fp"] = s.cm.fp;
    j["tn"] = s.cm.tn;
    j["scores"] = {
        {"accuracy", opt_to_json(s.sc.accuracy)},
        {"precision", opt_to_json(s.sc.precision)},
        {"recall", opt_to_json(s.sc.recall)},
        {"f1", opt_to_json(s.sc.f1)},
    };
    return j;
}

void write_cdf_csv(const RunSummary& s, const std::filesystem::path& p) {
    std::ofstream out = open_out(p);
    out << "value_db,cum_prob\n";
    if (!s.links.empty()) {
        std::vector<double> db;
        db.reserve(s.links.size());
        for (const LinkReport& r : s.links) {
            db.push_back(to_db(r.sinr));
        }
        CdfSeries cdf = empirical_cdf(std::move(db));
        for (std::size_t i = 0; i < cdf.values.size(); ++i) {
            out << fmt(cdf.values[i]) << ',' << fmt(cdf.probs[i]) << '\n';
        }
    }
}

json summary_json(const RunSummary& s, const SimConfig& cfg) {
    json j;
    j["scenario"] = scenario_kind_name(s.kind);
    j["gamma"] = s.gamma;
    j["seed"] = s.seed;
    j["preset"] = cfg.preset;
    j["config"] = config_to_json(cfg);
    j["medians_db"] = {
        {"all", finite_or_null(s.medianAllDb)},
        {"hotspot", finite_or_null(s.medianHotspotDb)},
        {"victim", finite_or_null(s.medianVictimDb)},
        {"mobile", finite_or_null(s.medianMobileDb)},
    };
    j["confusion"] = confusion_json(s);
    j["tracking"] = {
        {"tracked_user", s.trackedUserId},
        {"speed_rmse", finite_or_null(s.speedRmse)},
        {"distance_rmse", finite_or_null(s.distanceRmse)},
    };
    double total = 0.0;
    for (double v : s.objectivePerSlot) {
        total += v;
    }
    j["objective"] = {
        {"eta_c", cfg.objective.etaC},
        {"eta_s", cfg.objective.etaS},
        {"per_slot", s.objectivePerSlot},
        {"total", total},
    };
    j["audit"] = {
        {"enabled", s.audit.enabled},
        {"c1_power", s.audit.c1},
        {"c2_association", s.audit.c2},
        {"c3_orthogonality", s.audit.c3},
    };
    j["counts"] = {
        {"links", s.links.size()},
        {"sensing", s.sensing.size()},
        {"tracking", s.tracking.size()},
    };
    j["schema"] = {
        {"links.csv", "slot,mini_slot,user_id,user_class,serving_kind,serving_id,sinr_db,rate_bps"},
        {"sensing.csv", "user_id,slot,mu_hat_hz,sigma_v2,confidence,predicted,truth"},
        {"tracking.csv", "slot,true_speed,est_speed,true_dist,est_dist"},
        {"cdf_sinr.csv", "value_db,cum_prob"},
        {"units", "sinr_db in dB (linear floor 1e-30), rates in bit/s, distances in m, speeds in m/s, mu in Hz"},
        {"notes", "SINR samples pool every (user, slot, mini-slot) link report; "
                  "range reconstruction integrates the unaliased analytic Doppler "
                  "of the reference link"},
    };
    j["wall_clock_sec"] = s.wallClockSec;
    return j;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

json load_json(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) {
        throw ConfigError("missing file: " + p.string());
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError("bad JSON in " + p.string() + ": " + e.what());
    }
    return j;
}

} // namespace

void write_run_outputs(const RunSummary& summary, const SimConfig& cfg,
                       const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_links_csv(summary, dir / "links.csv");
    write_sensing_csv(summary, dir / "sensing.csv");
    write_tracking_csv(summary, dir / "tracking.csv");
    open_out(dir / "confusion.json") << confusion_json(summary).dump(2) << '\n';
    write_cdf_csv(summary, dir / "cdf_sinr.csv");
    open_out(dir / "summary.json") << summary_json(summary, cfg).dump(2) << '\n';
}

void write_sweep_medians(const std::vector<RunSummary>& runs,
                         const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << "scenario,gamma,median_sinr_db_all,median_sinr_db_hotspot,"
           "median_sinr_db_victim,median_sinr_db_mobile\n";
    for (const RunSummary& r : runs) {
        out << scenario_kind_name(r.kind) << ',' << fmt(r.gamma) << ','
            << fmt(r.medianAllDb) << ',' << fmt(r.medianHotspotDb) << ','
            << fmt(r.medianVictimDb) << ',' << fmt(r.medianMobileDb) << '\n';
    }
}

ReportResult report_run(const std::filesystem::path& dir) {
    for (const char* name : {"links.csv", "sensing.csv", "tracking.csv",
                             "confusion.json", "cdf_sinr.csv", "summary.json"}) {
        if (!std::filesystem::exists(dir / name)) {
            throw ConfigError("missing file: " + (dir / name).string());
        }
    }
    json summary = load_json(dir / "summary.json");
    json cmJson = load_json(dir / "confusion.json");

    long long tp = cmJson.at("tp").get<long long>();
    long long fn = cmJson.at("fn").get<long long>();
    long long fp = cmJson.at("fp").get<long long>();
    long long tn = cmJson.at("tn").get<long long>();
    if (tp < 0 || fn < 0 || fp < 0 || tn < 0) {
        throw DataError("confusion matrix has a negative count");
    }

    // Cross-check counts against the sensing log.
    std::ifstream sensing(dir / "sensing.csv");
    std::string line;
    std::getline(sensing, line); // header
    long long rows = 0;
    while (std::getline(sensing, line)) {
        if (!line.empty()) {
            ++rows;
        }
    }
    if (rows != tp + fn + fp + tn) {
        throw DataError("confusion counts disagree with sensing.csv rows");
    }

    ConfusionMatrix cm{tp, fn, fp, tn};
    ClassificationScores sc = scores(cm);
    auto storedScore = [&](const char* key) -> std::optional<double> {
        const json& v = cmJson.at("scores").at(key);
        if (v.is_null()) {
            return std::nullopt;
        }
        return v.get<double>();
    };
    auto closeOpt = [](const std::optional<double>& a, const std::optional<double>& b) {
        if (a.has_value() != b.has_value()) {
            return false;
        }
        return !a || std::abs(*a - *b) <= 1e-9;
    };
    if (!closeOpt(sc.accuracy, storedScore("accuracy")) ||
        !closeOpt(sc.precision, storedScore("precision")) ||
        !closeOpt(sc.recall, storedScore("recall")) ||
        !closeOpt(sc.f1, storedScore("f1"))) {
        throw DataError("stored scores disagree with confusion counts");
    }

    // Recompute the pooled median from links.csv.
    std::ifstream links(dir / "links.csv");
    std::getline(links, line); // header
    std::vector<double> sinrDb;
    while (std::getline(links, line)) {
        if (line.empty()) {
            continue;
        }
        auto cols = split_csv(line);
        if (cols.size() != 8) {
            throw DataError("links.csv has a malformed row");
        }
        sinrDb.push_back(std::stod(cols[6]));
    }
    const json& medians = summary.at("medians_db");
    if (!sinrDb.empty()) {
        double med = empirical_cdf(sinrDb).median();
        if (medians.at("all").is_null() ||
            std::abs(med - medians.at("all").get<double>()) > 1e-6) {
            throw DataError("summary median disagrees with links.csv");
        }
    }

    const json& audit = summary.at("audit");
    bool auditEnabled = audit.at("enabled").get<bool>();
    long long violations = audit.at("c1_power").get<long long>() +
                           audit.at("c2_association").get<long long>() +
                           audit.at("c3_orthogonality").get<long long>();
    if (auditEnabled && violations > 0) {
        throw DataError("constraint audit recorded violations");
    }

    ReportResult res;
    res.gatePrecision = sc.precision && *sc.precision >= 0.85;
    res.gateAccuracy = sc.accuracy && *sc.accuracy >= 0.82;

    std::ostringstream text;
    auto optStr = [](const std::optional<double>& v) {
        return v ? fmt(*v) : std::string("undefined");
    };
    auto jsonNum = [](const json& v) {
        return v.is_null() ? std::string("n/a") : fmt(v.get<double>());
    };
    text << "run: scenario=" << summary.at("scenario").get<std::string>()
         << " gamma=" << summary.at("gamma").get<double>()
         << " seed=" << summary.at("seed").get<std::uint64_t>() << "\n";
    text << "median SINR [dB]: all=" << jsonNum(medians.at("all"))
         << " hotspot=" << jsonNum(medians.at("hotspot"))
         << " victim=" << jsonNum(medians.at("victim"))
         << " mobile=" << jsonNum(medians.at("mobile")) << "\n";
    text << "confusion: tp=" << tp << " fn=" << fn << " fp=" << fp << " tn=" << tn << "\n";
    text << "scores: accuracy=" << optStr(sc.accuracy) << " precision=" << optStr(sc.precision)
         << " recall=" << optStr(sc.recall) << " f1=" << optStr(sc.f1) << "\n";
    const json& tracking = summary.at("tracking");
    text << "tracking: speed_rmse=" << jsonNum(tracking.at("speed_rmse"))
         << " distance_rmse=" << jsonNum(tracking.at("distance_rmse")) << "\n";
    text << "audit: enabled=" << (auditEnabled ? "yes" : "no")
         << " violations=" << violations << "\n";
    text << "gate precision>=0.85: " << (res.gatePrecision ? "pass" : "fail") << "\n";
    text << "gate accuracy>=0.82: " << (res.gateAccuracy ? "pass" : "fail") << "\n";
    res.text = text.str();
    return res;
}

} // namespace ntnsim
