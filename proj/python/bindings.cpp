#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "ntnsim/access.hpp"
#include "ntnsim/channel.hpp"
#include "ntnsim/config.hpp"
#include "ntnsim/errors.hpp"
#include "ntnsim/engine.hpp"
#include "ntnsim/io.hpp"
#include "ntnsim/metrics.hpp"
#include "ntnsim/sensing.hpp"

namespace py = pybind11;
using namespace ntnsim;

namespace {

using nlohmann::json;

json summary_to_json(const RunSummary& s) {
    auto opt = [](const std::optional<double>& v) {
        return v ? json(*v) : json(nullptr);
    };
    auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    double total = 0.0;
    for (double v : s.objectivePerSlot) {
        total += v;
    }
    json j;
    j["scenario"] = scenario_kind_name(s.kind);
    j["gamma"] = s.gamma;
    j["seed"] = s.seed;
    j["medians_db"] = {{"all", num(s.medianAllDb)},
                       {"hotspot", num(s.medianHotspotDb)},
                       {"victim", num(s.medianVictimDb)},
                       {"mobile", num(s.medianMobileDb)}};
    j["confusion"] = {{"tp", s.cm.tp}, {"fn", s.cm.fn}, {"fp", s.cm.fp}, {"tn", s.cm.tn}};
    j["scores"] = {{"accuracy", opt(s.sc.accuracy)},
                   {"precision", opt(s.sc.precision)},
                   {"recall", opt(s.sc.recall)},
                   {"f1", opt(s.sc.f1)}};
    j["tracking"] = {{"tracked_user", s.trackedUserId},
                     {"speed_rmse", num(s.speedRmse)},
                     {"distance_rmse", num(s.distanceRmse)}};
    j["objective_total"] = total;
    j["counts"] = {{"links", s.links.size()},
                   {"sensing", s.sensing.size()},
                   {"tracking", s.tracking.size()}};
    j["audit"] = {{"enabled", s.audit.enabled},
                  {"c1", s.audit.c1},
                  {"c2", s.audit.c2},
                  {"c3", s.audit.c3}};
    j["wall_clock_sec"] = s.wallClockSec;
    return j;
}

SimConfig config_from_string(const std::string& text) {
    if (text.empty()) {
        return default_config();
    }
    return config_from_json(json::parse(text));
}

ScenarioKind kind_from_string(const std::string& scenario) {
    if (scenario == "ntn") {
        return ScenarioKind::Ntn;
    }
    if (scenario == "tn") {
        return ScenarioKind::Tn;
    }
    throw ConfigError("scenario must be 'ntn' or 'tn'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "aerial network communication and sensing simulator core";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

    m.def("default_config_json",
          []() { return config_to_json(default_config()).dump(); });
    m.def("preset_config_json",
          [](const std::string& name) { return config_to_json(preset_config(name)).dump(); },
          py::arg("name"));

    m.def(
        "run_simulation_json",
        [](const std::string& configJson, const std::string& scenario, bool audit) {
            SimConfig cfg = config_from_string(configJson);
            RunSummary s = run(cfg, kind_from_string(scenario), audit);
            return summary_to_json(s).dump();
        },
        py::arg("config_json") = std::string(), py::arg("scenario") = "ntn",
        py::arg("audit") = false);

    m.def(
        "run_to_dir_json",
        [](const std::string& configJson, const std::string& scenario,
           const std::string& outDir, bool audit) {
            SimConfig cfg = config_from_string(configJson);
            RunSummary s = run(cfg, kind_from_string(scenario), audit);
            write_run_outputs(s, cfg, outDir);
            return summary_to_json(s).dump();
        },
        py::arg("config_json") = std::string(), py::arg("scenario") = "ntn",
        py::arg("out_dir") = std::string("out"), py::arg("audit") = false);

    m.def(
        "steering_vector",
        [](int mx, int my, double dx, double dy, double lam, double theta, double phi) {
            ArrayGeometry arr{mx, my, dx, dy, lam};
            return steering_vector(arr, theta, phi);
        },
        py::arg("mx"), py::arg("my"), py::arg("dx"), py::arg("dy"), py::arg("lam"),
        py::arg("theta"), py::arg("phi"));

    m.def(
        "mmse_zf",
        [](const Eigen::MatrixXcd& h, double rho, double pt) {
            Precoder p = mmse_zf(h, rho, pt);
            return py::make_tuple(p.W, p.beta);
        },
        py::arg("H"), py::arg("rho"), py::arg("pt"));

    m.def(
        "sus_select",
        [](const Eigen::MatrixXcd& h, double tau, int maxUsers) {
            std::vector<SusCandidate> cands;
            for (int i = 0; i < h.rows(); ++i) {
                cands.push_back({i, h.row(i).transpose()});
            }
            return sus_select(cands, tau, maxUsers);
        },
        py::arg("H"), py::arg("tau"), py::arg("max_users"));

    m.def(
        "sinr_and_rate",
        [](const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& w, double sigma2,
           const std::vector<double>& ext, double bandwidth) {
            auto reports = sinr_and_rate(h, w, sigma2, ext, bandwidth);
            std::vector<double> sinr;
            std::vector<double> rate;
            for (const auto& r : reports) {
                sinr.push_back(r.sinr);
                rate.push_back(r.rateBps);
            }
            return py::make_tuple(sinr, rate);
        },
        py::arg("H"), py::arg("W"), py::arg("sigma2"), py::arg("external_interference"),
        py::arg("bandwidth_hz"));

    m.def("estimate_doppler", &estimate_doppler, py::arg("g_prev"), py::arg("g_next"),
          py::arg("dt"));
    m.def("crb_variance", &crb_variance, py::arg("lam"), py::arg("dt"),
          py::arg("delta_proc"));
    m.def("confidence", &confidence, py::arg("lam"), py::arg("dt"), py::arg("delta_proc"));
    m.def("radar_sinr", &radar_sinr, py::arg("pt"), py::arg("g_tx"), py::arg("lam"),
          py::arg("rcs"), py::arg("g_proc"), py::arg("range"), py::arg("noise_power"));
    m.def("hibs_gain", &hibs_gain, py::arg("d"), py::arg("lam"));

    m.def(
        "classify_motion",
        [](double muHat, double sigmaV2, double lam, double vFloor, double z) {
            DopplerEstimate est;
            est.muHat = muHat;
            est.sigmaV2 = sigmaV2;
            return classify_motion(est, lam, vFloor, z, false).predicted;
        },
        py::arg("mu_hat"), py::arg("sigma_v2"), py::arg("lam"), py::arg("v_floor"),
        py::arg("z_score"));

    m.def(
        "solve_velocity",
        [](const Eigen::Vector2d& r1, const Eigen::Vector2d& r2, double vr1, double vr2,
           double detFloor) {
            VelocitySolve s = solve_velocity(r1, r2, vr1, vr2, detFloor);
            return py::make_tuple(s.v, s.speed);
        },
        py::arg("r1"), py::arg("r2"), py::arg("vr1"), py::arg("vr2"),
        py::arg("det_floor") = 0.05);

    m.def("integrate_distance", &integrate_distance, py::arg("d0"), py::arg("mu_ref"),
          py::arg("lam"), py::arg("dt"));

    m.def(
        "median",
        [](std::vector<double> values) { return empirical_cdf(std::move(values)).median(); },
        py::arg("values"));

    m.def(
        "scores",
        [](long long tp, long long fn, long long fp, long long tn) {
            ClassificationScores s = scores(ConfusionMatrix{tp, fn, fp, tn});
            auto opt = [](const std::optional<double>& v) -> py::object {
                return v ? py::cast(*v) : py::none();
            };
            py::dict d;
            d["accuracy"] = opt(s.accuracy);
            d["precision"] = opt(s.precision);
            d["recall"] = opt(s.recall);
            d["f1"] = opt(s.f1);
            return d;
        },
        py::arg("tp"), py::arg("fn"), py::arg("fp"), py::arg("tn"));
}
