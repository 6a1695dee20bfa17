#include "ntnsim/config.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "ntnsim/errors.hpp"

namespace ntnsim {

namespace {

constexpr double kSpeedOfLight = 299792458.0;

using nlohmann::json;

// Overwrites dst from j[key] when present; leaves the default otherwise.
template <typename T>
void get_if(const json& j, const char* key, T& dst) {
    if (j.contains(key)) {
        j.at(key).get_to(dst);
    }
}

void get_points(const json& j, const char* key, std::vector<Eigen::Vector2d>& dst) {
    if (!j.contains(key)) {
        return;
    }
    dst.clear();
    for (const auto& p : j.at(key)) {
        if (!p.is_array() || p.size() != 2) {
            throw ConfigError(std::string("config: ") + key + " entries must be [x, y] pairs");
        }
        dst.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
}

json points_to_json(const std::vector<Eigen::Vector2d>& pts) {
    json out = json::array();
    for (const auto& p : pts) {
        out.push_back({p.x(), p.y()});
    }
    return out;
}

} // namespace

double RadioConfig::lambdaUav() const { return kSpeedOfLight / carrierUavHz; }
double RadioConfig::lambdaHibs() const { return kSpeedOfLight / carrierHibsHz; }
double RadioConfig::lambdaTn() const { return kSpeedOfLight / carrierTnHz; }

double RadioConfig::noisePowerW(double bandwidthHz) const {
    double densityW = std::pow(10.0, (noiseDensityDbmHz - 30.0) / 10.0);
    double figure = std::pow(10.0, noiseFigureDb / 10.0);
    return densityW * bandwidthHz * figure;
}

ArrayGeometry RadioConfig::upa() const {
    ArrayGeometry a;
    a.mx = upaMx;
    a.my = upaMy;
    a.lambda = lambdaUav();
    a.dx = a.lambda / 2.0;
    a.dy = a.lambda / 2.0;
    return a;
}

void SimConfig::validate() const {
    if (scenario.areaSide <= 0.0) {
        throw ConfigError("config: areaSide must be positive");
    }
    if (scenario.totalUsers() <= 0) {
        throw ConfigError("config: no users configured");
    }
    if (scenario.uavCount < static_cast<int>(scenario.hotspotCenters.size()) &&
        scenario.hotspotUsers > 0) {
        throw ConfigError("config: fewer UAVs than hotspots");
    }
    if (scenario.gamma < 0.0 || scenario.gamma > 1.0) {
        throw ConfigError("config: gamma outside [0, 1]");
    }
    if (scenario.slotDuration <= 0.0) {
        throw ConfigError("config: slotDuration must be positive");
    }
    if (scenario.slotCount < 0) {
        throw ConfigError("config: negative slotCount");
    }
    if (scenario.speedMin < 0.0 || scenario.speedMax < scenario.speedMin) {
        throw ConfigError("config: bad speed range");
    }
    if (scenario.terrestrialCount < 1) {
        throw ConfigError("config: terrestrialCount must be at least 1");
    }
    if (radio.upaMx < 1 || radio.upaMy < 1) {
        throw ConfigError("config: UPA dimensions must be positive");
    }
    if (radio.txPowerUavW <= 0.0 || radio.txPowerHibsW <= 0.0 || radio.txPowerTnW <= 0.0) {
        throw ConfigError("config: transmit powers must be positive");
    }
    if (radio.bandwidthUavHz <= 0.0 || radio.bandwidthHibsHz <= 0.0 ||
        radio.bandwidthTnHz <= 0.0) {
        throw ConfigError("config: bandwidths must be positive");
    }
    if (radio.carrierUavHz <= 0.0 || radio.carrierHibsHz <= 0.0 || radio.carrierTnHz <= 0.0) {
        throw ConfigError("config: carrier frequencies must be positive");
    }
    if (access.tauSus <= 0.0 || access.tauSus > 1.0) {
        throw ConfigError("config: tauSus outside (0, 1]");
    }
    if (access.maxUsersPerUav < 1) {
        throw ConfigError("config: maxUsersPerUav must be at least 1");
    }
    if (access.reuseGroups < 1 || access.reuseGroups > scenario.uavCount) {
        throw ConfigError("config: reuseGroups outside [1, uavCount]");
    }
    if (scenario.miniSlotsPerSlot < 1) {
        throw ConfigError("config: miniSlotsPerSlot must be at least 1");
    }
    if (pathlossUav.exponent < 2.0 || pathlossTn.exponent < 2.0) {
        throw ConfigError("config: path-loss exponent below 2");
    }
    if (pathlossUav.ricianK < 0.0) {
        throw ConfigError("config: negative Rician factor");
    }
    if (sensing.zScore < 0.0 || sensing.predictSpeedFloor < 0.0 ||
        sensing.truthSpeedFloor < 0.0) {
        throw ConfigError("config: negative sensing threshold");
    }
}

SimConfig default_config() {
    SimConfig cfg;
    cfg.pathlossUav.referenceDistance = 1.0;
    cfg.pathlossUav.exponent = 2.5;
    cfg.pathlossUav.shadowSigmaDb = 4.0;
    cfg.pathlossUav.ricianK = std::pow(10.0, 10.0 / 10.0); // 10 dB
    cfg.pathlossUav.carrierFrequencyUav = cfg.radio.carrierUavHz;
    cfg.pathlossUav.carrierFrequencyHibs = cfg.radio.carrierHibsHz;
    return cfg;
}

SimConfig preset_config(const std::string& name) {
    if (name == "paper-v1") {
        return default_config();
    }
    throw ConfigError("unknown preset: " + name);
}

SimConfig config_from_json(const json& j) {
    SimConfig cfg = default_config();
    if (j.contains("preset")) {
        cfg = preset_config(j.at("preset").get<std::string>());
        cfg.preset = j.at("preset").get<std::string>();
    }
    if (j.contains("scenario")) {
        const json& s = j.at("scenario");
        get_if(s, "areaSide", cfg.scenario.areaSide);
        get_if(s, "hotspotUsers", cfg.scenario.hotspotUsers);
        get_if(s, "victimUsers", cfg.scenario.victimUsers);
        get_if(s, "mobileUsers", cfg.scenario.mobileUsers);
        get_points(s, "hotspotCenters", cfg.scenario.hotspotCenters);
        get_if(s, "hotspotRadius", cfg.scenario.hotspotRadius);
        get_points(s, "victimSites", cfg.scenario.victimSites);
        get_if(s, "victimSiteRadius", cfg.scenario.victimSiteRadius);
        get_if(s, "uavCount", cfg.scenario.uavCount);
        get_if(s, "uavAltitude", cfg.scenario.uavAltitude);
        get_if(s, "hibsAltitude", cfg.scenario.hibsAltitude);
        get_if(s, "terrestrialCount", cfg.scenario.terrestrialCount);
        get_if(s, "towerHeight", cfg.scenario.towerHeight);
        get_if(s, "gamma", cfg.scenario.gamma);
        get_if(s, "slotDuration", cfg.scenario.slotDuration);
        get_if(s, "slotCount", cfg.scenario.slotCount);
        get_if(s, "miniSlotsPerSlot", cfg.scenario.miniSlotsPerSlot);
        get_if(s, "speedMin", cfg.scenario.speedMin);
        get_if(s, "speedMax", cfg.scenario.speedMax);
        get_if(s, "accelSigma", cfg.scenario.accelSigma);
        get_if(s, "seed", cfg.scenario.seed);
    }
    if (j.contains("radio")) {
        const json& r = j.at("radio");
        get_if(r, "carrierUavHz", cfg.radio.carrierUavHz);
        get_if(r, "carrierHibsHz", cfg.radio.carrierHibsHz);
        get_if(r, "carrierTnHz", cfg.radio.carrierTnHz);
        get_if(r, "txPowerUavW", cfg.radio.txPowerUavW);
        get_if(r, "txPowerHibsW", cfg.radio.txPowerHibsW);
        get_if(r, "txPowerTnW", cfg.radio.txPowerTnW);
        get_if(r, "bandwidthUavHz", cfg.radio.bandwidthUavHz);
        get_if(r, "bandwidthHibsHz", cfg.radio.bandwidthHibsHz);
        get_if(r, "bandwidthTnHz", cfg.radio.bandwidthTnHz);
        get_if(r, "noiseFigureDb", cfg.radio.noiseFigureDb);
        get_if(r, "noiseDensityDbmHz", cfg.radio.noiseDensityDbmHz);
        get_if(r, "upaMx", cfg.radio.upaMx);
        get_if(r, "upaMy", cfg.radio.upaMy);
        cfg.pathlossUav.carrierFrequencyUav = cfg.radio.carrierUavHz;
        cfg.pathlossUav.carrierFrequencyHibs = cfg.radio.carrierHibsHz;
    }
    if (j.contains("pathlossUav")) {
        const json& p = j.at("pathlossUav");
        get_if(p, "referenceDistance", cfg.pathlossUav.referenceDistance);
        get_if(p, "exponent", cfg.pathlossUav.exponent);
        get_if(p, "shadowSigmaDb", cfg.pathlossUav.shadowSigmaDb);
        if (p.contains("ricianKDb")) {
            cfg.pathlossUav.ricianK = std::pow(10.0, p.at("ricianKDb").get<double>() / 10.0);
        }
    }
    if (j.contains("pathlossTn")) {
        const json& p = j.at("pathlossTn");
        get_if(p, "referenceDistance", cfg.pathlossTn.referenceDistance);
        get_if(p, "exponent", cfg.pathlossTn.exponent);
        get_if(p, "shadowSigmaDb", cfg.pathlossTn.shadowSigmaDb);
    }
    if (j.contains("access")) {
        const json& a = j.at("access");
        get_if(a, "tauSus", cfg.access.tauSus);
        get_if(a, "maxUsersPerUav", cfg.access.maxUsersPerUav);
        get_if(a, "reuseGroups", cfg.access.reuseGroups);
        get_if(a, "rhoScale", cfg.access.rhoScale);
        get_if(a, "rhoMin", cfg.access.rhoMin);
    }
    if (j.contains("sensing")) {
        const json& s = j.at("sensing");
        get_if(s, "processingGainDb", cfg.sensing.processingGainDb);
        get_if(s, "zScore", cfg.sensing.zScore);
        get_if(s, "predictSpeedFloor", cfg.sensing.predictSpeedFloor);
        get_if(s, "truthSpeedFloor", cfg.sensing.truthSpeedFloor);
        get_if(s, "rcs", cfg.sensing.rcs);
        get_if(s, "radarNoiseW", cfg.sensing.radarNoiseW);
        get_if(s, "detFloor", cfg.sensing.detFloor);
        get_if(s, "confidenceWeight", cfg.sensing.confidenceWeight);
        get_if(s, "noiseEnabled", cfg.sensing.noiseEnabled);
    }
    if (j.contains("objective")) {
        const json& o = j.at("objective");
        get_if(o, "etaC", cfg.objective.etaC);
        get_if(o, "etaS", cfg.objective.etaS);
    }
    cfg.validate();
    return cfg;
}

json config_to_json(const SimConfig& cfg) {
    json j;
    j["preset"] = cfg.preset;
    j["scenario"] = {
        {"areaSide", cfg.scenario.areaSide},
        {"hotspotUsers", cfg.scenario.hotspotUsers},
        {"victimUsers", cfg.scenario.victimUsers},
        {"mobileUsers", cfg.scenario.mobileUsers},
        {"hotspotCenters", points_to_json(cfg.scenario.hotspotCenters)},
        {"hotspotRadius", cfg.scenario.hotspotRadius},
        {"victimSites", points_to_json(cfg.scenario.victimSites)},
        {"victimSiteRadius", cfg.scenario.victimSiteRadius},
        {"uavCount", cfg.scenario.uavCount},
        {"uavAltitude", cfg.scenario.uavAltitude},
        {"hibsAltitude", cfg.scenario.hibsAltitude},
        {"terrestrialCount", cfg.scenario.terrestrialCount},
        {"towerHeight", cfg.scenario.towerHeight},
        {"gamma", cfg.scenario.gamma},
        {"slotDuration", cfg.scenario.slotDuration},
        {"slotCount", cfg.scenario.slotCount},
        {"miniSlotsPerSlot", cfg.scenario.miniSlotsPerSlot},
        {"speedMin", cfg.scenario.speedMin},
        {"speedMax", cfg.scenario.speedMax},
        {"accelSigma", cfg.scenario.accelSigma},
        {"seed", cfg.scenario.seed},
    };
    j["radio"] = {
        {"carrierUavHz", cfg.radio.carrierUavHz},
        {"carrierHibsHz", cfg.radio.carrierHibsHz},
        {"carrierTnHz", cfg.radio.carrierTnHz},
        {"txPowerUavW", cfg.radio.txPowerUavW},
        {"txPowerHibsW", cfg.radio.txPowerHibsW},
        {"txPowerTnW", cfg.radio.txPowerTnW},
        {"bandwidthUavHz", cfg.radio.bandwidthUavHz},
        {"bandwidthHibsHz", cfg.radio.bandwidthHibsHz},
        {"bandwidthTnHz", cfg.radio.bandwidthTnHz},
        {"noiseFigureDb", cfg.radio.noiseFigureDb},
        {"noiseDensityDbmHz", cfg.radio.noiseDensityDbmHz},
        {"upaMx", cfg.radio.upaMx},
        {"upaMy", cfg.radio.upaMy},
    };
    j["pathlossUav"] = {
        {"referenceDistance", cfg.pathlossUav.referenceDistance},
        {"exponent", cfg.pathlossUav.exponent},
        {"shadowSigmaDb", cfg.pathlossUav.shadowSigmaDb},
        {"ricianKDb", 10.0 * std::log10(cfg.pathlossUav.ricianK)},
    };
    j["pathlossTn"] = {
        {"referenceDistance", cfg.pathlossTn.referenceDistance},
        {"exponent", cfg.pathlossTn.exponent},
        {"shadowSigmaDb", cfg.pathlossTn.shadowSigmaDb},
    };
    j["access"] = {
        {"tauSus", cfg.access.tauSus},
        {"maxUsersPerUav", cfg.access.maxUsersPerUav},
        {"reuseGroups", cfg.access.reuseGroups},
        {"rhoScale", cfg.access.rhoScale},
        {"rhoMin", cfg.access.rhoMin},
    };
    j["sensing"] = {
        {"processingGainDb", cfg.sensing.processingGainDb},
        {"zScore", cfg.sensing.zScore},
        {"predictSpeedFloor", cfg.sensing.predictSpeedFloor},
        {"truthSpeedFloor", cfg.sensing.truthSpeedFloor},
        {"rcs", cfg.sensing.rcs},
        {"radarNoiseW", cfg.sensing.radarNoiseW},
        {"detFloor", cfg.sensing.detFloor},
        {"confidenceWeight", cfg.sensing.confidenceWeight},
        {"noiseEnabled", cfg.sensing.noiseEnabled},
    };
    j["objective"] = {
        {"etaC", cfg.objective.etaC},
        {"etaS", cfg.objective.etaS},
    };
    return j;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    try {
        return config_from_json(j);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    }
}

} // namespace ntnsim
