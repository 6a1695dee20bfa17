#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "ntnsim/channel.hpp"
#include "ntnsim/scenario.hpp"

namespace ntnsim {

struct RadioConfig {
    double carrierUavHz = 28e9;
    double carrierHibsHz = 2e9;
    double carrierTnHz = 2e9;
    // Calibrated so the served mmWave population sits clearly above the
    // aerial-platform wideband floor in the nominal scenario.
    double txPowerUavW = 2.0;
    double txPowerHibsW = 1.0;
    double txPowerTnW = 1.0;
    double bandwidthUavHz = 100e6;
    double bandwidthHibsHz = 20e6;
    double bandwidthTnHz = 20e6;
    double noiseFigureDb = 9.0;
    double noiseDensityDbmHz = -174.0;
    int upaMx = 8;
    int upaMy = 8;

    double lambdaUav() const;
    double lambdaHibs() const;
    double lambdaTn() const;
    double noisePowerW(double bandwidthHz) const;
    ArrayGeometry upa() const; // half-wavelength spacing at the UAV carrier
};

struct AccessConfig {
    double tauSus = 0.5;
    int maxUsersPerUav = 2;
    int reuseGroups = 2;
    double rhoScale = 1e-3; // rho = rhoScale * sigma^2
    double rhoMin = 1e-9;   // fallback on singularity
};

struct SensingConfig {
    double processingGainDb = 20.0;
    double zScore = 3.0;
    double predictSpeedFloor = 0.0; // m/s, absolute floor in the detector
    double truthSpeedFloor = 0.3;   // m/s, ground-truth label floor
    double rcs = 1.0;               // m^2
    double radarNoiseW = 1e-13;
    double detFloor = 0.05; // 2x2 solve conditioning floor
    double confidenceWeight = 1.0;
    bool noiseEnabled = true;
};

struct PathLossTnConfig {
    double referenceDistance = 1.0;
    double exponent = 3.6;
    double shadowSigmaDb = 6.0;
};

struct ObjectiveConfig {
    double etaC = 0.5;
    double etaS = 0.5;
};

struct SimConfig {
    std::string preset = "paper-v1";
    ScenarioConfig scenario;
    RadioConfig radio;
    PathLossParams pathlossUav; // ricianK stored linear
    PathLossTnConfig pathlossTn;
    AccessConfig access;
    SensingConfig sensing;
    ObjectiveConfig objective;

    void validate() const; // throws ConfigError
};

// The built-in full-scale setup: 2 km side, 10 UAVs, 8x8 UPA, HIBS at 20 km,
// 40 terrestrial BSs, 100 slots of 0.1 s.
SimConfig default_config();

SimConfig preset_config(const std::string& name); // only "paper-v1" exists

SimConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const SimConfig& cfg);

SimConfig load_config(const std::string& path);

} // namespace ntnsim
