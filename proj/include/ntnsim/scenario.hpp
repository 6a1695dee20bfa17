#pragma once

#include <cstdint>
#include <vector>

#include "ntnsim/types.hpp"

namespace ntnsim {

struct ScenarioConfig {
    double areaSide = 2000.0; // meters, square with origin at a corner
    int hotspotUsers = 60;
    int victimUsers = 20;
    int mobileUsers = 120;
    std::vector<Eigen::Vector2d> hotspotCenters = {
        {500.0, 500.0}, {1500.0, 500.0}, {1000.0, 1500.0}};
    double hotspotRadius = 50.0;
    std::vector<Eigen::Vector2d> victimSites = {{700.0, 1200.0}, {1300.0, 800.0}};
    double victimSiteRadius = 10.0;
    int uavCount = 10;
    double uavAltitude = 120.0;
    double hibsAltitude = 20000.0;
    int terrestrialCount = 40;
    double towerHeight = 25.0;
    double gamma = 0.0;
    double slotDuration = 0.1; // seconds
    int slotCount = 100;
    int miniSlotsPerSlot = 2;
    double speedMin = 0.5; // m/s
    double speedMax = 3.0; // m/s
    double accelSigma = 0.2; // m/s^2
    std::uint64_t seed = 42;

    int totalUsers() const { return hotspotUsers + victimUsers + mobileUsers; }
};

// Hotspot users scatter around their nearest configured center, victims fill
// the rubble sites, mobile users are uniform over the area with a uniform
// heading and speed in [speedMin, speedMax].
std::vector<UserState> init_users(const ScenarioConfig& cfg);

// Uniform-acceleration update for mobile users; a fresh random acceleration
// is drawn each slot when accelSigma > 0, otherwise the current one is kept.
// Velocity (and acceleration) components reflect at the area edges.
void step_mobility(std::vector<UserState>& users, double dt,
                   const ScenarioConfig& cfg, std::uint64_t slot);

// Ground-truth Doppler 2 * speed / lambda from the full speed magnitude.
double true_speed_doppler(const UserState& user, double lambda);

// Seeded k-means with k-means++ initialization, an iteration cap and a
// centroid-movement tolerance; nearest-centroid ties break to the lowest
// centroid index. Returns k centroids.
std::vector<Eigen::Vector2d> kmeans_cluster(const std::vector<Eigen::Vector2d>& points,
                                            int k, std::uint64_t seed,
                                            int maxIter = 50, double tol = 1e-6);

// One UAV per hotspot-user centroid, remaining UAVs on k-means centroids of
// the non-hotspot users (uniform placement if that set is empty).
std::vector<NodeState> place_uav_bs(const std::vector<UserState>& users, int uavCount,
                                    const ScenarioConfig& cfg, double lambda,
                                    double txPower, const ArrayGeometry& antenna);

// Regular grid of terrestrial BSs with round(gamma * count) of them removed
// uniformly at random (seeded); survivors keep their grid ids.
std::vector<NodeState> place_terrestrial(int count, double gamma, double areaSide,
                                         std::uint64_t seed, double towerHeight,
                                         double lambda, double txPower);

} // namespace ntnsim
