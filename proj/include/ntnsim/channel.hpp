#pragma once

#include <optional>

#include "ntnsim/rng.hpp"
#include "ntnsim/types.hpp"

namespace ntnsim {

// Geometry of one node-user link. theta is elevation measured from the
// horizontal plane (sin(theta) = node altitude / d), phi the azimuth from the
// node's ground projection toward the user. vr is the range rate (positive
// when the range grows) and mu = 2 * vr / lambda.
struct LinkGeometry {
    double d = 0.0;     // meters, 3D distance
    double phi = 0.0;   // rad
    double theta = 0.0; // rad
    double vr = 0.0;    // m/s
    double mu = 0.0;    // Hz
};

struct ChannelVector {
    Eigen::VectorXcd coefficients;  // length N_t
    double largeScaleGain = 0.0;    // linear amplitude gain
};

struct PathLossParams {
    double referenceDistance = 1.0; // meters
    double exponent = 2.5;
    double shadowSigmaDb = 4.0;
    double ricianK = 10.0;            // linear
    double carrierFrequencyUav = 28e9; // Hz
    double carrierFrequencyHibs = 2e9; // Hz
};

// Range rate comes from (d - prevDistance) / dt when the previous range is
// known, otherwise from the analytic projection of the user velocity.
LinkGeometry link_geometry(const NodeState& node, const UserState& user,
                           std::optional<double> prevDistance, double dt);

// Element (m, n) = (1/sqrt(N_t)) exp(-j k0 (m dx sin(theta) cos(phi)
//                                          + n dy sin(theta) sin(phi))),
// flat index m + n * mx. Unit Euclidean norm.
Eigen::VectorXcd steering_vector(const ArrayGeometry& array, double theta, double phi);

// Log-distance path loss with log-normal shadowing; free-space loss at the
// reference distance. Returns the linear amplitude gain.
double pathloss_uav(double d, const PathLossParams& params, RngStream& rng);

// sqrt(K/(K+1)) alpha a_t + sqrt(1/(K+1)) alpha h_nlos, where h_nlos has
// i.i.d. CN(0, 1/N_t) entries so its expected squared norm matches ||a_t||^2.
ChannelVector rician_channel(const LinkGeometry& geom, const ArrayGeometry& array,
                             double alphaLos, double ricianK, RngStream& rng);

// Free-space power gain (lambda / (4 pi d))^2.
double hibs_gain(double d, double lambdaH);

} // namespace ntnsim
