#include "ntnsim/channel.hpp"

#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>

#include "ntnsim/errors.hpp"

namespace ntnsim {

namespace {
constexpr double kSpeedOfLight = 299792458.0;
constexpr double kPi = std::numbers::pi;
} // namespace

LinkGeometry link_geometry(const NodeState& node, const UserState& user,
                           std::optional<double> prevDistance, double dt) {
    Eigen::Vector3d delta = user.position - node.position;
    double d = delta.norm();
    if (d <= 0.0) {
        throw GeometryError("link_geometry: node and user coincide");
    }
    LinkGeometry g;
    g.d = d;
    g.phi = std::atan2(delta.y(), delta.x());
    double h = node.position.z() - user.position.z();
    double s = std::min(1.0, std::max(-1.0, h / d));
    g.theta = std::asin(s);
    if (prevDistance.has_value()) {
        if (dt <= 0.0) {
            throw ConfigError("link_geometry: dt must be positive with a previous range");
        }
        g.vr = (d - *prevDistance) / dt;
    } else {
        // Analytic range rate; nodes are static and users move in the plane.
        Eigen::Vector2d horiz(delta.x(), delta.y());
        g.vr = horiz.dot(user.velocity) / d;
    }
    g.mu = 2.0 * g.vr / node.carrierWavelength;
    return g;
}

Eigen::VectorXcd steering_vector(const ArrayGeometry& array, double theta, double phi) {
    int nt = array.size();
    double k0 = 2.0 * kPi / array.lambda;
    double sinTheta = std::sin(theta);
    double ux = k0 * array.dx * sinTheta * std::cos(phi);
    double uy = k0 * array.dy * sinTheta * std::sin(phi);
    double scale = 1.0 / std::sqrt(static_cast<double>(nt));
    Eigen::VectorXcd a(nt);
    for (int n = 0; n < array.my; ++n) {
        for (int m = 0; m < array.mx; ++m) {
            double phase = -(m * ux + n * uy);
            a(m + n * array.mx) = std::polar(scale, phase);
        }
    }
    return a;
}

double pathloss_uav(double d, const PathLossParams& params, RngStream& rng) {
    double d0 = params.referenceDistance;
    if (d < d0) {
        static std::once_flag warned;
        std::call_once(warned, [] {
            std::fprintf(stderr, "warning: range below the path-loss reference distance, clamping\n");
        });
        d = d0;
    }
    double lambda = kSpeedOfLight / params.carrierFrequencyUav;
    double fsplAtRefDb = 20.0 * std::log10(4.0 * kPi * d0 / lambda);
    double lossDb = fsplAtRefDb + 10.0 * params.exponent * std::log10(d / d0);
    if (params.shadowSigmaDb > 0.0) {
        lossDb += params.shadowSigmaDb * rng.next_normal();
    }
    return std::pow(10.0, -lossDb / 20.0);
}

ChannelVector rician_channel(const LinkGeometry& geom, const ArrayGeometry& array,
                             double alphaLos, double ricianK, RngStream& rng) {
    int nt = array.size();
    Eigen::VectorXcd los = steering_vector(array, geom.theta, geom.phi);
    double losScale = std::sqrt(ricianK / (ricianK + 1.0));
    double nlosScale = std::sqrt(1.0 / (ricianK + 1.0));
    double entryScale = 1.0 / std::sqrt(static_cast<double>(nt));
    Eigen::VectorXcd h(nt);
    for (int k = 0; k < nt; ++k) {
        std::complex<double> nlos = rng.next_cnormal() * entryScale;
        h(k) = alphaLos * (losScale * los(k) + nlosScale * nlos);
    }
    return {std::move(h), alphaLos};
}

double hibs_gain(double d, double lambdaH) {
    if (d <= 0.0) {
        throw GeometryError("hibs_gain: non-positive range");
    }
    double ratio = lambdaH / (4.0 * kPi * d);
    return ratio * ratio;
}

} // namespace ntnsim
