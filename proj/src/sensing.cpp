#include "ntnsim/sensing.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ntnsim/errors.hpp"

namespace ntnsim {

namespace {
constexpr double kPi = std::numbers::pi;
} // namespace

std::optional<std::complex<double>> normalized_gain(const Eigen::VectorXcd& h,
                                                    const Eigen::VectorXcd& w,
                                                    std::complex<double> noise) {
    if (h.size() != w.size()) {
        throw ConfigError("normalized_gain: dimension mismatch");
    }
    std::complex<double> s = (h.array() * w.array()).sum() + noise;
    double mag = std::abs(s);
    if (mag == 0.0) {
        return std::nullopt;
    }
    return s / mag;
}

double estimate_doppler(std::complex<double> gPrev, std::complex<double> gNext, double dt) {
    if (dt <= 0.0) {
        throw ConfigError("estimate_doppler: dt must be positive");
    }
    double phase = std::arg(std::conj(gPrev) * gNext);
    return phase / (2.0 * kPi * dt);
}

double crb_variance(double lambda, double dt, double deltaProc) {
    if (deltaProc <= 0.0) {
        throw NumericalError("crb_variance: deltaProc must be positive");
    }
    return lambda * lambda / (8.0 * kPi * kPi * dt * dt * deltaProc);
}

double confidence(double lambda, double dt, double deltaProc) {
    if (deltaProc < 0.0) {
        throw NumericalError("confidence: negative deltaProc");
    }
    return (2.0 * kPi * dt / lambda) * std::sqrt(deltaProc);
}

MotionDecision classify_motion(const DopplerEstimate& est, double lambda,
                               double vMinMoving, double zScore, bool truthMoving,
                               int userId) {
    double vHat = std::abs(est.muHat) * lambda / 2.0;
    double threshold = std::max(vMinMoving, zScore * std::sqrt(est.sigmaV2));
    MotionDecision d;
    d.userId = userId;
    d.predicted = vHat > threshold;
    d.truth = truthMoving;
    return d;
}

double radar_sinr(double pt, double gTx, double lambda, double rcs, double gProc,
                  double range, double noisePower) {
    if (range <= 0.0) {
        throw GeometryError("radar_sinr: non-positive range");
    }
    double fourPi = 4.0 * kPi;
    double numer = pt * pt * gTx * gTx * lambda * lambda * rcs * gProc;
    double denom = fourPi * fourPi * fourPi * range * range * range * range * noisePower;
    return numer / denom;
}

std::optional<std::pair<int, int>> select_uav_pair(const std::vector<NodeState>& uavs,
                                                   const UserState& user) {
    int n = static_cast<int>(uavs.size());
    if (n < 2) {
        return std::nullopt;
    }
    std::vector<Eigen::Vector2d> dirs(n);
    for (int i = 0; i < n; ++i) {
        Eigen::Vector2d delta = user.position.head<2>() - uavs[i].position.head<2>();
        double norm = delta.norm();
        dirs[i] = norm > 0.0 ? Eigen::Vector2d(delta / norm) : Eigen::Vector2d::Zero();
    }
    double best = std::numeric_limits<double>::infinity();
    std::pair<int, int> bestPair{-1, -1};
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            double score = std::abs(dirs[a].dot(dirs[b]));
            std::pair<int, int> ids{std::min(uavs[a].id, uavs[b].id),
                                    std::max(uavs[a].id, uavs[b].id)};
            if (score < best || (score == best && ids < bestPair)) {
                best = score;
                bestPair = ids;
            }
        }
    }
    return bestPair;
}

double range_rate(double dNow, double dPrev, double dt) {
    if (dt <= 0.0) {
        throw ConfigError("range_rate: dt must be positive");
    }
    return (dNow - dPrev) / dt;
}

VelocitySolve solve_velocity(const Eigen::Vector2d& r1, const Eigen::Vector2d& r2,
                             double vr1, double vr2, double detFloor) {
    double det = r1.x() * r2.y() - r1.y() * r2.x();
    if (std::abs(det) <= detFloor) {
        throw NumericalError("solve_velocity: near-collinear geometry");
    }
    VelocitySolve s;
    s.v.x() = (vr1 * r2.y() - vr2 * r1.y()) / det;
    s.v.y() = (vr2 * r1.x() - vr1 * r2.x()) / det;
    s.speed = s.v.norm();
    return s;
}

std::vector<double> integrate_distance(double d0, const std::vector<double>& muRef,
                                       double lambda, double dt) {
    if (muRef.empty()) {
        throw ConfigError("integrate_distance: empty Doppler series");
    }
    if (d0 <= 0.0) {
        throw ConfigError("integrate_distance: non-positive anchor distance");
    }
    std::vector<double> out;
    out.reserve(muRef.size() + 1);
    out.push_back(d0);
    double d = d0;
    for (double mu : muRef) {
        d -= 0.5 * lambda * mu * dt;
        out.push_back(d);
    }
    return out;
}

} // namespace ntnsim
