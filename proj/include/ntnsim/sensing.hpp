#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "ntnsim/types.hpp"

namespace ntnsim {

struct GainSample {
    int userId = -1;
    int slot = 0;
    std::complex<double> g; // unit modulus
};

struct DopplerEstimate {
    double muHat = 0.0;     // Hz
    double sigmaV2 = 0.0;   // m^2/s^2
    double confidence = 0.0;
    double deltaProc = 0.0; // linear SINR after processing gain
};

struct MotionDecision {
    int userId = -1;
    bool predicted = false;
    bool truth = false;
};

// g = (h.w + noise) / |h.w + noise|; an exactly zero numerator means the
// sample is skipped (empty optional).
std::optional<std::complex<double>> normalized_gain(const Eigen::VectorXcd& h,
                                                    const Eigen::VectorXcd& w,
                                                    std::complex<double> noise = {0.0, 0.0});

// Principal-value phase of conj(gPrev) * gNext over 2 pi dt; range is
// +-1/(2 dt).
double estimate_doppler(std::complex<double> gPrev, std::complex<double> gNext, double dt);

// Variance proxy lambda^2 / (8 pi^2 dt^2 deltaProc).
double crb_variance(double lambda, double dt, double deltaProc);

// Motion confidence (2 pi dt / lambda) * sqrt(deltaProc).
double confidence(double lambda, double dt, double deltaProc);

// Radial speed estimate |muHat| lambda / 2 against a noise-floor z-test plus
// an absolute speed floor; truth is supplied by the caller from ground-truth
// state only.
MotionDecision classify_motion(const DopplerEstimate& est, double lambda,
                               double vMinMoving, double zScore, bool truthMoving,
                               int userId = -1);

// pt^2 gTx^2 lambda^2 rcs gProc / ((4 pi)^3 R^4 noisePower).
double radar_sinr(double pt, double gTx, double lambda, double rcs, double gProc,
                  double range, double noisePower);

// The UAV pair whose 2D unit line-of-sight vectors toward the user have the
// smallest |dot| (largest angular separation); ties break to the lowest id
// pair. Empty when fewer than two UAVs exist.
std::optional<std::pair<int, int>> select_uav_pair(const std::vector<NodeState>& uavs,
                                                   const UserState& user);

double range_rate(double dNow, double dPrev, double dt);

struct VelocitySolve {
    Eigen::Vector2d v = Eigen::Vector2d::Zero();
    double speed = 0.0;
};

// Solves [r1^T; r2^T] v = [vr1; vr2]; a determinant magnitude at or below
// detFloor reports near-collinear geometry.
VelocitySolve solve_velocity(const Eigen::Vector2d& r1, const Eigen::Vector2d& r2,
                             double vr1, double vr2, double detFloor = 0.05);

// Anchored cumulative reconstruction under the radar sign convention
// (positive mu means the target approaches): out[0] = d0 and
// out[k] = out[k-1] - (lambda / 2) * muRef[k-1] * dt. Output length is
// muRef.size() + 1.
std::vector<double> integrate_distance(double d0, const std::vector<double>& muRef,
                                       double lambda, double dt);

} // namespace ntnsim
