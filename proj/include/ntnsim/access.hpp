#pragma once

#include <complex>
#include <vector>

#include "ntnsim/types.hpp"

namespace ntnsim {

struct ServingChoice {
    NodeKind kind = NodeKind::UavBs;
    int nodeId = -1;
    double snr = 0.0; // linear, the association metric
};

// SNR-based association: argmax over UAVs of ptUav * ||h||^2 / noiseUav
// (interference dropped at association time), falling back to the HIBS when
// its SNR is strictly larger; ties between UAVs break to the lowest id and a
// UAV/HIBS tie goes to the UAV.
std::vector<ServingChoice> associate(const Eigen::MatrixXd& uavChanNorm2, // users x uavs
                                     const Eigen::VectorXd& hibsPowerGain, // per user
                                     double ptUav, double noiseUav,
                                     double ptHibs, double noiseHibs);

struct ReuseSchedule {
    std::vector<std::vector<int>> groups; // disjoint UAV id groups

    int activeGroup(int miniSlot) const {
        return miniSlot % static_cast<int>(groups.size());
    }
};

// Round-robin partition by UAV id modulo the group count; mini-slot t
// activates group (t mod RG).
ReuseSchedule build_reuse_groups(const std::vector<int>& uavIds, int reuseGroups);

struct SusCandidate {
    int userId = -1;
    Eigen::VectorXcd channel;
};

// Greedy semi-orthogonal selection: sort by descending channel power, admit a
// candidate when its normalized correlation with every admitted channel stays
// below tau, stop at maxUsers.
std::vector<int> sus_select(const std::vector<SusCandidate>& candidates,
                            double tau, int maxUsers);

struct Precoder {
    Eigen::MatrixXcd W; // N_t x S, power-scaled columns
    double beta = 0.0;
    double rho = 0.0;
};

// Regularized channel inversion W_raw = H^H (H H^H + rho I)^-1, diagonal
// normalization so H W has equal diagonal entries, then power scaling to
// trace(W W^H) = pt.
Precoder mmse_zf(const Eigen::MatrixXcd& H, double rho, double pt);

struct LinkReport {
    int userId = -1;
    int slot = 0;
    int miniSlot = 0;
    NodeKind servingKind = NodeKind::UavBs;
    int servingNode = -1;
    UserClass cls = UserClass::Mobile;
    double sinr = 0.0;      // linear
    double rateBps = 0.0;
    double bandwidthHz = 0.0; // the value used in rate = B log2(1 + sinr)
};

// sinr_i = |h_i w_i|^2 / (sum_{s != i} |h_i w_s|^2 + ext_i + sigma2),
// rate_i = bandwidth * log2(1 + sinr_i). Only the SINR/rate/bandwidth fields
// of the reports are filled; identity fields belong to the caller.
std::vector<LinkReport> sinr_and_rate(const Eigen::MatrixXcd& H,
                                      const Eigen::MatrixXcd& W,
                                      double sigma2,
                                      const std::vector<double>& externalInterference,
                                      double bandwidthHz);

// Terrestrial benchmark: each user served by its strongest surviving BS, all
// other BSs interfere; zero survivors puts every user in outage.
// rxPower is users x bs received power in watts.
std::vector<LinkReport> tn_sinr(const Eigen::MatrixXd& rxPower, double sigma2,
                                double bandwidthHz);

} // namespace ntnsim
