#include "ntnsim/access.hpp"

#include <algorithm>
#include <cmath>

#include "ntnsim/errors.hpp"

namespace ntnsim {

std::vector<ServingChoice> associate(const Eigen::MatrixXd& uavChanNorm2,
                                     const Eigen::VectorXd& hibsPowerGain,
                                     double ptUav, double noiseUav,
                                     double ptHibs, double noiseHibs) {
    int users = static_cast<int>(uavChanNorm2.rows());
    int uavs = static_cast<int>(uavChanNorm2.cols());
    if (hibsPowerGain.size() != users) {
        throw ConfigError("associate: user dimension mismatch");
    }
    std::vector<ServingChoice> out(users);
    for (int i = 0; i < users; ++i) {
        int bestUav = -1;
        double bestSnr = -1.0;
        for (int u = 0; u < uavs; ++u) {
            double snr = ptUav * uavChanNorm2(i, u) / noiseUav;
            if (snr > bestSnr) {
                bestSnr = snr;
                bestUav = u;
            }
        }
        double hibsSnr = ptHibs * hibsPowerGain(i) / noiseHibs;
        if (bestUav >= 0 && bestSnr >= hibsSnr) {
            out[i] = {NodeKind::UavBs, bestUav, bestSnr};
        } else {
            out[i] = {NodeKind::Hibs, 0, hibsSnr};
        }
    }
    return out;
}

ReuseSchedule build_reuse_groups(const std::vector<int>& uavIds, int reuseGroups) {
    if (reuseGroups < 1 || reuseGroups > static_cast<int>(uavIds.size())) {
        throw ConfigError("build_reuse_groups: group count outside [1, uav count]");
    }
    ReuseSchedule s;
    s.groups.resize(reuseGroups);
    for (int id : uavIds) {
        s.groups[id % reuseGroups].push_back(id);
    }
    return s;
}

std::vector<int> sus_select(const std::vector<SusCandidate>& candidates,
                            double tau, int maxUsers) {
    if (tau <= 0.0 || tau > 1.0) {
        throw ConfigError("sus_select: tau outside (0, 1]");
    }
    if (maxUsers < 1) {
        throw ConfigError("sus_select: maxUsers must be at least 1");
    }
    std::vector<int> order(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        order[i] = static_cast<int>(i);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        double pa = candidates[a].channel.squaredNorm();
        double pb = candidates[b].channel.squaredNorm();
        if (pa != pb) {
            return pa > pb;
        }
        return candidates[a].userId < candidates[b].userId;
    });

    std::vector<int> admittedIdx;
    std::vector<int> served;
    for (int idx : order) {
        if (static_cast<int>(served.size()) >= maxUsers) {
            break;
        }
        const Eigen::VectorXcd& h = candidates[idx].channel;
        double hn = h.norm();
        if (hn == 0.0) {
            continue;
        }
        bool ok = true;
        for (int j : admittedIdx) {
            const Eigen::VectorXcd& hj = candidates[j].channel;
            double corr = std::abs(hj.dot(h)) / (hn * hj.norm());
            if (corr >= tau) {
                ok = false;
                break;
            }
        }
        if (ok) {
            admittedIdx.push_back(idx);
            served.push_back(candidates[idx].userId);
        }
    }
    return served;
}

Precoder mmse_zf(const Eigen::MatrixXcd& H, double rho, double pt) {
    int s = static_cast<int>(H.rows());
    int nt = static_cast<int>(H.cols());
    if (s > nt) {
        throw ConfigError("mmse_zf: more users than antennas");
    }
    if (rho < 0.0) {
        throw ConfigError("mmse_zf: negative regularization");
    }
    Eigen::MatrixXcd G = H * H.adjoint();
    G.diagonal().array() += rho;
    Eigen::MatrixXcd Wraw = H.adjoint() * G.partialPivLu().solve(Eigen::MatrixXcd::Identity(s, s));
    if (!Wraw.allFinite()) {
        throw NumericalError("mmse_zf: singular channel Gram matrix");
    }
    Eigen::VectorXcd diag = (H * Wraw).diagonal();
    for (int i = 0; i < s; ++i) {
        if (std::abs(diag(i)) == 0.0 || !std::isfinite(std::abs(diag(i)))) {
            throw NumericalError("mmse_zf: vanishing effective channel diagonal");
        }
    }
    Eigen::MatrixXcd Wd = Wraw * diag.cwiseInverse().asDiagonal();
    double fro2 = Wd.squaredNorm();
    if (!(fro2 > 0.0) || !std::isfinite(fro2)) {
        throw NumericalError("mmse_zf: degenerate precoder norm");
    }
    Precoder p;
    p.beta = std::sqrt(pt / fro2);
    p.W = p.beta * Wd;
    p.rho = rho;
    return p;
}

std::vector<LinkReport> sinr_and_rate(const Eigen::MatrixXcd& H,
                                      const Eigen::MatrixXcd& W,
                                      double sigma2,
                                      const std::vector<double>& externalInterference,
                                      double bandwidthHz) {
    int s = static_cast<int>(H.rows());
    if (W.cols() != s || W.rows() != H.cols()) {
        throw ConfigError("sinr_and_rate: dimension mismatch");
    }
    if (!externalInterference.empty() && static_cast<int>(externalInterference.size()) != s) {
        throw ConfigError("sinr_and_rate: external interference length mismatch");
    }
    Eigen::MatrixXcd eff = H * W; // eff(i, j) = h_i w_j
    std::vector<LinkReport> out(s);
    for (int i = 0; i < s; ++i) {
        double signal = std::norm(eff(i, i));
        double interf = 0.0;
        for (int j = 0; j < s; ++j) {
            if (j != i) {
                interf += std::norm(eff(i, j));
            }
        }
        double ext = externalInterference.empty() ? 0.0 : externalInterference[i];
        double sinr = signal / (interf + ext + sigma2);
        out[i].sinr = sinr;
        out[i].bandwidthHz = bandwidthHz;
        out[i].rateBps = bandwidthHz * std::log2(1.0 + sinr);
    }
    return out;
}

std::vector<LinkReport> tn_sinr(const Eigen::MatrixXd& rxPower, double sigma2,
                                double bandwidthHz) {
    int users = static_cast<int>(rxPower.rows());
    int bs = static_cast<int>(rxPower.cols());
    std::vector<LinkReport> out(users);
    for (int i = 0; i < users; ++i) {
        LinkReport& r = out[i];
        r.servingKind = NodeKind::TerrestrialBs;
        r.bandwidthHz = bandwidthHz;
        int best = 0;
        for (int b = 1; b < bs; ++b) {
            if (rxPower(i, b) > rxPower(i, best)) {
                best = b;
            }
        }
        if (bs == 0 || rxPower(i, best) <= 0.0) {
            r.servingNode = -1;
            r.sinr = 0.0;
            r.rateBps = 0.0;
            continue;
        }
        double interf = rxPower.row(i).sum() - rxPower(i, best);
        r.servingNode = best;
        r.sinr = rxPower(i, best) / (interf + sigma2);
        r.rateBps = bandwidthHz * std::log2(1.0 + r.sinr);
    }
    return out;
}

} // namespace ntnsim
