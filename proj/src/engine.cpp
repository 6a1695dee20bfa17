#include "ntnsim/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>

#include "ntnsim/channel.hpp"
#include "ntnsim/errors.hpp"
#include "ntnsim/rng.hpp"
#include "ntnsim/scenario.hpp"

namespace ntnsim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double to_db(double linear) {
    return 10.0 * std::log10(std::max(linear, 1e-30));
}

double median_of(std::vector<double>& v) {
    if (v.empty()) {
        return kNan;
    }
    return empirical_cdf(v).median();
}

std::uint64_t link_entity(int node, int user, int totalUsers) {
    return static_cast<std::uint64_t>(node) * static_cast<std::uint64_t>(totalUsers) +
           static_cast<std::uint64_t>(user);
}

struct TrackAccum {
    std::vector<TrackPoint> points;
    bool complete = true; // valid solve at every slot so far
};

void finalize_medians(RunSummary& out) {
    std::vector<double> all;
    std::vector<double> byClass[3];
    for (const LinkReport& r : out.links) {
        double db = to_db(r.sinr);
        all.push_back(db);
        byClass[static_cast<int>(r.cls)].push_back(db);
    }
    out.medianAllDb = median_of(all);
    out.medianHotspotDb = median_of(byClass[static_cast<int>(UserClass::Hotspot)]);
    out.medianVictimDb = median_of(byClass[static_cast<int>(UserClass::Victim)]);
    out.medianMobileDb = median_of(byClass[static_cast<int>(UserClass::Mobile)]);
}

RunSummary run_ntn(const SimConfig& cfg, bool audit) {
    const ScenarioConfig& sc = cfg.scenario;
    const int K = sc.totalUsers();
    const int U = sc.uavCount;
    const double dt = sc.slotDuration;
    const double lambdaUav = cfg.radio.lambdaUav();
    const double lambdaHibs = cfg.radio.lambdaHibs();
    const double ptUav = cfg.radio.txPowerUavW;
    const double ptHibs = cfg.radio.txPowerHibsW;
    const double sigma2Uav = cfg.radio.noisePowerW(cfg.radio.bandwidthUavHz);
    const double sigma2Hibs = cfg.radio.noisePowerW(cfg.radio.bandwidthHibsHz);
    const double rho = cfg.access.rhoScale * sigma2Uav;
    const double gProc = std::pow(10.0, cfg.sensing.processingGainDb / 10.0);
    const ArrayGeometry upa = cfg.radio.upa();

    RunSummary out;
    out.kind = ScenarioKind::Ntn;
    out.gamma = sc.gamma;
    out.seed = sc.seed;
    out.audit.enabled = audit;

    std::vector<UserState> users = init_users(sc);
    std::vector<NodeState> uavs =
        place_uav_bs(users, U, sc, lambdaUav, ptUav, upa);
    NodeState hibs;
    hibs.id = 0;
    hibs.kind = NodeKind::Hibs;
    hibs.position = {sc.areaSide / 2.0, sc.areaSide / 2.0, sc.hibsAltitude};
    hibs.carrierWavelength = lambdaHibs;
    hibs.txPower = ptHibs;

    ReuseSchedule schedule = build_reuse_groups([&] {
        std::vector<int> ids(U);
        for (int u = 0; u < U; ++u) {
            ids[u] = u;
        }
        return ids;
    }(), cfg.access.reuseGroups);

    // Sensing continuity: last gain sample per user with its slot and UAV.
    struct LastGain {
        int slot = -10;
        int uav = -1;
        std::complex<double> g;
    };
    std::vector<LastGain> lastGain(K);

    // Round-robin carryover of users not yet picked by the selector.
    std::vector<std::set<int>> servedRecently(U);

    // Tracking state: previous user positions for ground-range differencing
    // and a fixed reference UAV per mobile user for range reconstruction.
    std::vector<Eigen::Vector3d> prevPositions;
    std::vector<int> refUav(K, -1);
    std::vector<double> dHat(K, 0.0);
    std::map<int, TrackAccum> tracks;
    std::vector<double> speedResiduals;
    std::vector<double> distResiduals;

    for (int i = 0; i < K; ++i) {
        if (users[i].cls == UserClass::Mobile) {
            double best = std::numeric_limits<double>::infinity();
            for (const NodeState& uav : uavs) {
                double d = (users[i].position.head<2>() - uav.position.head<2>()).norm();
                if (d < best) {
                    best = d;
                    refUav[i] = uav.id;
                }
            }
            dHat[i] = (users[i].position - uavs[refUav[i]].position).norm();
            tracks[i] = {};
        }
    }

    std::vector<MotionDecision> decisions;
    auto t0 = std::chrono::steady_clock::now();

    for (int t = 0; t < sc.slotCount; ++t) {
        try {
            if (t > 0) {
                prevPositions.clear();
                prevPositions.reserve(K);
                for (const UserState& u : users) {
                    prevPositions.push_back(u.position);
                }
                step_mobility(users, dt, sc, static_cast<std::uint64_t>(t));
            }

            // Channel snapshot for this slot.
            std::vector<std::vector<ChannelVector>> chan(U, std::vector<ChannelVector>(K));
            std::vector<std::vector<LinkGeometry>> geom(U, std::vector<LinkGeometry>(K));
            Eigen::MatrixXd norm2(K, U);
            for (int u = 0; u < U; ++u) {
                for (int i = 0; i < K; ++i) {
                    geom[u][i] = link_geometry(uavs[u], users[i], std::nullopt, dt);
                    RngStream shadowRng(sc.seed, StreamTag::Shadow,
                                        link_entity(u, i, K), static_cast<std::uint64_t>(t));
                    double alpha = pathloss_uav(geom[u][i].d, cfg.pathlossUav, shadowRng);
                    RngStream fadeRng(sc.seed, StreamTag::Fading,
                                      link_entity(u, i, K), static_cast<std::uint64_t>(t));
                    chan[u][i] = rician_channel(geom[u][i], upa, alpha,
                                                cfg.pathlossUav.ricianK, fadeRng);
                    norm2(i, u) = chan[u][i].coefficients.squaredNorm();
                }
            }
            Eigen::VectorXd hibsGain(K);
            for (int i = 0; i < K; ++i) {
                double d = (users[i].position - hibs.position).norm();
                hibsGain(i) = hibs_gain(d, lambdaHibs);
            }

            std::vector<ServingChoice> serving =
                associate(norm2, hibsGain, ptUav, sigma2Uav, ptHibs, sigma2Hibs);

            std::vector<std::vector<int>> assoc(U);
            for (int i = 0; i < K; ++i) {
                if (serving[i].kind == NodeKind::UavBs) {
                    assoc[serving[i].nodeId].push_back(i);
                }
            }

            // Per-user communication SINR of this slot (users selected by
            // their serving UAV in its mini-slot); feeds the sensing chain.
            std::vector<double> servedSinr(K, -1.0);
            double slotRateSum = 0.0;

            for (int m = 0; m < sc.miniSlotsPerSlot; ++m) {
                int g = schedule.activeGroup(m);
                const std::vector<int>& activeUavs = schedule.groups[g];

                struct ActiveTx {
                    int uav;
                    std::vector<int> served;
                    Precoder pre;
                };
                std::vector<ActiveTx> txs;

                for (int u : activeUavs) {
                    if (assoc[u].empty()) {
                        continue;
                    }
                    std::vector<int> eligible;
                    for (int i : assoc[u]) {
                        if (!servedRecently[u].count(i)) {
                            eligible.push_back(i);
                        }
                    }
                    if (eligible.empty()) {
                        servedRecently[u].clear();
                        eligible = assoc[u];
                    }
                    std::vector<SusCandidate> cands;
                    cands.reserve(eligible.size());
                    for (int i : eligible) {
                        cands.push_back({i, chan[u][i].coefficients});
                    }
                    std::vector<int> served =
                        sus_select(cands, cfg.access.tauSus, cfg.access.maxUsersPerUav);
                    if (served.empty()) {
                        continue;
                    }
                    for (int i : served) {
                        servedRecently[u].insert(i);
                    }
                    Eigen::MatrixXcd H(static_cast<int>(served.size()), upa.size());
                    for (std::size_t r = 0; r < served.size(); ++r) {
                        H.row(static_cast<int>(r)) = chan[u][served[r]].coefficients.transpose();
                    }
                    Precoder pre;
                    try {
                        pre = mmse_zf(H, rho, ptUav);
                    } catch (const NumericalError&) {
                        pre = mmse_zf(H, cfg.access.rhoMin, ptUav);
                    }
                    txs.push_back({u, std::move(served), std::move(pre)});
                }

                // Constraint audit on the mini-slot.
                std::set<int> seenUsers;
                for (const ActiveTx& tx : txs) {
                    double tr = tx.pre.W.squaredNorm();
                    if (std::abs(tr - ptUav) > 1e-9 * ptUav) {
                        ++out.audit.c1;
                    }
                    for (std::size_t a = 0; a < tx.served.size(); ++a) {
                        for (std::size_t b = a + 1; b < tx.served.size(); ++b) {
                            const auto& ha = chan[tx.uav][tx.served[a]].coefficients;
                            const auto& hb = chan[tx.uav][tx.served[b]].coefficients;
                            double corr = std::abs(hb.dot(ha)) / (ha.norm() * hb.norm());
                            if (corr >= cfg.access.tauSus) {
                                ++out.audit.c3;
                            }
                        }
                    }
                    for (int i : tx.served) {
                        if (!seenUsers.insert(i).second) {
                            ++out.audit.c2;
                        }
                        if (serving[i].kind != NodeKind::UavBs || serving[i].nodeId != tx.uav) {
                            ++out.audit.c2;
                        }
                    }
                }
                if (audit && (out.audit.c1 || out.audit.c2 || out.audit.c3)) {
                    throw NumericalError("constraint audit violation");
                }

                // SINR with co-channel interference from the other active
                // transmitters of the same mini-slot.
                for (const ActiveTx& tx : txs) {
                    int s = static_cast<int>(tx.served.size());
                    Eigen::MatrixXcd H(s, upa.size());
                    for (int r = 0; r < s; ++r) {
                        H.row(r) = chan[tx.uav][tx.served[r]].coefficients.transpose();
                    }
                    std::vector<double> ext(s, 0.0);
                    for (int r = 0; r < s; ++r) {
                        int i = tx.served[r];
                        for (const ActiveTx& other : txs) {
                            if (other.uav == tx.uav) {
                                continue;
                            }
                            const auto& hInt = chan[other.uav][i].coefficients;
                            Eigen::VectorXcd rx = other.pre.W.transpose() * hInt;
                            ext[r] += rx.squaredNorm();
                        }
                    }
                    std::vector<LinkReport> reports =
                        sinr_and_rate(H, tx.pre.W, sigma2Uav, ext, cfg.radio.bandwidthUavHz);
                    for (int r = 0; r < s; ++r) {
                        LinkReport& rep = reports[r];
                        rep.userId = tx.served[r];
                        rep.slot = t;
                        rep.miniSlot = m;
                        rep.servingKind = NodeKind::UavBs;
                        rep.servingNode = tx.uav;
                        rep.cls = users[tx.served[r]].cls;
                        servedSinr[tx.served[r]] = rep.sinr;
                        slotRateSum += rep.rateBps;
                        out.links.push_back(rep);
                    }
                }
            }

            // HIBS links, once per outer slot on orthogonal resources.
            std::vector<int> hibsUsers;
            for (int i = 0; i < K; ++i) {
                if (serving[i].kind == NodeKind::Hibs) {
                    hibsUsers.push_back(i);
                }
            }
            if (!hibsUsers.empty()) {
                double share = cfg.radio.bandwidthHibsHz / static_cast<double>(hibsUsers.size());
                for (int i : hibsUsers) {
                    LinkReport rep;
                    rep.userId = i;
                    rep.slot = t;
                    rep.miniSlot = 0;
                    rep.servingKind = NodeKind::Hibs;
                    rep.servingNode = 0;
                    rep.cls = users[i].cls;
                    rep.sinr = ptHibs * hibsGain(i) / sigma2Hibs;
                    rep.bandwidthHz = share;
                    rep.rateBps = share * std::log2(1.0 + rep.sinr);
                    slotRateSum += rep.rateBps;
                    out.links.push_back(rep);
                }
            }

            // Sensing chain for victim and mobile users with a UAV link.
            double slotConfidenceSum = 0.0;
            for (int i = 0; i < K; ++i) {
                if (users[i].cls == UserClass::Hotspot) {
                    continue;
                }
                if (serving[i].kind != NodeKind::UavBs) {
                    continue;
                }
                int u = serving[i].nodeId;
                const ChannelVector& cv = chan[u][i];
                // The sensing correlator is matched to the serving channel;
                // the post-processing SINR comes from the communication SINR
                // when the user was served this slot, else from the
                // matched-beam SNR of a dedicated dwell.
                Eigen::VectorXcd beam = cv.coefficients.conjugate() / cv.coefficients.norm();
                double deltaBase = servedSinr[i] >= 0.0
                                       ? servedSinr[i]
                                       : ptUav * cv.coefficients.squaredNorm() / sigma2Uav;
                double deltaProc = deltaBase * gProc;
                if (deltaProc <= 0.0) {
                    continue;
                }

                // Monostatic echo phase of the serving link.
                double phase = -4.0 * kPi * geom[u][i].d / lambdaUav;
                std::complex<double> s = (cv.coefficients.array() * beam.array()).sum();
                Eigen::VectorXcd hRot =
                    cv.coefficients * std::polar(1.0, phase - std::arg(s));
                std::complex<double> noise{0.0, 0.0};
                if (cfg.sensing.noiseEnabled) {
                    RngStream nRng(sc.seed, StreamTag::SensingNoise,
                                   static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(t));
                    noise = nRng.next_cnormal() * std::abs(s) / std::sqrt(deltaProc);
                }
                auto gOpt = normalized_gain(hRot, beam, noise);
                if (!gOpt) {
                    continue;
                }

                if (lastGain[i].slot == t - 1 && lastGain[i].uav == u) {
                    DopplerEstimate est;
                    est.muHat = estimate_doppler(lastGain[i].g, *gOpt, dt);
                    est.deltaProc = deltaProc;
                    est.sigmaV2 = crb_variance(lambdaUav, dt, deltaProc);
                    est.confidence = confidence(lambdaUav, dt, deltaProc);
                    bool truthMoving = users[i].cls == UserClass::Mobile &&
                                       users[i].speed() > cfg.sensing.truthSpeedFloor;
                    MotionDecision dec =
                        classify_motion(est, lambdaUav, cfg.sensing.predictSpeedFloor,
                                        cfg.sensing.zScore, truthMoving, i);
                    decisions.push_back(dec);
                    out.sensing.push_back({i, t, est.muHat, est.sigmaV2, est.confidence,
                                           dec.predicted, dec.truth});
                    slotConfidenceSum += cfg.sensing.confidenceWeight * est.confidence;
                }
                lastGain[i] = {t, u, *gOpt};
            }

            // Two-UAV kinematic tracking for mobile users.
            if (t > 0) {
                for (auto& [i, track] : tracks) {
                    const UserState& usr = users[i];

                    // Range reconstruction against the fixed reference UAV,
                    // radar sign convention (positive Doppler = approaching).
                    LinkGeometry ref = link_geometry(uavs[refUav[i]], usr, std::nullopt, dt);
                    double muRef = -2.0 * ref.vr / lambdaUav;
                    dHat[i] = integrate_distance(dHat[i], {muRef}, lambdaUav, dt).back();
                    distResiduals.push_back(dHat[i] - ref.d);

                    TrackPoint tp;
                    tp.slot = t;
                    tp.trueSpeed = usr.speed();
                    tp.trueDist = ref.d;
                    tp.estDist = dHat[i];

                    auto pair = select_uav_pair(uavs, usr);
                    bool solved = false;
                    if (pair) {
                        auto dir = [&](int uavId) {
                            Eigen::Vector2d delta =
                                usr.position.head<2>() - uavs[uavId].position.head<2>();
                            return Eigen::Vector2d(delta / delta.norm());
                        };
                        auto groundNow = [&](int uavId) {
                            return (usr.position.head<2>() - uavs[uavId].position.head<2>()).norm();
                        };
                        auto groundPrev = [&](int uavId) {
                            return (prevPositions[i].head<2>() - uavs[uavId].position.head<2>())
                                .norm();
                        };
                        double vr1 = range_rate(groundNow(pair->first), groundPrev(pair->first), dt);
                        double vr2 = range_rate(groundNow(pair->second), groundPrev(pair->second), dt);
                        try {
                            VelocitySolve sol = solve_velocity(dir(pair->first), dir(pair->second),
                                                               vr1, vr2, cfg.sensing.detFloor);
                            tp.estSpeed = sol.speed;
                            speedResiduals.push_back(sol.speed - usr.speed());
                            solved = true;
                        } catch (const NumericalError&) {
                        }
                    }
                    if (!solved) {
                        tp.estSpeed = kNan;
                        track.complete = false;
                    }
                    track.points.push_back(tp);
                }
            }

            out.objectivePerSlot.push_back(cfg.objective.etaC * slotRateSum +
                                           cfg.objective.etaS * slotConfidenceSum);
        } catch (const NumericalError& e) {
            throw NumericalError("slot " + std::to_string(t) + ": " + e.what());
        } catch (const GeometryError& e) {
            throw NumericalError("slot " + std::to_string(t) + ": " + e.what());
        }
    }

    out.cm = confusion(decisions);
    out.sc = scores(out.cm);
    finalize_medians(out);

    // Showcase trace: lowest mobile id whose track solved on every slot.
    for (auto& [i, track] : tracks) {
        if (track.complete && !track.points.empty()) {
            out.trackedUserId = i;
            out.tracking = std::move(track.points);
            break;
        }
    }

    auto rms = [](const std::vector<double>& r) {
        if (r.empty()) {
            return kNan;
        }
        double s = 0.0;
        for (double x : r) {
            s += x * x;
        }
        return std::sqrt(s / static_cast<double>(r.size()));
    };
    out.speedRmse = rms(speedResiduals);
    out.distanceRmse = rms(distResiduals);

    out.wallClockSec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

RunSummary run_tn(const SimConfig& cfg, bool audit) {
    const ScenarioConfig& sc = cfg.scenario;
    const int K = sc.totalUsers();
    const double dt = sc.slotDuration;
    const double sigma2 = cfg.radio.noisePowerW(cfg.radio.bandwidthTnHz);

    RunSummary out;
    out.kind = ScenarioKind::Tn;
    out.gamma = sc.gamma;
    out.seed = sc.seed;
    out.audit.enabled = audit;

    std::vector<UserState> users = init_users(sc);
    std::vector<NodeState> bss =
        place_terrestrial(sc.terrestrialCount, sc.gamma, sc.areaSide, sc.seed,
                          sc.towerHeight, cfg.radio.lambdaTn(), cfg.radio.txPowerTnW);
    int nb = static_cast<int>(bss.size());

    PathLossParams pl;
    pl.referenceDistance = cfg.pathlossTn.referenceDistance;
    pl.exponent = cfg.pathlossTn.exponent;
    pl.shadowSigmaDb = cfg.pathlossTn.shadowSigmaDb;
    pl.carrierFrequencyUav = cfg.radio.carrierTnHz; // reference-loss carrier

    auto t0 = std::chrono::steady_clock::now();

    for (int t = 0; t < sc.slotCount; ++t) {
        try {
            if (t > 0) {
                step_mobility(users, dt, sc, static_cast<std::uint64_t>(t));
            }
            Eigen::MatrixXd rx(K, std::max(nb, 0));
            for (int b = 0; b < nb; ++b) {
                for (int i = 0; i < K; ++i) {
                    double d = (users[i].position - bss[b].position).norm();
                    RngStream shadowRng(sc.seed, StreamTag::Shadow,
                                        link_entity(bss[b].id, i, K),
                                        static_cast<std::uint64_t>(t));
                    double amp = pathloss_uav(d, pl, shadowRng);
                    rx(i, b) = cfg.radio.txPowerTnW * amp * amp;
                }
            }
            std::vector<LinkReport> reports = tn_sinr(rx, sigma2, cfg.radio.bandwidthTnHz);
            double slotRateSum = 0.0;
            for (int i = 0; i < K; ++i) {
                LinkReport& rep = reports[i];
                rep.userId = i;
                rep.slot = t;
                rep.miniSlot = 0;
                rep.cls = users[i].cls;
                if (rep.servingNode >= 0) {
                    rep.servingNode = bss[rep.servingNode].id;
                }
                slotRateSum += rep.rateBps;
                out.links.push_back(rep);
            }
            out.objectivePerSlot.push_back(cfg.objective.etaC * slotRateSum);
        } catch (const NumericalError& e) {
            throw NumericalError("slot " + std::to_string(t) + ": " + e.what());
        } catch (const GeometryError& e) {
            throw NumericalError("slot " + std::to_string(t) + ": " + e.what());
        }
    }

    out.cm = confusion({});
    out.sc = scores(out.cm);
    finalize_medians(out);
    out.speedRmse = kNan;
    out.distanceRmse = kNan;
    out.wallClockSec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

} // namespace

const char* scenario_kind_name(ScenarioKind k) {
    return k == ScenarioKind::Ntn ? "ntn" : "tn";
}

RunSummary run(const SimConfig& cfg, ScenarioKind kind, bool audit) {
    cfg.validate();
    return kind == ScenarioKind::Ntn ? run_ntn(cfg, audit) : run_tn(cfg, audit);
}

std::vector<RunSummary> sweep_gamma(const SimConfig& cfg, const std::vector<double>& gammas,
                                    bool audit) {
    std::vector<RunSummary> out;
    out.push_back(run(cfg, ScenarioKind::Ntn, audit));
    for (double g : gammas) {
        SimConfig c = cfg;
        c.scenario.gamma = g;
        out.push_back(run(c, ScenarioKind::Tn, audit));
    }
    return out;
}

} // namespace ntnsim
