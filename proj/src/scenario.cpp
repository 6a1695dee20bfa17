#include "ntnsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ntnsim/errors.hpp"
#include "ntnsim/rng.hpp"

namespace ntnsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::Vector2d uniform_in_disk(const Eigen::Vector2d& center, double radius, RngStream& rng) {
    double r = radius * std::sqrt(rng.next_u01());
    double ang = rng.next_uniform(0.0, kTwoPi);
    return center + r * Eigen::Vector2d(std::cos(ang), std::sin(ang));
}

double clamp01(double x, double side) {
    return std::min(side, std::max(0.0, x));
}

int nearest_index(const std::vector<Eigen::Vector2d>& pts, const Eigen::Vector2d& p) {
    int best = 0;
    double bestD = std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
        double d = (pts[i] - p).squaredNorm();
        if (d < bestD) {
            bestD = d;
            best = i;
        }
    }
    return best;
}

void reflect_axis(double& pos, double& vel, double& acc, double side) {
    while (pos < 0.0 || pos > side) {
        if (pos < 0.0) {
            pos = -pos;
        } else {
            pos = 2.0 * side - pos;
        }
        vel = -vel;
        acc = -acc;
    }
}

} // namespace

std::vector<UserState> init_users(const ScenarioConfig& cfg) {
    if (cfg.hotspotUsers < 0 || cfg.victimUsers < 0 || cfg.mobileUsers < 0) {
        throw ConfigError("init_users: negative user count");
    }
    if (cfg.hotspotUsers > 0 && cfg.hotspotCenters.empty()) {
        throw ConfigError("init_users: hotspot users configured without hotspot centers");
    }
    if (cfg.victimUsers > 0 && cfg.victimSites.empty()) {
        throw ConfigError("init_users: victim users configured without victim sites");
    }
    std::vector<UserState> users;
    users.reserve(cfg.totalUsers());
    int id = 0;
    for (int i = 0; i < cfg.hotspotUsers; ++i, ++id) {
        RngStream rng(cfg.seed, StreamTag::UserInit, static_cast<std::uint64_t>(id), 0);
        const Eigen::Vector2d& c = cfg.hotspotCenters[i % cfg.hotspotCenters.size()];
        Eigen::Vector2d p = uniform_in_disk(c, cfg.hotspotRadius, rng);
        UserState u;
        u.id = id;
        u.cls = UserClass::Hotspot;
        u.position = {clamp01(p.x(), cfg.areaSide), clamp01(p.y(), cfg.areaSide), 0.0};
        users.push_back(u);
    }
    for (int i = 0; i < cfg.victimUsers; ++i, ++id) {
        RngStream rng(cfg.seed, StreamTag::UserInit, static_cast<std::uint64_t>(id), 0);
        const Eigen::Vector2d& c = cfg.victimSites[i % cfg.victimSites.size()];
        Eigen::Vector2d p = uniform_in_disk(c, cfg.victimSiteRadius, rng);
        UserState u;
        u.id = id;
        u.cls = UserClass::Victim;
        u.position = {clamp01(p.x(), cfg.areaSide), clamp01(p.y(), cfg.areaSide), 0.0};
        users.push_back(u);
    }
    for (int i = 0; i < cfg.mobileUsers; ++i, ++id) {
        RngStream rng(cfg.seed, StreamTag::UserInit, static_cast<std::uint64_t>(id), 0);
        UserState u;
        u.id = id;
        u.cls = UserClass::Mobile;
        u.position = {rng.next_uniform(0.0, cfg.areaSide), rng.next_uniform(0.0, cfg.areaSide), 0.0};
        u.heading = rng.next_uniform(0.0, kTwoPi);
        double speed = rng.next_uniform(cfg.speedMin, cfg.speedMax);
        u.velocity = speed * Eigen::Vector2d(std::cos(u.heading), std::sin(u.heading));
        users.push_back(u);
    }
    return users;
}

void step_mobility(std::vector<UserState>& users, double dt,
                   const ScenarioConfig& cfg, std::uint64_t slot) {
    if (dt <= 0.0) {
        throw ConfigError("step_mobility: dt must be positive");
    }
    for (UserState& u : users) {
        if (u.cls != UserClass::Mobile) {
            continue;
        }
        u.position.x() += u.velocity.x() * dt + 0.5 * u.acceleration.x() * dt * dt;
        u.position.y() += u.velocity.y() * dt + 0.5 * u.acceleration.y() * dt * dt;
        u.velocity += u.acceleration * dt;
        reflect_axis(u.position.x(), u.velocity.x(), u.acceleration.x(), cfg.areaSide);
        reflect_axis(u.position.y(), u.velocity.y(), u.acceleration.y(), cfg.areaSide);
        if (cfg.accelSigma > 0.0) {
            RngStream rng(cfg.seed, StreamTag::Accel, static_cast<std::uint64_t>(u.id), slot);
            u.acceleration.x() = cfg.accelSigma * rng.next_normal();
            u.acceleration.y() = cfg.accelSigma * rng.next_normal();
        }
        u.heading = std::atan2(u.velocity.y(), u.velocity.x());
    }
}

double true_speed_doppler(const UserState& user, double lambda) {
    if (lambda <= 0.0) {
        throw ConfigError("true_speed_doppler: lambda must be positive");
    }
    return 2.0 * user.speed() / lambda;
}

std::vector<Eigen::Vector2d> kmeans_cluster(const std::vector<Eigen::Vector2d>& points,
                                            int k, std::uint64_t seed,
                                            int maxIter, double tol) {
    if (k <= 0) {
        throw ConfigError("kmeans_cluster: k must be positive");
    }
    if (points.empty()) {
        throw ConfigError("kmeans_cluster: empty point set");
    }
    int n = static_cast<int>(points.size());
    RngStream rng(seed, StreamTag::KMeans, 0, 0);

    // k-means++ seeding.
    std::vector<Eigen::Vector2d> centroids;
    centroids.reserve(k);
    centroids.push_back(points[static_cast<int>(rng.next_u01() * n) % n]);
    std::vector<double> d2(n);
    while (static_cast<int>(centroids.size()) < k) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : centroids) {
                best = std::min(best, (points[i] - c).squaredNorm());
            }
            d2[i] = best;
            total += best;
        }
        if (total <= 0.0) {
            // All points coincide with existing centroids; duplicate one.
            centroids.push_back(centroids.back());
            continue;
        }
        double target = rng.next_u01() * total;
        double acc = 0.0;
        int pick = n - 1;
        for (int i = 0; i < n; ++i) {
            acc += d2[i];
            if (acc >= target) {
                pick = i;
                break;
            }
        }
        centroids.push_back(points[pick]);
    }

    std::vector<int> assign(n, 0);
    for (int iter = 0; iter < maxIter; ++iter) {
        for (int i = 0; i < n; ++i) {
            assign[i] = nearest_index(centroids, points[i]);
        }
        double moved = 0.0;
        for (int c = 0; c < k; ++c) {
            Eigen::Vector2d sum = Eigen::Vector2d::Zero();
            int count = 0;
            for (int i = 0; i < n; ++i) {
                if (assign[i] == c) {
                    sum += points[i];
                    ++count;
                }
            }
            if (count > 0) {
                Eigen::Vector2d next = sum / count;
                moved = std::max(moved, (next - centroids[c]).norm());
                centroids[c] = next;
            }
        }
        if (moved < tol) {
            break;
        }
    }
    return centroids;
}

std::vector<NodeState> place_uav_bs(const std::vector<UserState>& users, int uavCount,
                                    const ScenarioConfig& cfg, double lambda,
                                    double txPower, const ArrayGeometry& antenna) {
    int hotspots = static_cast<int>(cfg.hotspotCenters.size());
    bool anyHotspotUsers = std::any_of(users.begin(), users.end(), [](const UserState& u) {
        return u.cls == UserClass::Hotspot;
    });
    if (!anyHotspotUsers) {
        hotspots = 0;
    }
    if (uavCount < hotspots) {
        throw ConfigError("place_uav_bs: fewer UAVs than hotspots");
    }

    std::vector<Eigen::Vector2d> positions;
    positions.reserve(uavCount);

    if (hotspots > 0) {
        std::vector<Eigen::Vector2d> sums(hotspots, Eigen::Vector2d::Zero());
        std::vector<int> counts(hotspots, 0);
        for (const UserState& u : users) {
            if (u.cls != UserClass::Hotspot) {
                continue;
            }
            int h = nearest_index(cfg.hotspotCenters, u.position.head<2>());
            sums[h] += u.position.head<2>();
            ++counts[h];
        }
        for (int h = 0; h < hotspots; ++h) {
            positions.push_back(counts[h] > 0 ? Eigen::Vector2d(sums[h] / counts[h])
                                              : cfg.hotspotCenters[h]);
        }
    }

    int remaining = uavCount - hotspots;
    if (remaining > 0) {
        std::vector<Eigen::Vector2d> rest;
        for (const UserState& u : users) {
            if (u.cls != UserClass::Hotspot) {
                rest.push_back(u.position.head<2>());
            }
        }
        if (rest.empty()) {
            RngStream rng(cfg.seed, StreamTag::KMeans, 1, 0);
            for (int i = 0; i < remaining; ++i) {
                positions.emplace_back(rng.next_uniform(0.0, cfg.areaSide),
                                       rng.next_uniform(0.0, cfg.areaSide));
            }
        } else {
            auto centroids = kmeans_cluster(rest, remaining, cfg.seed);
            positions.insert(positions.end(), centroids.begin(), centroids.end());
        }
    }

    std::vector<NodeState> nodes;
    nodes.reserve(uavCount);
    for (int i = 0; i < uavCount; ++i) {
        NodeState n;
        n.id = i;
        n.kind = NodeKind::UavBs;
        n.position = {positions[i].x(), positions[i].y(), cfg.uavAltitude};
        n.carrierWavelength = lambda;
        n.txPower = txPower;
        n.antenna = antenna;
        nodes.push_back(n);
    }
    return nodes;
}

std::vector<NodeState> place_terrestrial(int count, double gamma, double areaSide,
                                         std::uint64_t seed, double towerHeight,
                                         double lambda, double txPower) {
    if (count < 1) {
        throw ConfigError("place_terrestrial: count must be at least 1");
    }
    if (gamma < 0.0 || gamma > 1.0) {
        throw ConfigError("place_terrestrial: gamma outside [0, 1]");
    }
    int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count))));
    int rows = (count + cols - 1) / cols;
    std::vector<Eigen::Vector2d> grid;
    grid.reserve(count);
    for (int r = 0; r < rows && static_cast<int>(grid.size()) < count; ++r) {
        for (int c = 0; c < cols && static_cast<int>(grid.size()) < count; ++c) {
            grid.emplace_back((c + 0.5) * areaSide / cols, (r + 0.5) * areaSide / rows);
        }
    }

    int removed = static_cast<int>(std::floor(gamma * count + 0.5));
    std::vector<int> ids(count);
    for (int i = 0; i < count; ++i) {
        ids[i] = i;
    }
    RngStream rng(seed, StreamTag::TnFailure, 0, 0);
    for (int i = 0; i < removed; ++i) {
        int j = i + static_cast<int>(rng.next_u01() * (count - i));
        j = std::min(j, count - 1);
        std::swap(ids[i], ids[j]);
    }
    std::vector<int> survivors(ids.begin() + removed, ids.end());
    std::sort(survivors.begin(), survivors.end());

    std::vector<NodeState> nodes;
    nodes.reserve(survivors.size());
    for (int id : survivors) {
        NodeState n;
        n.id = id;
        n.kind = NodeKind::TerrestrialBs;
        n.position = {grid[id].x(), grid[id].y(), towerHeight};
        n.carrierWavelength = lambda;
        n.txPower = txPower;
        nodes.push_back(n);
    }
    return nodes;
}

} // namespace ntnsim
