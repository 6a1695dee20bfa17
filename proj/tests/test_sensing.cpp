#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "ntnsim/errors.hpp"
#include "ntnsim/rng.hpp"
#include "ntnsim/sensing.hpp"

using namespace ntnsim;

TEST_CASE("normalized gain is the unit-modulus matched response") {
    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(3);
    e1[0] = 1.0;
    auto g = normalized_gain(e1, e1);
    REQUIRE(g.has_value());
    CHECK(std::abs(*g - std::complex<double>(1.0, 0.0)) < 1e-15);

    Eigen::VectorXcd h = Eigen::VectorXcd::Zero(3);
    h[0] = std::polar(2.5, 0.7);
    auto g2 = normalized_gain(h, e1);
    REQUIRE(g2.has_value());
    CHECK(std::abs(*g2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::arg(*g2) == doctest::Approx(0.7).epsilon(1e-12));

    Eigen::VectorXcd z = Eigen::VectorXcd::Zero(3);
    CHECK(!normalized_gain(z, e1).has_value());
    CHECK_THROWS_AS(normalized_gain(e1, Eigen::VectorXcd::Zero(2)), ConfigError);
}

TEST_CASE("phase ramps below the ambiguity limit are recovered exactly") {
    double dt = 1e-3;
    for (double mu : {3.0, 120.5, -410.0, 499.0}) {
        std::complex<double> g0 = std::polar(1.0, 0.35);
        std::complex<double> g1 = std::polar(1.0, 0.35 + 2.0 * M_PI * mu * dt);
        double est = estimate_doppler(g0, g1, dt);
        CHECK(std::abs(est - mu) <= 1e-9 * std::abs(mu));
    }

    // Above half the sampling rate the phase wraps.
    double mu = 900.0; // ambiguity limit is 500 Hz at dt = 1 ms
    std::complex<double> g0 = std::polar(1.0, 0.0);
    std::complex<double> g1 = std::polar(1.0, 2.0 * M_PI * mu * dt);
    CHECK(estimate_doppler(g0, g1, dt) == doctest::Approx(-100.0).epsilon(1e-9));

    CHECK_THROWS_AS(estimate_doppler(g0, g1, 0.0), ConfigError);
}

TEST_CASE("variance proxy and confidence match independent evaluation") {
    double lambda = 0.0107;
    double dt = 0.1;
    double delta = 100.0;

    double var = crb_variance(lambda, dt, delta);
    double indep = (lambda / (2.0 * M_PI * dt)) * (lambda / (2.0 * M_PI * dt)) /
                   (2.0 * delta);
    CHECK(std::abs(var - indep) <= 1e-12 * indep);
    CHECK(var == doctest::Approx(1.45003e-6).epsilon(1e-4));

    double conf = confidence(lambda, dt, delta);
    double indepConf = std::sqrt(delta) / (lambda / (2.0 * M_PI * dt));
    CHECK(std::abs(conf - indepConf) <= 1e-12 * indepConf);
    CHECK(conf == doctest::Approx(587.21).epsilon(1e-3));

    // Confidence grows with processing quality, variance shrinks.
    CHECK(confidence(lambda, dt, 400.0) > conf);
    CHECK(crb_variance(lambda, dt, 400.0) < var);
    CHECK_THROWS_AS(crb_variance(lambda, dt, 0.0), NumericalError);
    CHECK_THROWS_AS(confidence(lambda, dt, -1.0), NumericalError);
}

TEST_CASE("estimator variance stays within a small factor of the proxy") {
    double dt = 1e-3;
    double lambda = 0.0107;
    double mu = 50.0;
    double delta = 100.0; // 20 dB
    RngStream rng(99, StreamTag::SensingNoise, 0, 0);

    const int trials = 20000;
    double se = 0.0;
    for (int t = 0; t < trials; ++t) {
        auto noisy = [&](double phase) {
            std::complex<double> s = std::polar(1.0, phase);
            auto n = rng.next_cnormal();
            s += std::complex<double>(n.real(), n.imag()) / std::sqrt(delta);
            return s / std::abs(s);
        };
        std::complex<double> g0 = noisy(0.1);
        std::complex<double> g1 = noisy(0.1 + 2.0 * M_PI * mu * dt);
        double err = estimate_doppler(g0, g1, dt) - mu;
        se += err * err;
    }
    double mcVar = se / trials;
    // Velocity-domain proxy mapped into the frequency domain.
    double bound = crb_variance(lambda, dt, delta) * (2.0 / lambda) * (2.0 / lambda);
    CHECK(mcVar <= 3.0 * bound);
    CHECK(mcVar >= bound / 3.0);
}

TEST_CASE("motion test compares the speed estimate against both floors") {
    double lambda = 0.0107;
    DopplerEstimate est;
    est.sigmaV2 = 1e-4; // sigma_v = 0.01
    est.muHat = 2.0 * 0.5 / lambda; // 0.5 m/s radial speed

    auto d = classify_motion(est, lambda, 0.0, 3.0, true, 4);
    CHECK(d.userId == 4);
    CHECK(d.predicted);
    CHECK(d.truth);

    // z-floor dominates: 3 sigma = 0.03, estimate above it.
    est.muHat = 2.0 * 0.02 / lambda;
    CHECK(!classify_motion(est, lambda, 0.0, 3.0, false).predicted);
    est.muHat = 2.0 * 0.04 / lambda;
    CHECK(classify_motion(est, lambda, 0.0, 3.0, false).predicted);

    // Absolute floor dominates when larger.
    CHECK(!classify_motion(est, lambda, 0.1, 3.0, false).predicted);

    // Boundary is exclusive.
    est.muHat = 2.0 * 0.03 / lambda;
    CHECK(!classify_motion(est, lambda, 0.0, 3.0, false).predicted);
}

TEST_CASE("monostatic return strength follows the fourth-power range law") {
    double v = radar_sinr(1.0, 1.0, 0.0107, 1.0, 100.0, 150.0, 1e-13);
    CHECK(v == doctest::Approx(0.1139658).epsilon(1e-6));

    // Doubling the range costs 12.04 dB.
    double far = radar_sinr(1.0, 1.0, 0.0107, 1.0, 100.0, 300.0, 1e-13);
    CHECK(10.0 * std::log10(v / far) == doctest::Approx(12.0412).epsilon(1e-4));
}

TEST_CASE("pair selection prefers perpendicular sight lines") {
    auto mk = [](int id, double x, double y) {
        NodeState n;
        n.id = id;
        n.kind = NodeKind::UavBs;
        n.position = {x, y, 120.0};
        return n;
    };
    UserState usr;
    usr.position = {0.0, 0.0, 0.0};

    std::vector<NodeState> uavs = {mk(0, 100.0, 0.0), mk(1, 90.0, 5.0), mk(2, 0.0, 80.0)};
    auto pair = select_uav_pair(uavs, usr);
    REQUIRE(pair.has_value());
    CHECK(pair->first == 0);
    CHECK(pair->second == 2);

    CHECK(!select_uav_pair({mk(0, 100.0, 0.0)}, usr).has_value());
}

TEST_CASE("two-view velocity solve inverts the projection pair") {
    Eigen::Vector2d r1(1.0, 0.0);
    Eigen::Vector2d r2(0.0, 1.0);
    VelocitySolve sol = solve_velocity(r1, r2, 1.0, 2.0);
    CHECK(sol.v.x() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sol.v.y() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(sol.speed == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));

    Eigen::Vector2d nearlyParallel(1.0, 0.01);
    CHECK_THROWS_AS(solve_velocity(r1, nearlyParallel.normalized(), 1.0, 1.0, 0.05),
                    NumericalError);

    CHECK(range_rate(100.5, 100.0, 0.1) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("anchored range reconstruction applies the approach sign convention") {
    double lambda = 0.2;
    double dt = 0.5;
    // Constant positive reference shift: the target closes in.
    std::vector<double> mu(4, 10.0);
    auto d = integrate_distance(100.0, mu, lambda, dt);
    REQUIRE(d.size() == 5);
    CHECK(d[0] == doctest::Approx(100.0));
    // Each step subtracts (lambda/2) * mu * dt = 0.5 m.
    CHECK(d[4] == doctest::Approx(98.0).epsilon(1e-12));

    CHECK_THROWS_AS(integrate_distance(0.0, mu, lambda, dt), ConfigError);
    CHECK_THROWS_AS(integrate_distance(100.0, {}, lambda, dt), ConfigError);
}
