#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "ntnsim/engine.hpp"

using namespace ntnsim;

namespace {

SimConfig small_config() {
    SimConfig cfg = default_config();
    cfg.scenario.areaSide = 800.0;
    cfg.scenario.hotspotUsers = 12;
    cfg.scenario.victimUsers = 6;
    cfg.scenario.mobileUsers = 20;
    cfg.scenario.hotspotCenters = {{200.0, 200.0}, {600.0, 200.0}, {400.0, 600.0}};
    cfg.scenario.victimSites = {{300.0, 500.0}, {500.0, 300.0}};
    cfg.scenario.uavCount = 5;
    cfg.scenario.terrestrialCount = 9;
    cfg.scenario.slotCount = 10;
    cfg.scenario.seed = 321;
    cfg.validate();
    return cfg;
}

double to_db(double linear) {
    return 10.0 * std::log10(std::max(linear, 1e-30));
}

} // namespace

TEST_CASE("zero slots produce empty logs without error") {
    SimConfig cfg = small_config();
    cfg.scenario.slotCount = 0;
    RunSummary s = run(cfg, ScenarioKind::Ntn);
    CHECK(s.links.empty());
    CHECK(s.sensing.empty());
    CHECK(s.tracking.empty());
    CHECK(s.objectivePerSlot.empty());
    CHECK(std::isnan(s.medianAllDb));
    CHECK(std::isnan(s.speedRmse));
    CHECK(s.cm.total() == 0);
}

TEST_CASE("identical seeds reproduce the run exactly") {
    SimConfig cfg = small_config();
    RunSummary a = run(cfg, ScenarioKind::Ntn);
    RunSummary b = run(cfg, ScenarioKind::Ntn);

    REQUIRE(a.links.size() == b.links.size());
    for (size_t i = 0; i < a.links.size(); ++i) {
        CHECK(a.links[i].userId == b.links[i].userId);
        CHECK(a.links[i].sinr == b.links[i].sinr);
        CHECK(a.links[i].rateBps == b.links[i].rateBps);
    }
    REQUIRE(a.sensing.size() == b.sensing.size());
    for (size_t i = 0; i < a.sensing.size(); ++i) {
        CHECK(a.sensing[i].muHat == b.sensing[i].muHat);
    }
    CHECK(a.medianAllDb == b.medianAllDb);
    CHECK(a.cm.tp == b.cm.tp);

    cfg.scenario.seed = 322;
    RunSummary c = run(cfg, ScenarioKind::Ntn);
    CHECK(a.medianAllDb != c.medianAllDb);
}

TEST_CASE("each user is reported at most once per slot") {
    SimConfig cfg = small_config();
    RunSummary s = run(cfg, ScenarioKind::Ntn, true);
    REQUIRE(!s.links.empty());

    std::set<std::pair<int, int>> seen;
    for (const LinkReport& r : s.links) {
        CHECK(seen.insert({r.slot, r.userId}).second);
        CHECK(r.slot >= 0);
        CHECK(r.slot < cfg.scenario.slotCount);
        CHECK(r.miniSlot >= 0);
        CHECK(r.miniSlot < cfg.scenario.miniSlotsPerSlot);
        if (r.servingKind == NodeKind::UavBs) {
            CHECK(r.servingNode >= 0);
            CHECK(r.servingNode < cfg.scenario.uavCount);
            CHECK(r.bandwidthHz == doctest::Approx(cfg.radio.bandwidthUavHz));
        } else {
            CHECK(r.servingKind == NodeKind::Hibs);
            CHECK(r.miniSlot == 0);
        }
    }

    CHECK(s.audit.enabled);
    CHECK(s.audit.c1 == 0);
    CHECK(s.audit.c2 == 0);
    CHECK(s.audit.c3 == 0);
}

TEST_CASE("class medians agree with a direct recomputation from the links") {
    SimConfig cfg = small_config();
    RunSummary s = run(cfg, ScenarioKind::Ntn);

    std::map<UserClass, std::vector<double>> byClass;
    std::vector<double> all;
    for (const LinkReport& r : s.links) {
        all.push_back(to_db(r.sinr));
        byClass[r.cls].push_back(to_db(r.sinr));
    }
    CHECK(s.medianAllDb == doctest::Approx(empirical_cdf(all).median()).epsilon(1e-12));
    CHECK(s.medianHotspotDb ==
          doctest::Approx(empirical_cdf(byClass[UserClass::Hotspot]).median()).epsilon(1e-12));
    CHECK(s.medianMobileDb ==
          doctest::Approx(empirical_cdf(byClass[UserClass::Mobile]).median()).epsilon(1e-12));
}

TEST_CASE("objective collapses to the weighted rate sum when sensing weight is zero") {
    SimConfig cfg = small_config();
    cfg.objective.etaC = 0.5;
    cfg.objective.etaS = 0.0;
    RunSummary s = run(cfg, ScenarioKind::Ntn);
    REQUIRE(static_cast<int>(s.objectivePerSlot.size()) == cfg.scenario.slotCount);

    std::vector<double> rates(cfg.scenario.slotCount, 0.0);
    for (const LinkReport& r : s.links) {
        rates[r.slot] += r.rateBps;
    }
    for (int t = 0; t < cfg.scenario.slotCount; ++t) {
        CHECK(s.objectivePerSlot[t] ==
              doctest::Approx(0.5 * rates[t]).epsilon(1e-12));
    }
}

TEST_CASE("sensing records pair with decisions and stay within range limits") {
    SimConfig cfg = small_config();
    RunSummary s = run(cfg, ScenarioKind::Ntn);
    REQUIRE(!s.sensing.empty());
    CHECK(static_cast<long long>(s.sensing.size()) == s.cm.total());

    double nyquist = 1.0 / (2.0 * cfg.scenario.slotDuration);
    for (const SensingRecord& r : s.sensing) {
        CHECK(std::abs(r.muHat) <= nyquist + 1e-9);
        CHECK(r.sigmaV2 > 0.0);
        CHECK(r.confidence > 0.0);
        CHECK(r.slot >= 1);
    }
}

TEST_CASE("terrestrial benchmark serves from the surviving grid only") {
    SimConfig cfg = small_config();
    cfg.scenario.gamma = 0.5;
    RunSummary s = run(cfg, ScenarioKind::Tn);
    CHECK(s.kind == ScenarioKind::Tn);
    CHECK(s.gamma == doctest::Approx(0.5));
    CHECK(s.sensing.empty());
    CHECK(s.tracking.empty());
    CHECK(s.cm.total() == 0);
    CHECK(std::isnan(s.speedRmse));
    REQUIRE(!s.links.empty());

    // floor(9 * 0.5 + 0.5) = 5 towers removed, 4 left.
    std::set<int> serving;
    for (const LinkReport& r : s.links) {
        CHECK(r.servingKind == NodeKind::TerrestrialBs);
        if (r.servingNode >= 0) {
            serving.insert(r.servingNode);
            CHECK(r.servingNode < cfg.scenario.terrestrialCount);
        }
    }
    CHECK(serving.size() <= 4);

    // One report per user per slot.
    CHECK(s.links.size() ==
          static_cast<size_t>(cfg.scenario.totalUsers() * cfg.scenario.slotCount));
}

TEST_CASE("gamma sweep produces the aerial run first and echoes gammas") {
    SimConfig cfg = small_config();
    cfg.scenario.slotCount = 5;
    auto runs = sweep_gamma(cfg, {0.0, 0.8});
    REQUIRE(runs.size() == 3);
    CHECK(runs[0].kind == ScenarioKind::Ntn);
    CHECK(runs[1].kind == ScenarioKind::Tn);
    CHECK(runs[1].gamma == doctest::Approx(0.0));
    CHECK(runs[2].kind == ScenarioKind::Tn);
    CHECK(runs[2].gamma == doctest::Approx(0.8));

    // The terrestrial gamma is the only knob that moves between the runs.
    SimConfig direct = cfg;
    direct.scenario.gamma = 0.8;
    RunSummary d = run(direct, ScenarioKind::Tn);
    CHECK(d.medianAllDb == doctest::Approx(runs[2].medianAllDb).epsilon(1e-12));
}
