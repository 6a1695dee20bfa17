#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ntnsim/access.hpp"
#include "ntnsim/config.hpp"
#include "ntnsim/metrics.hpp"
#include "ntnsim/sensing.hpp"

namespace ntnsim {

enum class ScenarioKind { Ntn, Tn };

const char* scenario_kind_name(ScenarioKind k);

struct SensingRecord {
    int userId = -1;
    int slot = 0;
    double muHat = 0.0;
    double sigmaV2 = 0.0;
    double confidence = 0.0;
    bool predicted = false;
    bool truth = false;
};

struct TrackPoint {
    int slot = 0;
    double trueSpeed = 0.0;
    double estSpeed = 0.0;
    double trueDist = 0.0;
    double estDist = 0.0;
};

struct AuditCounters {
    bool enabled = false;
    long long c1 = 0; // power-budget violations
    long long c2 = 0; // association / served-once violations
    long long c3 = 0; // semi-orthogonality violations
};

struct RunSummary {
    ScenarioKind kind = ScenarioKind::Ntn;
    double gamma = 0.0;
    std::uint64_t seed = 0;

    std::vector<LinkReport> links;
    std::vector<SensingRecord> sensing;
    std::vector<TrackPoint> tracking; // showcase user trace
    int trackedUserId = -1;

    std::vector<double> objectivePerSlot;
    ConfusionMatrix cm;
    ClassificationScores sc;

    // NaN when the corresponding sample set is empty.
    double medianAllDb = 0.0;
    double medianHotspotDb = 0.0;
    double medianVictimDb = 0.0;
    double medianMobileDb = 0.0;

    double speedRmse = 0.0;    // pooled over all tracked mobile users
    double distanceRmse = 0.0; // pooled over all tracked mobile users

    AuditCounters audit;
    double wallClockSec = 0.0;
};

// Full slot-loop simulation. In audit mode the run aborts on the first
// constraint violation; counters are maintained either way.
RunSummary run(const SimConfig& cfg, ScenarioKind kind, bool audit = false);

// One terrestrial run per gamma plus one aerial run (first element).
std::vector<RunSummary> sweep_gamma(const SimConfig& cfg, const std::vector<double>& gammas,
                                    bool audit = false);

} // namespace ntnsim
