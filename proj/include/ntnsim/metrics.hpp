#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ntnsim/sensing.hpp"

namespace ntnsim {

struct CdfSeries {
    std::vector<double> values; // sorted ascending
    std::vector<double> probs;  // 1/n .. 1

    // Linear interpolation between order statistics.
    double quantile(double p) const;
    double median() const { return quantile(0.5); }
};

CdfSeries empirical_cdf(std::vector<double> values);

struct ConfusionMatrix {
    long long tp = 0;
    long long fn = 0;
    long long fp = 0;
    long long tn = 0;

    long long total() const { return tp + fn + fp + tn; }
};

ConfusionMatrix confusion(const std::vector<MotionDecision>& decisions);

// Any 0/0 score stays unset rather than collapsing to 0 or 1.
struct ClassificationScores {
    std::optional<double> accuracy;
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f1;
};

ClassificationScores scores(const ConfusionMatrix& cm);

struct SeriesError {
    std::vector<double> residuals; // est - truth per slot
    double rmse = 0.0;
};

SeriesError tracking_error(const std::vector<double>& est, const std::vector<double>& truth);

} // namespace ntnsim
