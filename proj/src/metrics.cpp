#include "ntnsim/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "ntnsim/errors.hpp"

namespace ntnsim {

double CdfSeries::quantile(double p) const {
    if (values.empty()) {
        throw DataError("quantile: empty series");
    }
    p = std::min(1.0, std::max(0.0, p));
    double pos = p * (static_cast<double>(values.size()) - 1.0);
    std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    std::size_t hi = std::min(lo + 1, values.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
}

CdfSeries empirical_cdf(std::vector<double> values) {
    if (values.empty()) {
        throw DataError("empirical_cdf: empty input");
    }
    std::sort(values.begin(), values.end());
    CdfSeries s;
    s.probs.resize(values.size());
    double n = static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        s.probs[i] = static_cast<double>(i + 1) / n;
    }
    s.values = std::move(values);
    return s;
}

ConfusionMatrix confusion(const std::vector<MotionDecision>& decisions) {
    ConfusionMatrix cm;
    for (const MotionDecision& d : decisions) {
        if (d.truth) {
            d.predicted ? ++cm.tp : ++cm.fn;
        } else {
            d.predicted ? ++cm.fp : ++cm.tn;
        }
    }
    return cm;
}

ClassificationScores scores(const ConfusionMatrix& cm) {
    ClassificationScores s;
    long long total = cm.total();
    if (total > 0) {
        s.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(total);
    }
    if (cm.tp + cm.fp > 0) {
        s.precision = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
    }
    if (cm.tp + cm.fn > 0) {
        s.recall = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
    }
    if (s.precision && s.recall && (*s.precision + *s.recall) > 0.0) {
        s.f1 = 2.0 * (*s.precision) * (*s.recall) / (*s.precision + *s.recall);
    }
    return s;
}

SeriesError tracking_error(const std::vector<double>& est, const std::vector<double>& truth) {
    if (est.size() != truth.size() || est.empty()) {
        throw DataError("tracking_error: series length mismatch or empty");
    }
    SeriesError e;
    e.residuals.resize(est.size());
    double sum2 = 0.0;
    for (std::size_t i = 0; i < est.size(); ++i) {
        double r = est[i] - truth[i];
        e.residuals[i] = r;
        sum2 += r * r;
    }
    e.rmse = std::sqrt(sum2 / static_cast<double>(est.size()));
    return e;
}

} // namespace ntnsim
