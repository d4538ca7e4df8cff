#include "steelclust/baseline.h"

#include <cmath>

#include "steelclust/error.h"
#include "steelclust/rng.h"
#include "steelclust/sampling.h"

namespace steelclust {

namespace {

double mean(const std::vector<double>& xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

} // namespace

ZeroRModel zeroRFit(const Dataset& d, int target) {
    if (d.rows.empty()) throw Error("cannot fit on an empty dataset");
    if (target < 0 || target >= static_cast<int>(d.schema.size())) {
        throw Error("target attribute out of range");
    }
    const auto t = static_cast<size_t>(target);
    ZeroRModel model;
    model.targetKind = d.schema[t].kind;
    if (model.targetKind == AttributeKind::Numeric) {
        double sum = 0.0;
        for (size_t r = 0; r < d.n(); ++r) sum += d.numAt(r, t);
        model.numericPrediction = sum / static_cast<double>(d.n());
    } else {
        std::vector<size_t> counts(d.schema[t].domain.size(), 0);
        for (size_t r = 0; r < d.n(); ++r) {
            counts[static_cast<size_t>(d.rows[r][t].sym())]++;
        }
        size_t best = 0;
        for (size_t i = 1; i < counts.size(); ++i) {
            if (counts[i] > counts[best]) best = i;
        }
        model.nominalPrediction = static_cast<int>(best);
    }
    return model;
}

MetricsReport regressionMetrics(const std::vector<double>& predicted,
                                const std::vector<double>& actual) {
    if (predicted.size() != actual.size()) {
        throw Error("predicted and actual lengths differ");
    }
    if (actual.empty()) throw Error("metrics need at least one instance");

    const auto n = static_cast<double>(actual.size());
    const double actualMean = mean(actual);
    const double predictedMean = mean(predicted);

    double absSum = 0.0, sqSum = 0.0;
    double baseAbsSum = 0.0, baseSqSum = 0.0;
    double cov = 0.0, varP = 0.0, varA = 0.0;
    for (size_t i = 0; i < actual.size(); ++i) {
        const double err = predicted[i] - actual[i];
        absSum += std::abs(err);
        sqSum += err * err;
        const double baseErr = actualMean - actual[i];
        baseAbsSum += std::abs(baseErr);
        baseSqSum += baseErr * baseErr;
        const double dp = predicted[i] - predictedMean;
        const double da = actual[i] - actualMean;
        cov += dp * da;
        varP += dp * dp;
        varA += da * da;
    }

    MetricsReport report;
    report.nInstances = actual.size();
    report.meanAbsoluteError = absSum / n;
    report.rootMeanSquaredError = std::sqrt(sqSum / n);
    if (baseAbsSum == 0.0) {
        report.degenerateBaseline = true;
        report.relativeAbsoluteErrorPct = 100.0;
        report.rootRelativeSquaredErrorPct = 100.0;
    } else {
        // Ratio first: identical error masses then give exactly 100%.
        report.relativeAbsoluteErrorPct = 100.0 * (absSum / baseAbsSum);
        report.rootRelativeSquaredErrorPct = 100.0 * std::sqrt(sqSum / baseSqSum);
    }
    if (varP > 0.0 && varA > 0.0) {
        report.correlationCoefficient = cov / std::sqrt(varP * varA);
    }
    return report;
}

MetricsReport crossValidateZeroR(const Dataset& d, int target, size_t folds, uint64_t seed) {
    if (target < 0 || target >= static_cast<int>(d.schema.size())) {
        throw Error("target attribute out of range");
    }
    const auto t = static_cast<size_t>(target);
    if (d.schema[t].kind != AttributeKind::Numeric) {
        throw Error("cross-validated metrics need a numeric target");
    }
    Rng rng = Rng::stream(seed, "cv-folds");
    const auto foldRows = foldAssignments(d.n(), folds, rng);

    double total = 0.0;
    for (size_t r = 0; r < d.n(); ++r) total += d.numAt(r, t);

    std::vector<double> predicted, actual;
    predicted.reserve(d.n());
    actual.reserve(d.n());
    for (const auto& fold : foldRows) {
        double heldOut = 0.0;
        for (size_t r : fold) heldOut += d.numAt(r, t);
        const auto trainCount = static_cast<double>(d.n() - fold.size());
        const double trainMean = (total - heldOut) / trainCount;
        for (size_t r : fold) {
            predicted.push_back(trainMean);
            actual.push_back(d.numAt(r, t));
        }
    }
    return regressionMetrics(predicted, actual);
}

} // namespace steelclust
