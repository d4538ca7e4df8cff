#pragma once

#include <cstdint>
#include <vector>

#include "steelclust/dataset.h"

namespace steelclust {

// Predicts the training mean (numeric target) or mode (nominal target,
// ties broken by domain order) for every instance.
struct ZeroRModel {
    AttributeKind targetKind = AttributeKind::Numeric;
    double numericPrediction = 0.0;
    int nominalPrediction = -1;
};

ZeroRModel zeroRFit(const Dataset& d, int target);

struct MetricsReport {
    double correlationCoefficient = 0.0;
    double meanAbsoluteError = 0.0;
    double rootMeanSquaredError = 0.0;
    double relativeAbsoluteErrorPct = 0.0;
    double rootRelativeSquaredErrorPct = 0.0;
    size_t nInstances = 0;
    // The mean predictor had zero error on this target, so the relative
    // errors are reported as 100 by convention instead of dividing by zero.
    bool degenerateBaseline = false;
};

// Pearson correlation is defined as 0 when either side has zero variance.
// Relative errors are percentages of the predict-the-mean baseline.
MetricsReport regressionMetrics(const std::vector<double>& predicted,
                                const std::vector<double>& actual);

// k-fold cross-validation of ZeroR on a numeric target: each fold is
// predicted by the mean of the remaining folds, and the metrics pool every
// held-out prediction (baselines taken over the pooled actuals).
MetricsReport crossValidateZeroR(const Dataset& d, int target, size_t folds, uint64_t seed);

} // namespace steelclust
