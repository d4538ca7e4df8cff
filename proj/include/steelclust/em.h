#pragma once

#include <cstdint>

#include "steelclust/clustering.h"
#include "steelclust/dataset.h"
#include "steelclust/mixture.h"

namespace steelclust {

struct MixtureModel {
    size_t k = 0;
    MixtureParams params;
    double avgLogLikelihood = 0.0;
    size_t iterationsRun = 0;
    // Average per-instance log-likelihood after each maximization step.
    std::vector<double> llHistory;
};

struct EmResult {
    MixtureModel model;
    ClusterAssignment assignment;
};

// (1/n) * sum log(sum_c prior_c * density_c(x)).
double averageLogLikelihood(const MixtureParams& params, const Dataset& d);

// Expectation-maximization over independent per-attribute densities.
// Initialized from a seeded k-means partition; iterates responsibility
// computation and weighted re-estimation until the average log-likelihood
// improves by less than llTol or maxIter is reached. Hard labels take the
// highest-responsibility component (ties to the lowest index).
EmResult emFit(const Dataset& d, size_t k, uint64_t seed, size_t maxIter = 100,
               double llTol = 1e-6);

// Grows k while the folds-fold cross-validated held-out log-likelihood
// strictly improves, then refits the chosen k on the full data.
EmResult emSelectK(const Dataset& d, uint64_t seed, size_t folds = 10, size_t kMax = 10);

} // namespace steelclust
