#include "steelclust/em.h"

#include <algorithm>
#include <limits>

#include "steelclust/error.h"
#include "steelclust/partition.h"
#include "steelclust/rng.h"
#include "steelclust/sampling.h"

namespace steelclust {

namespace {

std::vector<std::vector<double>> initialWeights(const Dataset& d, size_t k, uint64_t seed) {
    const PartitionResult start = kmeans(d, k, seed);
    auto weights = hardWeights(start.assignment, k);
    // A cluster k-means left empty would give the component zero mass;
    // spread it uniformly instead and let the iterations shape it.
    for (auto& row : weights) {
        double mass = 0.0;
        for (double w : row) mass += w;
        if (mass == 0.0) row.assign(d.n(), 1.0 / static_cast<double>(d.n()));
    }
    return weights;
}

} // namespace

double averageLogLikelihood(const MixtureParams& params, const Dataset& d) {
    if (d.rows.empty()) throw Error("log-likelihood of an empty dataset");
    double sum = 0.0;
    for (const Instance& row : d.rows) sum += params.logLikelihoodRow(row);
    return sum / static_cast<double>(d.n());
}

EmResult emFit(const Dataset& d, size_t k, uint64_t seed, size_t maxIter, double llTol) {
    if (k < 1 || k > d.n()) throw Error("component count must lie in [1, n]");
    if (maxIter < 1) throw Error("max iterations must be at least 1");
    if (!(llTol > 0.0)) throw Error("log-likelihood tolerance must be positive");

    EmResult result;
    result.model.k = k;
    result.model.params = MixtureParams::layoutFor(d);
    result.model.params.estimate(d, initialWeights(d, k, seed));

    double previous = averageLogLikelihood(result.model.params, d);
    for (size_t iter = 1; iter <= maxIter; ++iter) {
        std::vector<std::vector<double>> responsibilities(
            k, std::vector<double>(d.n(), 0.0));
        for (size_t r = 0; r < d.n(); ++r) {
            const auto post = result.model.params.membership(d.rows[r]);
            for (size_t c = 0; c < k; ++c) responsibilities[c][r] = post[c];
        }
        result.model.params.estimate(d, responsibilities);
        const double current = averageLogLikelihood(result.model.params, d);
        result.model.llHistory.push_back(current);
        result.model.iterationsRun = iter;
        if (current - previous < llTol) {
            previous = current;
            break;
        }
        previous = current;
    }
    result.model.avgLogLikelihood = previous;

    result.assignment.labels.resize(d.n());
    for (size_t r = 0; r < d.n(); ++r) {
        const auto post = result.model.params.membership(d.rows[r]);
        size_t best = 0;
        for (size_t c = 1; c < k; ++c) {
            if (post[c] > post[best]) best = c;
        }
        result.assignment.labels[r] = static_cast<int>(best);
    }
    return result;
}

EmResult emSelectK(const Dataset& d, uint64_t seed, size_t folds, size_t kMax) {
    if (kMax < 1) throw Error("k_max must be at least 1");
    Rng rng = Rng::stream(seed, "em-cv");
    const auto foldRows = foldAssignments(d.n(), folds, rng);

    std::vector<std::vector<size_t>> trainRows(folds);
    size_t minTrain = d.n();
    for (size_t f = 0; f < folds; ++f) {
        for (size_t g = 0; g < folds; ++g) {
            if (g == f) continue;
            trainRows[f].insert(trainRows[f].end(), foldRows[g].begin(), foldRows[g].end());
        }
        minTrain = std::min(minTrain, trainRows[f].size());
    }
    kMax = std::min(kMax, minTrain);

    size_t chosen = 1;
    double bestCv = -std::numeric_limits<double>::infinity();
    for (size_t k = 1; k <= kMax; ++k) {
        double heldOutSum = 0.0;
        for (size_t f = 0; f < folds; ++f) {
            const Dataset train = selectRows(d, trainRows[f]);
            const EmResult fit = emFit(train, k, seed);
            for (size_t r : foldRows[f]) {
                heldOutSum += fit.model.params.logLikelihoodRow(d.rows[r]);
            }
        }
        const double cv = heldOutSum / static_cast<double>(d.n());
        if (cv > bestCv) {
            bestCv = cv;
            chosen = k;
        } else {
            break;
        }
    }
    return emFit(d, chosen, seed);
}

} // namespace steelclust
