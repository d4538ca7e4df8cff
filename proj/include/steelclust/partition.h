#pragma once

#include <cstdint>

#include "steelclust/clustering.h"
#include "steelclust/dataset.h"
#include "steelclust/distance.h"
#include "steelclust/mixture.h"

namespace steelclust {

struct PartitionModel {
    size_t k = 0;
    // Per-cluster prototypes recomputed from the final assignment: numeric
    // slots hold means, nominal slots hold modes (ties by domain order).
    std::vector<Instance> centroids;
    Ranges ranges;
    size_t iterationsRun = 0;
    double wcss = 0.0;
    // WCSS measured at each assignment pass against that pass's centers.
    std::vector<double> wcssHistory;
    // Rows chosen as traversal centers (farthest-first only).
    std::vector<size_t> centerRows;
};

struct PartitionResult {
    PartitionModel model;
    ClusterAssignment assignment;
};

// Lloyd iterations from k distinct seeded-random rows; stops when an
// assignment pass changes nothing or maxIter is hit. Empty clusters are
// re-seeded with the instance farthest from its own centroid. The class
// attribute never enters the distance.
PartitionResult kmeans(const Dataset& d, size_t k, uint64_t seed, size_t maxIter = 100);

// Same loop from caller-chosen initial centers.
PartitionResult kmeansFromCentroids(const Dataset& d, std::vector<Instance> initial,
                                    size_t maxIter = 100);

// Farthest-first traversal: seeded random first center, then each next
// center maximizes the distance to its nearest chosen center (ties to the
// lowest row). One assignment pass, no iteration.
PartitionResult farthestFirst(const Dataset& d, size_t k, uint64_t seed);

// Same traversal with a fixed first center row.
PartitionResult farthestFirstFrom(const Dataset& d, size_t k, size_t firstCenterRow);

// Wraps a hard partition in per-cluster densities (cluster priors, normal
// fits with floored stds, add-one-smoothed discrete distributions).
struct DensityModel {
    PartitionModel base;
    MixtureParams params;
};

DensityModel densityWrap(const PartitionModel& base, const ClusterAssignment& assignment,
                         const Dataset& d);

// Mean/mode prototype of the rows with the given label.
Instance centroidOf(const Dataset& d, const ClusterAssignment& assignment, int label);

} // namespace steelclust
