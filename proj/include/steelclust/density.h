#pragma once

#include <optional>

#include "steelclust/clustering.h"
#include "steelclust/dataset.h"

namespace steelclust {

// Density-based clustering over the normalized mixed-type metric. The
// eps-neighborhood of a point includes the point itself, so min_points
// counts it too.

ClusterAssignment dbscan(const Dataset& d, double eps, size_t minPoints);

struct OpticsOrdering {
    // Processing order: order[i] is the row handled at position i.
    std::vector<size_t> order;
    // Position-aligned annotations; nullopt stands for UNDEFINED.
    std::vector<std::optional<double>> reachability;
    std::vector<std::optional<double>> coreDistance;
    double eps = 0.0;
    size_t minPoints = 0;
};

OpticsOrdering optics(const Dataset& d, double eps, size_t minPoints);

// Scans the ordering at a tighter radius, reproducing the DBSCAN clustering
// at epsPrime (which must not exceed the ordering's build eps).
ClusterAssignment opticsExtract(const OpticsOrdering& ordering, double epsPrime);

// Two-column reachability-plot data: position and reachability per line,
// tab separated, UNDEFINED spelled out.
std::string reachabilityPlotData(const OpticsOrdering& ordering);

} // namespace steelclust
