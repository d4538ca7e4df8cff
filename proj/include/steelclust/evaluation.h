#pragma once

#include <optional>
#include <string>
#include <vector>

#include "steelclust/clustering.h"
#include "steelclust/dataset.h"

namespace steelclust {

// Sum over clustered instances (labels >= 0) of squared normalized distance
// to their cluster's centroid; centroids are recomputed from the assignment
// and distances normalize by the supplied ranges.
double wcss(const ClusterAssignment& assignment, const Dataset& d, const Ranges& ranges);

// Table-oriented cluster description: one column for the full data, one per
// cluster, then NOISE/UNDEFINED pseudo-columns when such labels occur.
// Numeric cells carry mean and population std; nominal cells carry the mode
// (ties by domain order). Percentages are exact (count / n * 100).
struct ClusterSummary {
    struct Cell {
        bool numeric = false;
        double mean = 0.0;
        double std = 0.0;
        std::string mode;
    };
    struct Column {
        std::string title;
        std::optional<int> label;  // empty for the full-data column
        size_t count = 0;
        double percentage = 0.0;
        std::vector<Cell> cells;  // schema order
    };

    std::vector<std::string> attributeNames;
    std::vector<Column> columns;
};

ClusterSummary clusterSummary(const ClusterAssignment& assignment, const Dataset& d);

// Majority-class evaluation of a clustering against a nominal attribute.
// NOISE/UNDEFINED instances are excluded from the table and from every
// denominator but reported in noiseCount.
struct ClassesToClustersReport {
    std::vector<std::string> classNames;          // class domain order
    std::vector<std::vector<size_t>> table;       // [cluster][class] counts
    std::vector<int> majorityClass;               // per cluster (ties by domain order)
    size_t labeledCount = 0;                      // clustered instances
    size_t noiseCount = 0;                        // excluded instances
    size_t correct = 0;
    size_t incorrect = 0;
    double accuracyPct = 0.0;
    double incorrectPct = 0.0;
};

ClassesToClustersReport classesToClusters(const ClusterAssignment& assignment, const Dataset& d,
                                          int classAttr);

} // namespace steelclust
