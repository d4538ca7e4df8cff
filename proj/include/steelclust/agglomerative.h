#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "steelclust/clustering.h"
#include "steelclust/dataset.h"

namespace steelclust {

enum class Linkage { Single, Complete, Average };

Linkage parseLinkage(const std::string& name);
std::string linkageName(Linkage linkage);

// Binary merge tree over instance indices. Leaves are rows 0..leaves-1; the
// i-th merge creates node id leaves + i. Heights are linkage distances under
// the normalized mixed-type metric.
struct Dendrogram {
    struct Merge {
        size_t left = 0;   // smaller node id
        size_t right = 0;  // larger node id
        double height = 0.0;
    };

    size_t leaves = 0;
    std::vector<Merge> merges;
};

struct AgglomerativeResult {
    Dendrogram dendrogram;
    ClusterAssignment assignment;
};

// Flat clustering after applying the first leaves - k merges. Clusters are
// numbered by their smallest member row.
ClusterAssignment cutDendrogram(const Dendrogram& dendrogram, size_t k);

// Bottom-up clustering: start from singleton clusters, repeatedly merge the
// closest pair (ties -> lexicographically smallest node-id pair, Lance-
// Williams distance updates), then cut at targetK.
AgglomerativeResult agglomerative(const Dataset& d, Linkage linkage, size_t targetK);

} // namespace steelclust
