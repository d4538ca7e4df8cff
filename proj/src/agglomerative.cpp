#include "steelclust/agglomerative.h"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include "steelclust/distance.h"
#include "steelclust/error.h"

namespace steelclust {

namespace {

double linkageUpdate(Linkage linkage, double dToA, double dToB, double sizeA, double sizeB) {
    switch (linkage) {
    case Linkage::Single:
        return std::min(dToA, dToB);
    case Linkage::Complete:
        return std::max(dToA, dToB);
    case Linkage::Average:
        return (sizeA * dToA + sizeB * dToB) / (sizeA + sizeB);
    }
    throw Error("unknown linkage");
}

} // namespace

Linkage parseLinkage(const std::string& name) {
    if (name == "single") return Linkage::Single;
    if (name == "complete") return Linkage::Complete;
    if (name == "average") return Linkage::Average;
    throw Error("unknown linkage '" + name + "' (expected single, complete, or average)");
}

std::string linkageName(Linkage linkage) {
    switch (linkage) {
    case Linkage::Single:
        return "single";
    case Linkage::Complete:
        return "complete";
    case Linkage::Average:
        return "average";
    }
    return "?";
}

ClusterAssignment cutDendrogram(const Dendrogram& dendrogram, size_t k) {
    const size_t n = dendrogram.leaves;
    if (k < 1 || k > n) throw Error("cut size must lie in [1, n]");
    if (n - k > dendrogram.merges.size()) {
        throw Error("dendrogram has too few merges for the requested cut");
    }

    // Union-find over node ids; applying a merge links both sides under the
    // merge's own node id.
    std::vector<size_t> parent(n + dendrogram.merges.size());
    std::iota(parent.begin(), parent.end(), size_t{0});
    auto find = [&](size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (size_t i = 0; i < n - k; ++i) {
        const auto& merge = dendrogram.merges[i];
        const size_t target = n + i;
        parent[find(merge.left)] = target;
        parent[find(merge.right)] = target;
    }

    // Scanning rows in order numbers clusters by their smallest member.
    ClusterAssignment out;
    out.labels.assign(n, 0);
    std::map<size_t, int> labelOf;
    int next = 0;
    for (size_t row = 0; row < n; ++row) {
        auto [it, inserted] = labelOf.try_emplace(find(row), next);
        if (inserted) ++next;
        out.labels[row] = it->second;
    }
    return out;
}

AgglomerativeResult agglomerative(const Dataset& d, Linkage linkage, size_t targetK) {
    const size_t n = d.n();
    if (targetK < 1 || targetK > n) throw Error("target cluster count must lie in [1, n]");

    const DistanceMetric metric = DistanceMetric::forDataset(d);
    std::vector<double> dist(n * n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            const double dij = metric(d.rows[i], d.rows[j]);
            dist[i * n + j] = dij;
            dist[j * n + i] = dij;
        }
    }

    std::vector<bool> alive(n, true);
    std::vector<size_t> nodeId(n);
    std::iota(nodeId.begin(), nodeId.end(), size_t{0});
    std::vector<double> clusterSize(n, 1.0);

    AgglomerativeResult result;
    result.dendrogram.leaves = n;
    if (n > 0) result.dendrogram.merges.reserve(n - 1);

    for (size_t step = 0; step + 1 < n; ++step) {
        size_t bestA = 0;
        size_t bestB = 0;
        double bestD = 0.0;
        size_t bestLo = 0;
        size_t bestHi = 0;
        bool found = false;
        for (size_t a = 0; a < n; ++a) {
            if (!alive[a]) continue;
            for (size_t b = a + 1; b < n; ++b) {
                if (!alive[b]) continue;
                const double dab = dist[a * n + b];
                const size_t lo = std::min(nodeId[a], nodeId[b]);
                const size_t hi = std::max(nodeId[a], nodeId[b]);
                const bool better =
                    !found || dab < bestD ||
                    (dab == bestD && (lo < bestLo || (lo == bestLo && hi < bestHi)));
                if (better) {
                    found = true;
                    bestA = a;
                    bestB = b;
                    bestD = dab;
                    bestLo = lo;
                    bestHi = hi;
                }
            }
        }

        result.dendrogram.merges.push_back({bestLo, bestHi, bestD});
        const double sizeA = clusterSize[bestA];
        const double sizeB = clusterSize[bestB];
        for (size_t j = 0; j < n; ++j) {
            if (!alive[j] || j == bestA || j == bestB) continue;
            const double updated = linkageUpdate(linkage, dist[bestA * n + j],
                                                 dist[bestB * n + j], sizeA, sizeB);
            dist[bestA * n + j] = updated;
            dist[j * n + bestA] = updated;
        }
        alive[bestB] = false;
        clusterSize[bestA] += sizeB;
        nodeId[bestA] = n + step;
    }

    result.assignment = cutDendrogram(result.dendrogram, targetK);
    return result;
}

} // namespace steelclust
