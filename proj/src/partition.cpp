#include "steelclust/partition.h"

#include <algorithm>
#include <numeric>

#include "steelclust/error.h"
#include "steelclust/rng.h"

namespace steelclust {

namespace {

ClusterAssignment assignToNearest(const Dataset& d, const std::vector<Instance>& centers,
                                  const DistanceMetric& metric) {
    ClusterAssignment assignment;
    assignment.labels.resize(d.n());
    for (size_t r = 0; r < d.n(); ++r) {
        size_t best = 0;
        double bestDist = metric(d.rows[r], centers[0]);
        for (size_t c = 1; c < centers.size(); ++c) {
            const double dist = metric(d.rows[r], centers[c]);
            if (dist < bestDist) {
                bestDist = dist;
                best = c;
            }
        }
        assignment.labels[r] = static_cast<int>(best);
    }
    return assignment;
}

double sumSquaredTo(const Dataset& d, const std::vector<Instance>& centers,
                    const ClusterAssignment& assignment, const DistanceMetric& metric) {
    double sum = 0.0;
    for (size_t r = 0; r < d.n(); ++r) {
        const double dist = metric(d.rows[r], centers[static_cast<size_t>(assignment.labels[r])]);
        sum += dist * dist;
    }
    return sum;
}

// Recomputes mean/mode centroids; clusters without instances keep their
// previous center so repair can overwrite them afterwards.
std::vector<Instance> recomputeCentroids(const Dataset& d, const ClusterAssignment& assignment,
                                         size_t k, const std::vector<Instance>& previous) {
    std::vector<Instance> centroids = previous;
    for (size_t c = 0; c < k; ++c) {
        if (assignment.countOf(static_cast<int>(c)) > 0) {
            centroids[c] = centroidOf(d, assignment, static_cast<int>(c));
        }
    }
    return centroids;
}

void repairEmptyClusters(const Dataset& d, const ClusterAssignment& assignment,
                         std::vector<Instance>& centroids, const DistanceMetric& metric) {
    std::vector<bool> taken(d.n(), false);
    for (size_t c = 0; c < centroids.size(); ++c) {
        if (assignment.countOf(static_cast<int>(c)) > 0) continue;
        size_t farthest = d.n();
        double farthestDist = -1.0;
        for (size_t r = 0; r < d.n(); ++r) {
            if (taken[r]) continue;
            const double dist =
                metric(d.rows[r], centroids[static_cast<size_t>(assignment.labels[r])]);
            if (dist > farthestDist) {
                farthestDist = dist;
                farthest = r;
            }
        }
        if (farthest == d.n()) throw Error("no instance available to re-seed empty cluster");
        taken[farthest] = true;
        centroids[c] = d.rows[farthest];
    }
}

PartitionResult lloydLoop(const Dataset& d, std::vector<Instance> centroids, size_t maxIter) {
    if (maxIter < 1) throw Error("max iterations must be at least 1");
    const DistanceMetric metric = DistanceMetric::forDataset(d);
    const size_t k = centroids.size();

    PartitionResult result;
    result.model.k = k;
    result.model.ranges = metric.ranges();

    ClusterAssignment previous;
    for (size_t iter = 1; iter <= maxIter; ++iter) {
        ClusterAssignment assignment = assignToNearest(d, centroids, metric);
        result.model.wcssHistory.push_back(sumSquaredTo(d, centroids, assignment, metric));
        result.model.iterationsRun = iter;
        const bool converged = iter > 1 && assignment.labels == previous.labels;
        previous = std::move(assignment);
        if (converged) break;
        centroids = recomputeCentroids(d, previous, k, centroids);
        repairEmptyClusters(d, previous, centroids, metric);
    }

    result.assignment = std::move(previous);
    result.model.centroids = recomputeCentroids(d, result.assignment, k, centroids);
    result.model.wcss = sumSquaredTo(d, result.model.centroids, result.assignment, metric);
    return result;
}

} // namespace

Instance centroidOf(const Dataset& d, const ClusterAssignment& assignment, int label) {
    Instance centroid;
    centroid.reserve(d.schema.size());
    size_t count = 0;
    for (int l : assignment.labels) {
        if (l == label) ++count;
    }
    if (count == 0) throw Error("centroid of an empty cluster");
    for (size_t a = 0; a < d.schema.size(); ++a) {
        if (d.schema[a].kind == AttributeKind::Numeric) {
            double sum = 0.0;
            for (size_t r = 0; r < d.n(); ++r) {
                if (assignment.labels[r] == label) sum += d.numAt(r, a);
            }
            centroid.push_back(Value::numeric(sum / static_cast<double>(count)));
        } else {
            std::vector<size_t> counts(d.schema[a].domain.size(), 0);
            for (size_t r = 0; r < d.n(); ++r) {
                if (assignment.labels[r] == label) {
                    counts[static_cast<size_t>(d.rows[r][a].sym())]++;
                }
            }
            size_t mode = 0;
            for (size_t v = 1; v < counts.size(); ++v) {
                if (counts[v] > counts[mode]) mode = v;
            }
            centroid.push_back(Value::symbol(static_cast<int>(mode)));
        }
    }
    return centroid;
}

PartitionResult kmeans(const Dataset& d, size_t k, uint64_t seed, size_t maxIter) {
    if (k < 1 || k > d.n()) throw Error("cluster count must lie in [1, n]");
    Rng rng = Rng::stream(seed, "kmeans-init");
    std::vector<size_t> idx(d.n());
    std::iota(idx.begin(), idx.end(), size_t{0});
    rng.shuffle(idx);
    std::vector<Instance> centroids;
    centroids.reserve(k);
    for (size_t c = 0; c < k; ++c) centroids.push_back(d.rows[idx[c]]);
    return lloydLoop(d, std::move(centroids), maxIter);
}

PartitionResult kmeansFromCentroids(const Dataset& d, std::vector<Instance> initial,
                                    size_t maxIter) {
    if (initial.empty() || initial.size() > d.n()) {
        throw Error("cluster count must lie in [1, n]");
    }
    return lloydLoop(d, std::move(initial), maxIter);
}

namespace {

PartitionResult farthestFirstTraversal(const Dataset& d, size_t k, size_t firstRow) {
    if (k < 1 || k > d.n()) throw Error("cluster count must lie in [1, n]");
    if (firstRow >= d.n()) throw Error("first center row out of range");
    const DistanceMetric metric = DistanceMetric::forDataset(d);

    std::vector<size_t> centerRows{firstRow};
    std::vector<double> nearestDist(d.n());
    for (size_t r = 0; r < d.n(); ++r) nearestDist[r] = metric(d.rows[r], d.rows[firstRow]);

    while (centerRows.size() < k) {
        size_t next = 0;
        for (size_t r = 1; r < d.n(); ++r) {
            if (nearestDist[r] > nearestDist[next]) next = r;
        }
        centerRows.push_back(next);
        for (size_t r = 0; r < d.n(); ++r) {
            nearestDist[r] = std::min(nearestDist[r], metric(d.rows[r], d.rows[next]));
        }
    }

    std::vector<Instance> centers;
    centers.reserve(k);
    for (size_t row : centerRows) centers.push_back(d.rows[row]);

    PartitionResult result;
    result.assignment = assignToNearest(d, centers, metric);
    result.model.k = k;
    result.model.ranges = metric.ranges();
    result.model.iterationsRun = 1;
    result.model.centerRows = std::move(centerRows);
    result.model.centroids = recomputeCentroids(d, result.assignment, k, centers);
    result.model.wcss = sumSquaredTo(d, result.model.centroids, result.assignment, metric);
    result.model.wcssHistory.push_back(result.model.wcss);
    return result;
}

} // namespace

PartitionResult farthestFirst(const Dataset& d, size_t k, uint64_t seed) {
    if (k < 1 || k > d.n()) throw Error("cluster count must lie in [1, n]");
    Rng rng = Rng::stream(seed, "farthest-first");
    return farthestFirstTraversal(d, k, rng.nextBelow(d.n()));
}

PartitionResult farthestFirstFrom(const Dataset& d, size_t k, size_t firstCenterRow) {
    return farthestFirstTraversal(d, k, firstCenterRow);
}

DensityModel densityWrap(const PartitionModel& base, const ClusterAssignment& assignment,
                         const Dataset& d) {
    if (assignment.labels.size() != d.n()) {
        throw Error("assignment length does not match dataset");
    }
    if (assignment.clusterCount() > base.k) {
        throw Error("assignment labels exceed the model's cluster count");
    }
    DensityModel model;
    model.base = base;
    model.params = MixtureParams::layoutFor(d);
    model.params.estimate(d, hardWeights(assignment, base.k));
    return model;
}

} // namespace steelclust
