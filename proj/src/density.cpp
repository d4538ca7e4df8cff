#include "steelclust/density.h"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "steelclust/csv.h"
#include "steelclust/distance.h"
#include "steelclust/error.h"

namespace steelclust {

namespace {

constexpr int kUnvisited = -3;

std::vector<size_t> neighborsWithin(const Dataset& d, const DistanceMetric& metric, size_t p,
                                    double eps) {
    std::vector<size_t> out;
    for (size_t r = 0; r < d.n(); ++r) {
        if (metric(d.rows[p], d.rows[r]) <= eps) out.push_back(r);
    }
    return out;
}

} // namespace

ClusterAssignment dbscan(const Dataset& d, double eps, size_t minPoints) {
    if (!(eps > 0.0)) throw Error("eps must be positive");
    if (minPoints < 1) throw Error("min_points must be at least 1");
    const DistanceMetric metric = DistanceMetric::forDataset(d);

    ClusterAssignment assignment;
    assignment.labels.assign(d.n(), kUnvisited);
    int clusterId = 0;
    for (size_t p = 0; p < d.n(); ++p) {
        if (assignment.labels[p] != kUnvisited) continue;
        const auto neighborhood = neighborsWithin(d, metric, p, eps);
        if (neighborhood.size() < minPoints) {
            assignment.labels[p] = ClusterAssignment::kNoise;
            continue;
        }
        assignment.labels[p] = clusterId;
        std::deque<size_t> seeds(neighborhood.begin(), neighborhood.end());
        while (!seeds.empty()) {
            const size_t q = seeds.front();
            seeds.pop_front();
            if (assignment.labels[q] == ClusterAssignment::kNoise) {
                assignment.labels[q] = clusterId;
                continue;
            }
            if (assignment.labels[q] != kUnvisited) continue;
            assignment.labels[q] = clusterId;
            const auto expansion = neighborsWithin(d, metric, q, eps);
            if (expansion.size() >= minPoints) {
                seeds.insert(seeds.end(), expansion.begin(), expansion.end());
            }
        }
        ++clusterId;
    }
    return assignment;
}

OpticsOrdering optics(const Dataset& d, double eps, size_t minPoints) {
    if (!(eps > 0.0)) throw Error("eps must be positive");
    if (minPoints < 1) throw Error("min_points must be at least 1");
    const DistanceMetric metric = DistanceMetric::forDataset(d);

    OpticsOrdering ordering;
    ordering.eps = eps;
    ordering.minPoints = minPoints;

    // Core distance: the minPoints-th closest instance counting the point
    // itself, when that lies within eps.
    std::vector<std::optional<double>> coreDist(d.n());
    for (size_t p = 0; p < d.n(); ++p) {
        std::vector<double> dists;
        dists.reserve(d.n());
        for (size_t r = 0; r < d.n(); ++r) dists.push_back(metric(d.rows[p], d.rows[r]));
        if (dists.size() < minPoints) continue;
        std::nth_element(dists.begin(), dists.begin() + static_cast<long>(minPoints - 1),
                         dists.end());
        const double kth = dists[minPoints - 1];
        if (kth <= eps) coreDist[p] = kth;
    }

    std::vector<bool> processed(d.n(), false);
    std::set<std::pair<double, size_t>> seeds;
    std::map<size_t, double> seedReach;

    auto emit = [&](size_t row, std::optional<double> reach) {
        processed[row] = true;
        ordering.order.push_back(row);
        ordering.reachability.push_back(reach);
        ordering.coreDistance.push_back(coreDist[row]);
    };
    auto update = [&](size_t p) {
        for (size_t q : neighborsWithin(d, metric, p, eps)) {
            if (processed[q]) continue;
            const double reach = std::max(*coreDist[p], metric(d.rows[p], d.rows[q]));
            auto it = seedReach.find(q);
            if (it == seedReach.end()) {
                seedReach.emplace(q, reach);
                seeds.emplace(reach, q);
            } else if (reach < it->second) {
                seeds.erase({it->second, q});
                seeds.emplace(reach, q);
                it->second = reach;
            }
        }
    };

    for (size_t start = 0; start < d.n(); ++start) {
        if (processed[start]) continue;
        emit(start, std::nullopt);
        if (!coreDist[start]) continue;
        update(start);
        while (!seeds.empty()) {
            const auto [reach, q] = *seeds.begin();
            seeds.erase(seeds.begin());
            seedReach.erase(q);
            emit(q, reach);
            if (coreDist[q]) update(q);
        }
    }
    return ordering;
}

ClusterAssignment opticsExtract(const OpticsOrdering& ordering, double epsPrime) {
    if (!(epsPrime > 0.0)) throw Error("eps must be positive");
    if (epsPrime > ordering.eps) {
        throw Error("extraction radius exceeds the ordering's build radius");
    }
    ClusterAssignment assignment;
    assignment.labels.assign(ordering.order.size(), ClusterAssignment::kUndefined);
    int cluster = -1;
    for (size_t i = 0; i < ordering.order.size(); ++i) {
        const size_t row = ordering.order[i];
        const auto& reach = ordering.reachability[i];
        if (!reach || *reach > epsPrime) {
            const auto& core = ordering.coreDistance[i];
            if (core && *core <= epsPrime) {
                assignment.labels[row] = ++cluster;
            } else {
                assignment.labels[row] = ClusterAssignment::kNoise;
            }
        } else {
            // A small reachability implies an earlier in-radius core point,
            // so a cluster is always open here.
            assignment.labels[row] = cluster;
        }
    }
    return assignment;
}

std::string reachabilityPlotData(const OpticsOrdering& ordering) {
    std::string out = "position\treachability\n";
    for (size_t i = 0; i < ordering.reachability.size(); ++i) {
        out += std::to_string(i);
        out += '\t';
        out += ordering.reachability[i] ? formatDouble(*ordering.reachability[i]) : "UNDEFINED";
        out += '\n';
    }
    return out;
}

} // namespace steelclust
