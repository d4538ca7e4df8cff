#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "steelclust/clustering.h"
#include "steelclust/density.h"
#include "steelclust/distance.h"
#include "steelclust/error.h"
#include "steelclust/rng.h"
#include "test_support.h"

using namespace steelclust;
using testsupport::numericColumn;

namespace {

std::vector<std::vector<double>> distanceTable(const Dataset& d) {
    const DistanceMetric metric = DistanceMetric::forDataset(d);
    std::vector<std::vector<double>> table(d.n(), std::vector<double>(d.n(), 0.0));
    for (size_t i = 0; i < d.n(); ++i) {
        for (size_t j = 0; j < d.n(); ++j) table[i][j] = metric(d.rows[i], d.rows[j]);
    }
    return table;
}

// Transitive-closure reference: cores are points with at least minPoints
// neighbors (self included); clusters are the connected components of cores
// under the eps relation.
struct DensityOracle {
    std::vector<bool> core;
    std::vector<int> coreComponent;  // -1 for non-cores

    DensityOracle(const std::vector<std::vector<double>>& dist, double eps, size_t minPoints) {
        const size_t n = dist.size();
        core.assign(n, false);
        for (size_t i = 0; i < n; ++i) {
            size_t neighbors = 0;
            for (size_t j = 0; j < n; ++j) {
                if (dist[i][j] <= eps) ++neighbors;
            }
            core[i] = neighbors >= minPoints;
        }

        std::vector<size_t> parent(n);
        std::iota(parent.begin(), parent.end(), size_t{0});
        auto find = [&](size_t x) {
            while (parent[x] != x) {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            return x;
        };
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = i + 1; j < n; ++j) {
                if (core[i] && core[j] && dist[i][j] <= eps) parent[find(i)] = find(j);
            }
        }
        coreComponent.assign(n, -1);
        std::map<size_t, int> numbering;
        for (size_t i = 0; i < n; ++i) {
            if (!core[i]) continue;
            const size_t root = find(i);
            auto [it, inserted] = numbering.try_emplace(root, static_cast<int>(numbering.size()));
            coreComponent[i] = it->second;
        }
    }
};

// Checks the full DBSCAN contract against the oracle: cores carry the
// component partition (modulo numbering), borders attach to a cluster with
// a core neighbor, noise has no core neighbor.
void checkAgainstOracle(const ClusterAssignment& got,
                        const std::vector<std::vector<double>>& dist, double eps,
                        size_t minPoints) {
    const DensityOracle oracle(dist, eps, minPoints);
    const size_t n = dist.size();
    REQUIRE(got.labels.size() == n);

    std::map<int, int> gotToOracle, oracleToGot;
    for (size_t i = 0; i < n; ++i) {
        if (!oracle.core[i]) continue;
        REQUIRE(got.labels[i] >= 0);
        const int g = got.labels[i];
        const int o = oracle.coreComponent[i];
        auto [itG, newG] = gotToOracle.try_emplace(g, o);
        auto [itO, newO] = oracleToGot.try_emplace(o, g);
        CHECK(itG->second == o);
        CHECK(itO->second == g);
    }

    for (size_t i = 0; i < n; ++i) {
        if (oracle.core[i]) continue;
        if (got.labels[i] == ClusterAssignment::kNoise) {
            for (size_t j = 0; j < n; ++j) {
                if (oracle.core[j]) CHECK(dist[i][j] > eps);
            }
        } else {
            REQUIRE(got.labels[i] >= 0);
            bool attached = false;
            for (size_t j = 0; j < n; ++j) {
                if (oracle.core[j] && dist[i][j] <= eps && got.labels[j] == got.labels[i]) {
                    attached = true;
                    break;
                }
            }
            CHECK(attached);
        }
    }
}

// True when the two labelings are the same partition with the same special
// labels, allowing cluster ids to be renamed.
bool samePartition(const ClusterAssignment& a, const ClusterAssignment& b) {
    if (a.labels.size() != b.labels.size()) return false;
    std::map<int, int> fwd, rev;
    for (size_t i = 0; i < a.labels.size(); ++i) {
        if (a.labels[i] < 0 || b.labels[i] < 0) {
            if (a.labels[i] != b.labels[i]) return false;
            continue;
        }
        auto [itF, newF] = fwd.try_emplace(a.labels[i], b.labels[i]);
        auto [itR, newR] = rev.try_emplace(b.labels[i], a.labels[i]);
        if (itF->second != b.labels[i] || itR->second != a.labels[i]) return false;
    }
    return true;
}

Dataset randomPlane(Rng& rng, size_t n, double side) {
    Dataset d;
    d.schema.push_back(AttributeSpec::numeric("x"));
    d.schema.push_back(AttributeSpec::numeric("y"));
    for (size_t i = 0; i < n; ++i) {
        d.rows.push_back({Value::numeric(rng.nextUnit() * side),
                          Value::numeric(rng.nextUnit() * side)});
    }
    return d;
}

} // namespace

TEST_CASE("dbscan matches the transitive-closure oracle on random data") {
    Rng rng(201);
    for (int trial = 0; trial < 40; ++trial) {
        const Dataset d = randomPlane(rng, 10 + rng.nextBelow(41), 10.0);
        const double eps = 0.05 + 0.4 * rng.nextUnit();
        const size_t minPoints = 2 + rng.nextBelow(4);
        CAPTURE(trial);
        CAPTURE(eps);
        CAPTURE(minPoints);
        checkAgainstOracle(dbscan(d, eps, minPoints), distanceTable(d), eps, minPoints);
    }
}

TEST_CASE("without border ambiguity the oracle partition is reproduced exactly") {
    Rng rng(202);
    for (int trial = 0; trial < 30; ++trial) {
        const Dataset d = randomPlane(rng, 10 + rng.nextBelow(31), 8.0);
        const double eps = 0.05 + 0.3 * rng.nextUnit();
        const auto dist = distanceTable(d);
        const DensityOracle oracle(dist, eps, 2);

        ClusterAssignment expected;
        expected.labels.assign(d.n(), ClusterAssignment::kNoise);
        for (size_t i = 0; i < d.n(); ++i) {
            // With minPoints 2 any point near a core is itself a core.
            if (oracle.core[i]) expected.labels[i] = oracle.coreComponent[i];
        }
        CAPTURE(trial);
        CHECK(samePartition(dbscan(d, eps, 2), expected));
    }
}

TEST_CASE("border points join a neighboring core's cluster") {
    // Raw values 0, 1, 2 with span 2: only the middle point has three
    // neighbors within half the span.
    const Dataset d = numericColumn({0.0, 1.0, 2.0});
    const ClusterAssignment got = dbscan(d, 0.5, 3);
    CHECK(got.labels == std::vector<int>{0, 0, 0});
    checkAgainstOracle(got, distanceTable(d), 0.5, 3);
}

TEST_CASE("isolated points end as noise and labels stay contiguous") {
    const Dataset d = numericColumn({0.0, 0.01, 0.02, 5.0, 9.98, 9.99, 10.0});
    const ClusterAssignment got = dbscan(d, 0.01, 2);
    CHECK(got.countOf(ClusterAssignment::kNoise) == 1);
    CHECK(got.clusterCount() == 2);
    CHECK(got.labels[3] == ClusterAssignment::kNoise);
    CHECK(got.labels[0] == 0);
    CHECK(got.labels[4] == 1);
}

TEST_CASE("growing eps never creates more noise") {
    Rng rng(203);
    const Dataset d = randomPlane(rng, 60, 5.0);
    size_t previousNoise = d.n() + 1;
    for (double eps : {0.02, 0.05, 0.1, 0.2, 0.4, 0.8}) {
        const size_t noise = dbscan(d, eps, 3).countOf(ClusterAssignment::kNoise);
        CHECK(noise <= previousNoise);
        previousNoise = noise;
    }
}

TEST_CASE("dbscan and optics validate their parameters") {
    const Dataset d = numericColumn({1.0, 2.0});
    CHECK_THROWS_AS(dbscan(d, 0.0, 2), Error);
    CHECK_THROWS_AS(dbscan(d, 0.5, 0), Error);
    CHECK_THROWS_AS(optics(d, -1.0, 2), Error);
    CHECK_THROWS_AS(optics(d, 0.5, 0), Error);
}

TEST_CASE("the six-point line reproduces its reachability profile exactly") {
    const Dataset d = numericColumn({0.0, 1.0, 2.0, 10.0, 11.0, 12.0});
    const OpticsOrdering ordering = optics(d, 1.0, 2);

    REQUIRE(ordering.order.size() == 6);
    CHECK(ordering.order == std::vector<size_t>{0, 1, 2, 3, 4, 5});
    REQUIRE(!ordering.reachability[0].has_value());
    // Raw gaps of 1, 1, 8, 1, 1 over the span of 12.
    CHECK(*ordering.reachability[1] == 1.0 / 12.0);
    CHECK(*ordering.reachability[2] == 1.0 / 12.0);
    CHECK(*ordering.reachability[3] == 8.0 / 12.0);
    CHECK(*ordering.reachability[4] == 1.0 / 12.0);
    CHECK(*ordering.reachability[5] == 1.0 / 12.0);

    for (size_t i = 0; i < 6; ++i) {
        REQUIRE(ordering.coreDistance[i].has_value());
        CHECK(*ordering.coreDistance[i] == 1.0 / 12.0);
    }
}

TEST_CASE("extraction at the build radius matches dbscan") {
    Rng rng(204);
    for (int trial = 0; trial < 10; ++trial) {
        const Dataset d = randomPlane(rng, 40, 6.0);
        const double eps = 0.1 + 0.2 * rng.nextUnit();
        const OpticsOrdering ordering = optics(d, eps, 2);
        CAPTURE(trial);
        CHECK(samePartition(opticsExtract(ordering, eps), dbscan(d, eps, 2)));
    }
}

TEST_CASE("one ordering serves every tighter radius") {
    Rng rng(205);
    for (int trial = 0; trial < 10; ++trial) {
        const Dataset d = randomPlane(rng, 35, 6.0);
        const OpticsOrdering ordering = optics(d, 0.6, 2);
        for (double eps : {0.1, 0.25, 0.5}) {
            CAPTURE(trial);
            CAPTURE(eps);
            CHECK(samePartition(opticsExtract(ordering, eps), dbscan(d, eps, 2)));
        }
    }
}

TEST_CASE("extraction rejects a radius beyond the build one") {
    const Dataset d = numericColumn({0.0, 1.0, 2.0});
    const OpticsOrdering ordering = optics(d, 0.5, 2);
    CHECK_THROWS_AS(opticsExtract(ordering, 0.9), Error);
    CHECK_THROWS_AS(opticsExtract(ordering, 0.0), Error);
}

TEST_CASE("mutually distant instances are all noise to dbscan and unreached by optics") {
    // Every row carries its own symbols, so each pair differs in two nominal
    // attributes and sits sqrt(2) apart, beyond the 0.9 radius.
    Dataset d;
    d.schema.push_back(AttributeSpec::nominal("product"));
    d.schema.push_back(AttributeSpec::nominal("customer"));
    for (int i = 0; i < 30; ++i) {
        d.schema[0].domain.push_back("P" + std::to_string(i));
        d.schema[1].domain.push_back("C" + std::to_string(i));
        d.rows.push_back({Value::symbol(i), Value::symbol(i)});
    }

    const ClusterAssignment got = dbscan(d, 0.9, 6);
    CHECK(got.countOf(ClusterAssignment::kNoise) == d.n());
    CHECK(got.clusterCount() == 0);

    const OpticsOrdering ordering = optics(d, 0.9, 6);
    for (size_t i = 0; i < d.n(); ++i) {
        CHECK_FALSE(ordering.reachability[i].has_value());
        CHECK_FALSE(ordering.coreDistance[i].has_value());
    }
    const ClusterAssignment extracted = opticsExtract(ordering, 0.9);
    CHECK(extracted.countOf(ClusterAssignment::kNoise) == d.n());
}

TEST_CASE("a single instance is its own core at minPoints one") {
    const Dataset d = numericColumn({3.0});
    const ClusterAssignment got = dbscan(d, 0.5, 1);
    CHECK(got.labels == std::vector<int>{0});

    const OpticsOrdering ordering = optics(d, 0.5, 1);
    REQUIRE(ordering.coreDistance[0].has_value());
    CHECK(*ordering.coreDistance[0] == 0.0);
    CHECK(opticsExtract(ordering, 0.5).labels == std::vector<int>{0});
}

TEST_CASE("reachability plot data lists positions with UNDEFINED spelled out") {
    const Dataset d = numericColumn({0.0, 1.0, 2.0, 10.0, 11.0, 12.0});
    const std::string text = reachabilityPlotData(optics(d, 1.0, 2));
    CHECK(text.substr(0, 23) == "position\treachability\n0");
    CHECK(text.find("0\tUNDEFINED\n") != std::string::npos);
    CHECK(text.find("\n3\t") != std::string::npos);
    const size_t lines = static_cast<size_t>(std::count(text.begin(), text.end(), '\n'));
    CHECK(lines == 7);  // header plus one line per instance
}
