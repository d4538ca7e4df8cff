#include <doctest.h>

#include <cmath>
#include <vector>

#include "steelclust/em.h"
#include "steelclust/error.h"
#include "steelclust/mixture.h"
#include "steelclust/rng.h"
#include "test_support.h"

using namespace steelclust;
using testsupport::numericColumn;

namespace {

constexpr double kLogTwoPi = 1.8378770664093453;

Dataset twoBlobs(size_t n, uint64_t seed) {
    Rng rng(seed);
    std::vector<double> values;
    for (size_t i = 0; i < n; ++i) {
        values.push_back(i % 2 == 0 ? rng.nextGaussian() : 100.0 + rng.nextGaussian());
    }
    return numericColumn(values);
}

Dataset mixedBlobs(size_t n, uint64_t seed) {
    Rng rng(seed);
    Dataset d;
    d.schema.push_back(AttributeSpec::numeric("x"));
    d.schema.push_back(AttributeSpec::nominal("tag", {"a", "b", "c"}));
    for (size_t i = 0; i < n; ++i) {
        const bool second = i % 2 == 1;
        d.rows.push_back(
            {Value::numeric((second ? 50.0 : 0.0) + rng.nextGaussian()),
             Value::symbol(second ? 2 : static_cast<int>(rng.nextBelow(2)))});
    }
    return d;
}

} // namespace

TEST_CASE("a single component reduces to the closed-form fit") {
    const std::vector<double> values = {1.0, 2.0, 3.0, 6.0};
    const Dataset d = numericColumn(values);
    const EmResult result = emFit(d, 1, 42);

    const double mean = 3.0;
    double varSum = 0.0;
    for (double v : values) varSum += (v - mean) * (v - mean);
    const double std = std::sqrt(varSum / 4.0);

    REQUIRE(result.model.params.componentCount() == 1);
    const Component& comp = result.model.params.components()[0];
    CHECK(comp.prior == 1.0);
    CHECK(comp.means[0] == doctest::Approx(mean).epsilon(1e-12));
    CHECK(comp.stds[0] == doctest::Approx(std).epsilon(1e-12));

    // Average log-likelihood has a closed form for one normal component.
    double expected = 0.0;
    for (double v : values) {
        const double z = (v - mean) / std;
        expected += -0.5 * (kLogTwoPi + z * z) - std::log(std);
    }
    expected /= 4.0;
    CHECK(result.model.avgLogLikelihood == doctest::Approx(expected).epsilon(1e-12));
    CHECK(averageLogLikelihood(result.model.params, d) ==
          doctest::Approx(expected).epsilon(1e-12));

    for (int label : result.assignment.labels) CHECK(label == 0);
}

TEST_CASE("the training log-likelihood never decreases across iterations") {
    for (uint64_t seed : {1ULL, 7ULL, 42ULL}) {
        const Dataset d = mixedBlobs(120, seed);
        const EmResult result = emFit(d, 3, seed);
        CAPTURE(seed);
        REQUIRE(!result.model.llHistory.empty());
        // Discrete smoothing and the std floor make each maximization step
        // slightly off the exact optimum, so near convergence the likelihood
        // can dip by a hair; anything beyond 1e-5 would mean a broken step.
        for (size_t i = 1; i < result.model.llHistory.size(); ++i) {
            CHECK(result.model.llHistory[i] >= result.model.llHistory[i - 1] - 1e-5);
        }
        CHECK(result.model.avgLogLikelihood == result.model.llHistory.back());
    }
}

TEST_CASE("EM separates two distant blobs and recovers their means") {
    const Dataset d = twoBlobs(200, 5);
    const EmResult result = emFit(d, 2, 42);

    REQUIRE(result.model.params.componentCount() == 2);
    double lo = result.model.params.components()[0].means[0];
    double hi = result.model.params.components()[1].means[0];
    if (lo > hi) std::swap(lo, hi);
    CHECK(lo == doctest::Approx(0.0).scale(1.0).epsilon(0.5));
    CHECK(hi == doctest::Approx(100.0).epsilon(0.01));

    // The hard assignment splits the blobs cleanly.
    for (size_t r = 0; r < d.n(); ++r) {
        CHECK(result.assignment.labels[r] ==
              result.assignment.labels[r % 2]);
    }
}

TEST_CASE("posterior memberships sum to one") {
    const Dataset d = mixedBlobs(60, 3);
    const EmResult result = emFit(d, 3, 1);
    for (size_t r = 0; r < d.n(); ++r) {
        const auto post = result.model.params.membership(d.rows[r]);
        double sum = 0.0;
        for (double p : post) {
            CHECK(p >= 0.0);
            sum += p;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("emFit is deterministic per seed") {
    const Dataset d = mixedBlobs(80, 2);
    const EmResult a = emFit(d, 3, 9);
    const EmResult b = emFit(d, 3, 9);
    CHECK(a.model.avgLogLikelihood == b.model.avgLogLikelihood);
    CHECK(a.assignment.labels == b.assignment.labels);
    CHECK(a.model.llHistory == b.model.llHistory);
}

TEST_CASE("emFit validates its arguments") {
    const Dataset d = numericColumn({1.0, 2.0, 3.0});
    CHECK_THROWS_AS(emFit(d, 0, 1), Error);
    CHECK_THROWS_AS(emFit(d, 4, 1), Error);
    CHECK_THROWS_AS(emFit(d, 1, 1, 0), Error);
    CHECK_THROWS_AS(emFit(d, 1, 1, 100, 0.0), Error);

    Dataset empty;
    empty.schema.push_back(AttributeSpec::numeric("x"));
    CHECK_THROWS_AS(averageLogLikelihood(MixtureParams::layoutFor(empty), empty), Error);
}

TEST_CASE("cross-validated selection sees the two-blob structure") {
    const Dataset d = twoBlobs(200, 8);
    const EmResult result = emSelectK(d, 42, 5, 6);
    // The stop rule compares held-out likelihoods that differ only by
    // finite-sample noise between k=2 and k=3, so either can win; picking
    // one component or blowing past three would be a real failure.
    CHECK(result.model.k >= 2);
    CHECK(result.model.k <= 3);
    bool nearZero = false;
    bool nearHundred = false;
    for (const auto& comp : result.model.params.components()) {
        if (std::fabs(comp.means[0]) < 2.0) nearZero = true;
        if (std::fabs(comp.means[0] - 100.0) < 2.0) nearHundred = true;
    }
    CHECK(nearZero);
    CHECK(nearHundred);
}

TEST_CASE("cross-validated selection keeps one component for a single blob") {
    Rng rng(21);
    std::vector<double> values;
    for (int i = 0; i < 200; ++i) values.push_back(rng.nextGaussian());
    const EmResult result = emSelectK(numericColumn(values), 42, 5, 4);
    CHECK(result.model.k == 1);
}

TEST_CASE("estimate applies add-one smoothing to nominal attributes") {
    const Dataset d = testsupport::nominalColumn({"a", "b"}, {0, 0, 1});
    MixtureParams params = MixtureParams::layoutFor(d);
    params.estimate(d, {{1.0, 1.0, 1.0}});

    const auto& probs = params.components()[0].discrete[0];
    REQUIRE(probs.size() == 2);
    CHECK(probs[0] == doctest::Approx(0.6).epsilon(1e-12));  // (2+1)/(3+2)
    CHECK(probs[1] == doctest::Approx(0.4).epsilon(1e-12));  // (1+1)/(3+2)
    CHECK(params.logDensity(0, d.rows[0]) == doctest::Approx(std::log(0.6)).epsilon(1e-12));
}

TEST_CASE("estimate floors stds and rejects massless components") {
    const Dataset flat = numericColumn({5.0, 5.0, 5.0});
    MixtureParams params = MixtureParams::layoutFor(flat);
    params.estimate(flat, {{1.0, 1.0, 1.0}});
    CHECK(params.components()[0].stds[0] == 1e-6);  // absolute floor on zero span

    const Dataset spread = numericColumn({0.0, 1000.0, 1000.0, 0.0});
    MixtureParams wide = MixtureParams::layoutFor(spread);
    wide.estimate(spread, {{1.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 1.0}});
    // Each component straddles the span, so stds are genuine, not floored.
    CHECK(wide.components()[0].stds[0] == 500.0);

    CHECK_THROWS_AS(wide.estimate(spread, {{1.0, 1.0, 1.0, 1.0}, {0.0, 0.0, 0.0, 0.0}}),
                    Error);
    CHECK_THROWS_AS(wide.estimate(spread, {{1.0, 1.0}}), Error);
}

TEST_CASE("a standard normal density evaluates to its textbook value") {
    const Dataset d = numericColumn({-1.0, 1.0});  // mean 0, population std 1
    MixtureParams params = MixtureParams::layoutFor(d);
    params.estimate(d, {{1.0, 1.0}});
    CHECK(params.components()[0].means[0] == 0.0);
    CHECK(params.components()[0].stds[0] == 1.0);

    const Instance origin = {Value::numeric(0.0)};
    CHECK(params.logDensity(0, origin) ==
          doctest::Approx(-0.5 * kLogTwoPi).epsilon(1e-12));
}

TEST_CASE("hardWeights turns labels into indicator rows") {
    ClusterAssignment assignment;
    assignment.labels = {0, ClusterAssignment::kNoise, 1, ClusterAssignment::kUndefined};
    const auto weights = hardWeights(assignment, 2);
    REQUIRE(weights.size() == 2);
    CHECK(weights[0] == std::vector<double>{1.0, 0.0, 0.0, 0.0});
    CHECK(weights[1] == std::vector<double>{0.0, 0.0, 1.0, 0.0});

    assignment.labels = {3};
    CHECK_THROWS_AS(hardWeights(assignment, 2), Error);
}
