#include <doctest.h>

#include <cmath>
#include <vector>

#include "steelclust/error.h"
#include "steelclust/feature_selection.h"
#include "steelclust/rng.h"
#include "test_support.h"

using namespace steelclust;

namespace {

// Class plus three nominal features: an exact copy, a copy of that copy
// placed later in the schema, and pure noise.
Dataset informativeDuplicateNoise(size_t n, uint64_t seed) {
    Dataset d;
    d.schema.push_back(AttributeSpec::nominal("informative", {"u", "v"}));
    d.schema.push_back(AttributeSpec::nominal("duplicate", {"u", "v"}));
    d.schema.push_back(AttributeSpec::nominal("noise", {"a", "b", "c", "d"}));
    d.schema.push_back(AttributeSpec::nominal("label", {"yes", "no"}));
    Rng rng(seed);
    for (size_t r = 0; r < n; ++r) {
        const int cls = static_cast<int>(r % 2);
        const int junk = static_cast<int>(rng.nextBelow(4));
        d.rows.push_back({Value::symbol(cls), Value::symbol(cls), Value::symbol(junk),
                          Value::symbol(cls)});
    }
    return d;
}

} // namespace

TEST_CASE("equal-frequency binning splits distinct values by middle rank") {
    CHECK(discretizeEqualFrequency({1, 2, 3, 4, 5, 6}, 3) ==
          std::vector<int>{0, 0, 1, 1, 2, 2});
    // Order of appearance never matters.
    CHECK(discretizeEqualFrequency({6, 1, 4, 3, 5, 2}, 3) ==
          std::vector<int>{2, 0, 1, 1, 2, 0});
}

TEST_CASE("tied values always share a bin") {
    const std::vector<int> bins = discretizeEqualFrequency({1, 1, 1, 1, 2, 2}, 2);
    CHECK(bins == std::vector<int>{0, 0, 0, 0, 1, 1});

    const std::vector<int> flat = discretizeEqualFrequency({5, 5, 5}, 3);
    CHECK(flat[0] == flat[1]);
    CHECK(flat[1] == flat[2]);
}

TEST_CASE("binning rejects a zero bin count") {
    CHECK_THROWS_AS(discretizeEqualFrequency({1.0}, 0), Error);
}

TEST_CASE("symmetric uncertainty hits its anchor points") {
    const std::vector<int> x = {0, 0, 1, 1};
    CHECK(symmetricUncertainty(x, x) == 1.0);
    CHECK(symmetricUncertainty(x, {0, 1, 0, 1}) == 0.0);       // independent
    CHECK(symmetricUncertainty(x, {1, 1, 0, 0}) == 1.0);       // relabeled copy
    CHECK(symmetricUncertainty({0, 0, 0}, {0, 0, 0}) == 0.0);  // both constant
}

TEST_CASE("symmetric uncertainty matches a hand entropy computation") {
    // y copies a balanced binary x except for one of the eight instances.
    const std::vector<int> x = {0, 0, 1, 1, 0, 0, 1, 1};
    const std::vector<int> y = {1, 0, 1, 1, 0, 0, 1, 1};

    const double hx = 1.0;
    const double hy = -(3.0 / 8.0) * std::log2(3.0 / 8.0) - (5.0 / 8.0) * std::log2(5.0 / 8.0);
    const double hxy = -(3.0 / 8.0) * std::log2(3.0 / 8.0) -
                       (1.0 / 8.0) * std::log2(1.0 / 8.0) -
                       (4.0 / 8.0) * std::log2(4.0 / 8.0);
    const double expected = 2.0 * (hx + hy - hxy) / (hx + hy);

    CHECK(symmetricUncertainty(x, y) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("symmetric uncertainty validates its inputs") {
    CHECK_THROWS_AS(symmetricUncertainty({0}, {0, 1}), Error);
    CHECK_THROWS_AS(symmetricUncertainty({}, {}), Error);
}

TEST_CASE("evaluator excludes the class from the candidates") {
    const Dataset d = informativeDuplicateNoise(20, 1);
    const CfsEvaluator eval(d, 3);
    CHECK(eval.candidates() == std::vector<int>{0, 1, 2});
    CHECK(eval.classAttr() == 3);
    CHECK(eval.correlation(0, 3) == eval.correlation(3, 0));
    CHECK_THROWS_AS(eval.merit({}), Error);
    CHECK_THROWS_AS(CfsEvaluator(d, 9), Error);
}

TEST_CASE("singleton merit equals the class correlation") {
    const Dataset d = informativeDuplicateNoise(40, 2);
    const CfsEvaluator eval(d, 3);
    CHECK(eval.merit({0}) == doctest::Approx(eval.correlation(0, 3)).epsilon(1e-12));
    // Adding an identical feature leaves the merit unchanged:
    // 2 * rcf / sqrt(2 + 2 * 1) collapses to rcf.
    CHECK(eval.merit({0, 1}) == doctest::Approx(eval.merit({0})).epsilon(1e-12));
}

TEST_CASE("search selects the informative attribute over duplicate and noise") {
    const Dataset d = informativeDuplicateNoise(100, 3);
    const SelectionResult result = bestFirstSearch(d, 3, kNoStaleLimit);

    CHECK(result.selected == std::vector<int>{0});
    CHECK(result.merit == 1.0);

    const CfsEvaluator eval(d, 3);
    const SelectionResult oracle = exhaustiveSearch(eval);
    CHECK(result.merit == oracle.merit);
    CHECK(result.selected == oracle.selected);
}

TEST_CASE("an exhausted best-first search equals the exhaustive oracle") {
    Rng rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        Dataset d;
        const size_t attrs = 5;
        for (size_t a = 0; a < attrs; ++a) {
            d.schema.push_back(
                AttributeSpec::nominal("f" + std::to_string(a), {"0", "1", "2"}));
        }
        d.schema.push_back(AttributeSpec::nominal("cls", {"p", "n"}));
        for (int r = 0; r < 30; ++r) {
            Instance row;
            const int cls = static_cast<int>(rng.nextBelow(2));
            for (size_t a = 0; a < attrs; ++a) {
                // Mix class signal with noise at varying strengths.
                const bool copy = rng.nextUnit() < 0.2 * static_cast<double>(a);
                row.push_back(Value::symbol(copy ? cls : static_cast<int>(rng.nextBelow(3))));
            }
            row.push_back(Value::symbol(cls));
            d.rows.push_back(std::move(row));
        }

        const CfsEvaluator eval(d, static_cast<int>(attrs));
        const SelectionResult greedy = bestFirstSearch(eval, kNoStaleLimit);
        const SelectionResult oracle = exhaustiveSearch(eval);
        CAPTURE(trial);
        CHECK(greedy.merit == oracle.merit);
        CHECK(greedy.selected == oracle.selected);
        CHECK(greedy.subsetsEvaluated == oracle.subsetsEvaluated);
        CHECK(greedy.subsetsEvaluated == (size_t{1} << attrs) - 1);
    }
}

TEST_CASE("the stale limit caps exploration") {
    const Dataset d = informativeDuplicateNoise(60, 5);
    const SelectionResult early = bestFirstSearch(d, 3, 1);
    const SelectionResult full = bestFirstSearch(d, 3, kNoStaleLimit);
    CHECK(early.subsetsEvaluated <= full.subsetsEvaluated);
    CHECK(early.merit <= full.merit);
    CHECK(early.selected == full.selected);  // the winner is found immediately here
}

TEST_CASE("numeric attributes are discretized before scoring") {
    // A numeric feature that separates the classes perfectly.
    Dataset d;
    d.schema.push_back(AttributeSpec::numeric("x"));
    d.schema.push_back(AttributeSpec::nominal("cls", {"lo", "hi"}));
    for (int i = 0; i < 30; ++i) {
        const bool hi = i % 2 == 1;
        d.rows.push_back({Value::numeric(hi ? 100.0 + i : i), Value::symbol(hi ? 1 : 0)});
    }
    const SelectionResult result = bestFirstSearch(d, 1, 5, 2);
    CHECK(result.selected == std::vector<int>{0});
    CHECK(result.merit == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("search requires candidates and rows") {
    Dataset d = testsupport::nominalColumn({"a", "b"}, {0, 1});
    CHECK_THROWS_AS(bestFirstSearch(d, 0, 5), Error);  // class is the only attribute

    Dataset empty;
    empty.schema.push_back(AttributeSpec::nominal("cls", {"a"}));
    CHECK_THROWS_AS(CfsEvaluator(empty, 0), Error);
}
