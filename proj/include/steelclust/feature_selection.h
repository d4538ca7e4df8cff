#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <vector>

#include "steelclust/dataset.h"

namespace steelclust {

// Equal-frequency binning: each distinct value lands in the bin holding its
// middle rank, so ties always share a bin and the coding is order-free.
std::vector<int> discretizeEqualFrequency(const std::vector<double>& column, size_t bins);

// SU = 2 * (H(X) + H(Y) - H(X,Y)) / (H(X) + H(Y)) over integer-coded
// columns, in [0,1]; defined as 0 when both entropies vanish.
double symmetricUncertainty(const std::vector<int>& x, const std::vector<int>& y);

struct SelectionResult {
    std::vector<int> selected;
    double merit = 0.0;
    size_t subsetsEvaluated = 0;
};

// Scores attribute subsets by merit = k * rcf / sqrt(k + k*(k-1) * rff),
// where rcf averages each feature's symmetric uncertainty with the class
// and rff averages it over feature pairs. Numeric columns are discretized
// once at construction (bins 0 picks min(10, ceil(sqrt(n)))).
class CfsEvaluator {
public:
    CfsEvaluator(const Dataset& d, int classAttr, size_t bins = 0);

    double merit(const std::vector<int>& subset) const;
    double correlation(int a, int b) const;

    const std::vector<int>& candidates() const { return candidates_; }
    int classAttr() const { return classAttr_; }

private:
    std::vector<std::vector<int>> coded_;
    std::vector<int> candidates_;
    int classAttr_;
    mutable std::map<std::pair<int, int>, double> cache_;
};

inline constexpr size_t kNoStaleLimit = std::numeric_limits<size_t>::max();

// Forward best-first search over feature subsets: repeatedly expands the
// best unexpanded subset by single-attribute additions, stopping after
// staleLimit consecutive expansions that fail to improve the best merit.
// Ties prefer smaller subsets, then lexicographically earlier positions.
SelectionResult bestFirstSearch(const Dataset& d, int classAttr, size_t staleLimit = 5,
                                size_t bins = 0);
SelectionResult bestFirstSearch(const CfsEvaluator& eval, size_t staleLimit = 5);

// Exhaustive argmax over all nonempty subsets; oracle for small spaces.
SelectionResult exhaustiveSearch(const CfsEvaluator& eval);

} // namespace steelclust
