#pragma once

#include "steelclust/dataset.h"

namespace steelclust {

// Euclidean distance over the active (non-class) attributes. Numeric
// differences are scaled by the attribute's observed range (zero span
// contributes nothing); nominal attributes contribute 0 on match, 1 on
// mismatch. Ranges are frozen at construction, so instances outside the
// original bounds still measure consistently.
class DistanceMetric {
public:
    static DistanceMetric forDataset(const Dataset& d);

    // Same schema handling, but normalizes by caller-supplied ranges (for
    // measuring new instances under a fitted model's bounds).
    static DistanceMetric withRanges(const Dataset& d, Ranges ranges);

    double operator()(const Instance& a, const Instance& b) const;

    const Ranges& ranges() const { return ranges_; }

private:
    std::vector<int> active_;
    std::vector<AttributeKind> kinds_;
    Ranges ranges_;
};

} // namespace steelclust
