#include "steelclust/distance.h"

#include <cmath>
#include <utility>

namespace steelclust {

DistanceMetric DistanceMetric::forDataset(const Dataset& d) {
    return withRanges(d, computeRanges(d));
}

DistanceMetric DistanceMetric::withRanges(const Dataset& d, Ranges ranges) {
    DistanceMetric m;
    m.active_ = d.activeAttributes();
    m.kinds_.reserve(d.schema.size());
    for (const auto& spec : d.schema) m.kinds_.push_back(spec.kind);
    m.ranges_ = std::move(ranges);
    return m;
}

double DistanceMetric::operator()(const Instance& a, const Instance& b) const {
    double sum = 0.0;
    for (int attr : active_) {
        const auto i = static_cast<size_t>(attr);
        if (kinds_[i] == AttributeKind::Numeric) {
            const double span = ranges_.span(i);
            if (span == 0.0) continue;
            const double diff = (a[i].num() - b[i].num()) / span;
            sum += diff * diff;
        } else {
            if (a[i].sym() != b[i].sym()) sum += 1.0;
        }
    }
    return std::sqrt(sum);
}

} // namespace steelclust
