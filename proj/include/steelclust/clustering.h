#pragma once

#include <cstddef>
#include <vector>

namespace steelclust {

// Per-instance labels. Nonnegative values are cluster indices, contiguous
// from 0. kNoise marks instances no cluster claimed; kUndefined marks
// positions a density ordering never reached.
struct ClusterAssignment {
    static constexpr int kNoise = -1;
    static constexpr int kUndefined = -2;

    std::vector<int> labels;

    size_t size() const { return labels.size(); }

    size_t clusterCount() const {
        int maxLabel = -1;
        for (int l : labels) {
            if (l > maxLabel) maxLabel = l;
        }
        return static_cast<size_t>(maxLabel + 1);
    }

    size_t countOf(int label) const {
        size_t n = 0;
        for (int l : labels) {
            if (l == label) ++n;
        }
        return n;
    }
};

} // namespace steelclust
