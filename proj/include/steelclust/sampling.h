#pragma once

#include <cstddef>
#include <vector>

#include "steelclust/dataset.h"
#include "steelclust/rng.h"

namespace steelclust {

struct TrainTestSplit {
    std::vector<size_t> trainRows;
    std::vector<size_t> testRows;
};

// Shuffles row indices and takes the first floor(fraction * n) for training.
// Requires 0 < fraction <= 1; fraction 1 leaves the test side empty.
TrainTestSplit splitTrainTest(size_t n, double fraction, Rng& rng);

// Shuffles row indices and deals them into contiguous folds whose sizes
// differ by at most one. Requires 2 <= folds <= n.
std::vector<std::vector<size_t>> foldAssignments(size_t n, size_t folds, Rng& rng);

// New dataset with the same schema and class marker, holding copies of the
// chosen rows in the given order.
Dataset selectRows(const Dataset& d, const std::vector<size_t>& rows);

} // namespace steelclust
