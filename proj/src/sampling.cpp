#include "steelclust/sampling.h"

#include <cmath>
#include <numeric>

#include "steelclust/error.h"

namespace steelclust {

namespace {

std::vector<size_t> shuffledIndices(size_t n, Rng& rng) {
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), size_t{0});
    rng.shuffle(idx);
    return idx;
}

} // namespace

TrainTestSplit splitTrainTest(size_t n, double fraction, Rng& rng) {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw Error("train fraction must lie in (0, 1]");
    }
    const auto idx = shuffledIndices(n, rng);
    const auto trainCount =
        static_cast<size_t>(std::floor(fraction * static_cast<double>(n)));

    TrainTestSplit split;
    split.trainRows.assign(idx.begin(), idx.begin() + static_cast<long>(trainCount));
    split.testRows.assign(idx.begin() + static_cast<long>(trainCount), idx.end());
    return split;
}

std::vector<std::vector<size_t>> foldAssignments(size_t n, size_t folds, Rng& rng) {
    if (folds < 2) throw Error("cross-validation needs at least 2 folds");
    if (folds > n) throw Error("more folds than rows");
    const auto idx = shuffledIndices(n, rng);
    std::vector<std::vector<size_t>> out(folds);
    for (size_t f = 0; f < folds; ++f) {
        const size_t begin = f * n / folds;
        const size_t end = (f + 1) * n / folds;
        out[f].assign(idx.begin() + static_cast<long>(begin),
                      idx.begin() + static_cast<long>(end));
    }
    return out;
}

Dataset selectRows(const Dataset& d, const std::vector<size_t>& rows) {
    Dataset out;
    out.schema = d.schema;
    out.classIndex = d.classIndex;
    out.rows.reserve(rows.size());
    for (size_t r : rows) {
        if (r >= d.n()) throw Error("row index out of range");
        out.rows.push_back(d.rows[r]);
    }
    return out;
}

} // namespace steelclust
