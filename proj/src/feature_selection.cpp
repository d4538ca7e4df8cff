#include "steelclust/feature_selection.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "steelclust/error.h"

namespace steelclust {

namespace {

template <typename Key>
double entropyBits(const std::map<Key, size_t>& counts, double n) {
    double h = 0.0;
    for (const auto& [key, count] : counts) {
        (void)key;
        if (count == 0) continue;
        const double p = static_cast<double>(count) / n;
        h -= p * std::log2(p);
    }
    return h;
}

// Merit comparison order: higher merit, then smaller subset, then
// lexicographically earlier attribute positions.
bool betterThan(double meritA, const std::vector<int>& a, double meritB,
                const std::vector<int>& b) {
    if (meritA != meritB) return meritA > meritB;
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

} // namespace

std::vector<int> discretizeEqualFrequency(const std::vector<double>& column, size_t bins) {
    if (bins == 0) throw Error("bin count must be positive");
    std::map<double, size_t> counts;
    for (double v : column) counts[v]++;

    const size_t n = column.size();
    std::map<double, int> binOf;
    size_t before = 0;
    for (const auto& [value, count] : counts) {
        const size_t midTwice = 2 * before + count;
        binOf[value] = static_cast<int>(midTwice * bins / (2 * n));
        before += count;
    }
    std::vector<int> out;
    out.reserve(n);
    for (double v : column) out.push_back(binOf.at(v));
    return out;
}

double symmetricUncertainty(const std::vector<int>& x, const std::vector<int>& y) {
    if (x.size() != y.size()) throw Error("column lengths differ");
    if (x.empty()) throw Error("columns must be nonempty");
    const auto n = static_cast<double>(x.size());

    std::map<int, size_t> cx, cy;
    std::map<std::pair<int, int>, size_t> cxy;
    for (size_t i = 0; i < x.size(); ++i) {
        cx[x[i]]++;
        cy[y[i]]++;
        cxy[{x[i], y[i]}]++;
    }
    const double hx = entropyBits(cx, n);
    const double hy = entropyBits(cy, n);
    const double hxy = entropyBits(cxy, n);
    if (hx + hy == 0.0) return 0.0;
    const double su = 2.0 * (hx + hy - hxy) / (hx + hy);
    return std::clamp(su, 0.0, 1.0);
}

CfsEvaluator::CfsEvaluator(const Dataset& d, int classAttr, size_t bins) : classAttr_(classAttr) {
    if (classAttr < 0 || classAttr >= static_cast<int>(d.schema.size())) {
        throw Error("class attribute out of range");
    }
    if (d.rows.empty()) throw Error("feature selection needs a nonempty dataset");
    if (bins == 0) {
        bins = std::min<size_t>(
            10, static_cast<size_t>(std::ceil(std::sqrt(static_cast<double>(d.n())))));
    }
    coded_.resize(d.schema.size());
    for (size_t a = 0; a < d.schema.size(); ++a) {
        if (d.schema[a].kind == AttributeKind::Nominal) {
            coded_[a].reserve(d.n());
            for (size_t r = 0; r < d.n(); ++r) coded_[a].push_back(d.rows[r][a].sym());
        } else {
            std::vector<double> column;
            column.reserve(d.n());
            for (size_t r = 0; r < d.n(); ++r) column.push_back(d.numAt(r, a));
            coded_[a] = discretizeEqualFrequency(column, bins);
        }
        if (static_cast<int>(a) != classAttr) candidates_.push_back(static_cast<int>(a));
    }
}

double CfsEvaluator::correlation(int a, int b) const {
    const auto key = std::minmax(a, b);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const double su = symmetricUncertainty(coded_[static_cast<size_t>(key.first)],
                                           coded_[static_cast<size_t>(key.second)]);
    cache_.emplace(key, su);
    return su;
}

double CfsEvaluator::merit(const std::vector<int>& subset) const {
    if (subset.empty()) throw Error("merit of an empty subset is undefined");
    const auto k = static_cast<double>(subset.size());
    double rcf = 0.0;
    for (int f : subset) rcf += correlation(f, classAttr_);
    rcf /= k;

    double rff = 0.0;
    if (subset.size() > 1) {
        size_t pairs = 0;
        for (size_t i = 0; i < subset.size(); ++i) {
            for (size_t j = i + 1; j < subset.size(); ++j) {
                rff += correlation(subset[i], subset[j]);
                ++pairs;
            }
        }
        rff /= static_cast<double>(pairs);
    }
    const double denom = std::sqrt(k + k * (k - 1.0) * rff);
    if (denom == 0.0) return 0.0;
    return k * rcf / denom;
}

SelectionResult bestFirstSearch(const CfsEvaluator& eval, size_t staleLimit) {
    const auto& candidates = eval.candidates();
    if (candidates.empty()) throw Error("no candidate attributes to search");

    std::set<std::vector<int>> scored;
    // Expansion frontier ordered by the same rule as the final result.
    struct Entry {
        double merit;
        std::vector<int> subset;
        bool operator<(const Entry& other) const {
            if (merit != other.merit) return merit > other.merit;
            if (subset.size() != other.subset.size()) return subset.size() < other.subset.size();
            return subset < other.subset;
        }
    };
    std::set<Entry> frontier;

    SelectionResult best;
    best.merit = -std::numeric_limits<double>::infinity();
    bool haveBest = false;

    auto scoreChild = [&](std::vector<int> child) {
        if (!scored.insert(child).second) return;
        const double m = eval.merit(child);
        if (!haveBest || betterThan(m, child, best.merit, best.selected)) {
            best.merit = m;
            best.selected = child;
            haveBest = true;
        }
        frontier.insert(Entry{m, std::move(child)});
    };

    // Expanding the empty set scores every singleton.
    std::vector<int> current;
    size_t stale = 0;
    while (true) {
        const double bestBefore = haveBest ? best.merit : -std::numeric_limits<double>::infinity();
        for (int a : candidates) {
            if (std::find(current.begin(), current.end(), a) != current.end()) continue;
            std::vector<int> child = current;
            child.insert(std::upper_bound(child.begin(), child.end(), a), a);
            scoreChild(std::move(child));
        }
        if (best.merit > bestBefore) {
            stale = 0;
        } else if (++stale >= staleLimit) {
            break;
        }
        if (frontier.empty()) break;
        current = frontier.begin()->subset;
        frontier.erase(frontier.begin());
    }

    best.subsetsEvaluated = scored.size();
    return best;
}

SelectionResult bestFirstSearch(const Dataset& d, int classAttr, size_t staleLimit,
                                size_t bins) {
    CfsEvaluator eval(d, classAttr, bins);
    return bestFirstSearch(eval, staleLimit);
}

SelectionResult exhaustiveSearch(const CfsEvaluator& eval) {
    const auto& candidates = eval.candidates();
    if (candidates.empty()) throw Error("no candidate attributes to search");
    if (candidates.size() > 20) throw Error("exhaustive search space too large");

    SelectionResult best;
    best.merit = -std::numeric_limits<double>::infinity();
    bool haveBest = false;
    const size_t total = size_t{1} << candidates.size();
    for (size_t mask = 1; mask < total; ++mask) {
        std::vector<int> subset;
        for (size_t i = 0; i < candidates.size(); ++i) {
            if (mask & (size_t{1} << i)) subset.push_back(candidates[i]);
        }
        const double m = eval.merit(subset);
        if (!haveBest || betterThan(m, subset, best.merit, best.selected)) {
            best.merit = m;
            best.selected = std::move(subset);
            haveBest = true;
        }
    }
    best.subsetsEvaluated = total - 1;
    return best;
}

} // namespace steelclust
