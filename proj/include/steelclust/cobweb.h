#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "steelclust/clustering.h"
#include "steelclust/dataset.h"

namespace steelclust {

// Running statistics of the instances under a concept node, over the active
// attributes only. Nominal slots hold per-symbol counts; numeric slots hold
// sums and sums of squares.
struct CobwebStats {
    double count = 0.0;
    std::vector<std::vector<double>> nominalCounts;
    std::vector<double> sum;
    std::vector<double> sumSq;

    void add(const CobwebStats& other);
    void remove(const CobwebStats& other);
    double mean(size_t numericSlot) const;
    double popStd(size_t numericSlot) const;
};

// CU = (1/k) * sum_k P(C_k) * sum_attr gain. Nominal gain sums
// P(v|C)^2 - P(v|parent)^2 over the domain; numeric gain is
// (1 / (2*sqrt(pi))) * (1/sigma_child - 1/sigma_parent) with every sigma
// floored at acuity.
double categoryUtility(const CobwebStats& parent, const std::vector<CobwebStats>& children,
                       double acuity);

// Incremental concept tree. Instances are shuffled once by seed and
// inserted one at a time; at each node the insert applies whichever of
// best-host / new-leaf / merge / split maximizes category utility (ties in
// that priority order). After each insert, children contributing less than
// cutoff to their parent's CU are dissolved into the parent. A node-visit
// budget aborts pathological runs with BudgetExceededError.
class CobwebTree {
public:
    struct Node {
        CobwebStats stats;
        std::vector<std::unique_ptr<Node>> children;
        // Rows resting here: leaves hold their instances, internal nodes
        // hold rows whose subtrees were pruned away.
        std::vector<size_t> ownRows;

        bool isLeaf() const { return children.empty(); }
    };

    static CobwebTree fit(const Dataset& d, double acuity = 1.0, double cutoff = 0.00282,
                          uint64_t seed = 42, size_t nodeBudget = 10000000);

    // One cluster per row-holding node, numbered in depth-first order.
    ClusterAssignment assignment() const;

    const Node* root() const { return root_.get(); }
    size_t nodeCount() const;
    size_t nodesVisited() const { return visited_; }

    // Indented text, one node per line with count and attribute summaries.
    std::string dump() const;

private:
    std::unique_ptr<Node> root_;
    std::vector<AttributeSpec> activeSchema_;
    size_t rowCount_ = 0;
    size_t visited_ = 0;
};

} // namespace steelclust
