#include "steelclust/cobweb.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "steelclust/csv.h"
#include "steelclust/error.h"
#include "steelclust/rng.h"

namespace steelclust {

namespace {

constexpr double kHalfInvSqrtPi = 0.28209479177387814; // 1 / (2 * sqrt(pi))
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double flooredStd(const CobwebStats& stats, size_t slot, double acuity) {
    return std::max(acuity, stats.popStd(slot));
}

double childGain(const CobwebStats& parent, const CobwebStats& child, double acuity) {
    double gain = 0.0;
    for (size_t i = 0; i < child.nominalCounts.size(); ++i) {
        for (size_t v = 0; v < child.nominalCounts[i].size(); ++v) {
            const double pChild = child.nominalCounts[i][v] / child.count;
            const double pParent = parent.nominalCounts[i][v] / parent.count;
            gain += pChild * pChild - pParent * pParent;
        }
    }
    for (size_t j = 0; j < child.sum.size(); ++j) {
        gain += kHalfInvSqrtPi * (1.0 / flooredStd(child, j, acuity) -
                                  1.0 / flooredStd(parent, j, acuity));
    }
    return gain;
}

} // namespace

void CobwebStats::add(const CobwebStats& other) {
    count += other.count;
    for (size_t i = 0; i < nominalCounts.size(); ++i) {
        for (size_t v = 0; v < nominalCounts[i].size(); ++v) {
            nominalCounts[i][v] += other.nominalCounts[i][v];
        }
    }
    for (size_t j = 0; j < sum.size(); ++j) {
        sum[j] += other.sum[j];
        sumSq[j] += other.sumSq[j];
    }
}

void CobwebStats::remove(const CobwebStats& other) {
    count -= other.count;
    for (size_t i = 0; i < nominalCounts.size(); ++i) {
        for (size_t v = 0; v < nominalCounts[i].size(); ++v) {
            nominalCounts[i][v] -= other.nominalCounts[i][v];
        }
    }
    for (size_t j = 0; j < sum.size(); ++j) {
        sum[j] -= other.sum[j];
        sumSq[j] -= other.sumSq[j];
    }
}

double CobwebStats::mean(size_t numericSlot) const {
    return sum[numericSlot] / count;
}

double CobwebStats::popStd(size_t numericSlot) const {
    const double m = mean(numericSlot);
    return std::sqrt(std::max(0.0, sumSq[numericSlot] / count - m * m));
}

double categoryUtility(const CobwebStats& parent, const std::vector<CobwebStats>& children,
                       double acuity) {
    if (children.empty()) throw Error("category utility needs at least one child");
    double cu = 0.0;
    for (const auto& child : children) {
        cu += (child.count / parent.count) * childGain(parent, child, acuity);
    }
    return cu / static_cast<double>(children.size());
}

namespace {

// Mapping from active attributes to stat slots plus the insert machinery.
class Inserter {
public:
    Inserter(const Dataset& d, double acuity, double cutoff, size_t budget,
             std::vector<AttributeSpec> activeSchema)
        : data_(d),
          acuity_(acuity),
          cutoff_(cutoff),
          budget_(budget),
          activeSchema_(std::move(activeSchema)) {}

    CobwebStats statsOf(const Instance& row) const {
        CobwebStats stats;
        stats.count = 1.0;
        for (const auto& spec : activeSchema_) {
            const int attr = data_.attributeIndex(spec.name);
            const auto a = static_cast<size_t>(attr);
            if (spec.kind == AttributeKind::Nominal) {
                std::vector<double> counts(spec.domain.size(), 0.0);
                counts[static_cast<size_t>(row[a].sym())] = 1.0;
                stats.nominalCounts.push_back(std::move(counts));
            } else {
                stats.sum.push_back(row[a].num());
                stats.sumSq.push_back(row[a].num() * row[a].num());
            }
        }
        return stats;
    }

    void insert(std::unique_ptr<CobwebTree::Node>& root, size_t rowId, size_t& visited) {
        visited_ = &visited;
        const CobwebStats x = statsOf(data_.rows[rowId]);
        if (!root) {
            root = std::make_unique<CobwebTree::Node>();
            root->stats = x;
            root->ownRows.push_back(rowId);
            return;
        }
        CobwebTree::Node* node = root.get();
        node->stats.add(x);
        while (true) {
            spend(1);
            if (node->isLeaf()) {
                expandLeaf(node, x, rowId);
                prune(node);
                return;
            }
            const Decision decision = decide(node, x);
            switch (decision.op) {
            case Op::Host: {
                CobwebTree::Node* host = node->children[decision.host].get();
                host->stats.add(x);
                node = host;
                break;
            }
            case Op::Leaf: {
                auto leaf = std::make_unique<CobwebTree::Node>();
                leaf->stats = x;
                leaf->ownRows.push_back(rowId);
                node->children.push_back(std::move(leaf));
                prune(node);
                return;
            }
            case Op::Merge: {
                CobwebTree::Node* merged = mergeChildren(node, decision.host, decision.second);
                merged->stats.add(x);
                node = merged;
                break;
            }
            case Op::Split:
                splitChild(node, decision.host);
                break;
            }
        }
    }

private:
    enum class Op { Host, Leaf, Merge, Split };
    struct Decision {
        Op op = Op::Host;
        size_t host = 0;
        size_t second = 0;
    };

    void spend(size_t visits) {
        *visited_ += visits;
        if (*visited_ > budget_) {
            throw BudgetExceededError("node-visit budget exhausted after " +
                                      std::to_string(budget_) + " visits");
        }
    }

    double partitionCu(const CobwebStats& parent, const std::vector<CobwebStats>& children) {
        spend(children.size());
        return categoryUtility(parent, children, acuity_);
    }

    std::vector<CobwebStats> childStats(const CobwebTree::Node* node) const {
        std::vector<CobwebStats> stats;
        stats.reserve(node->children.size());
        for (const auto& child : node->children) stats.push_back(child->stats);
        return stats;
    }

    // Best child to absorb x, judged by the partition CU with x added there.
    std::pair<size_t, double> bestHost(const CobwebStats& parent,
                                       const std::vector<CobwebStats>& children,
                                       const CobwebStats& x, double* secondBestCu = nullptr,
                                       size_t* secondBestIdx = nullptr) {
        size_t best = 0;
        double bestCu = kNegInf;
        double secondCu = kNegInf;
        size_t secondIdx = 0;
        std::vector<CobwebStats> working = children;
        for (size_t i = 0; i < children.size(); ++i) {
            working[i].add(x);
            const double cu = partitionCu(parent, working);
            working[i] = children[i];
            if (cu > bestCu) {
                secondCu = bestCu;
                secondIdx = best;
                bestCu = cu;
                best = i;
            } else if (cu > secondCu) {
                secondCu = cu;
                secondIdx = i;
            }
        }
        if (secondBestCu) *secondBestCu = secondCu;
        if (secondBestIdx) *secondBestIdx = secondIdx;
        return {best, bestCu};
    }

    Decision decide(CobwebTree::Node* node, const CobwebStats& x) {
        const auto children = childStats(node);
        double secondCu = kNegInf;
        size_t secondIdx = 0;
        const auto [hostIdx, hostCu] = bestHost(node->stats, children, x, &secondCu, &secondIdx);

        std::vector<CobwebStats> withLeaf = children;
        withLeaf.push_back(x);
        const double leafCu = partitionCu(node->stats, withLeaf);

        double mergeCu = kNegInf;
        if (children.size() >= 2) {
            std::vector<CobwebStats> mergedSet;
            mergedSet.reserve(children.size() - 1);
            CobwebStats merged = children[hostIdx];
            merged.add(children[secondIdx]);
            merged.add(x);
            mergedSet.push_back(merged);
            for (size_t i = 0; i < children.size(); ++i) {
                if (i != hostIdx && i != secondIdx) mergedSet.push_back(children[i]);
            }
            mergeCu = partitionCu(node->stats, mergedSet);
        }

        double splitCu = kNegInf;
        if (!node->children[hostIdx]->isLeaf()) {
            std::vector<CobwebStats> splitSet;
            for (size_t i = 0; i < children.size(); ++i) {
                if (i != hostIdx) splitSet.push_back(children[i]);
            }
            for (const auto& grandchild : node->children[hostIdx]->children) {
                splitSet.push_back(grandchild->stats);
            }
            splitCu = bestHost(node->stats, splitSet, x).second;
        }

        const double top = std::max({hostCu, leafCu, mergeCu, splitCu});
        Decision decision;
        if (hostCu >= top) {
            decision.op = Op::Host;
            decision.host = hostIdx;
        } else if (leafCu >= top) {
            decision.op = Op::Leaf;
        } else if (mergeCu >= top) {
            decision.op = Op::Merge;
            decision.host = std::min(hostIdx, secondIdx);
            decision.second = std::max(hostIdx, secondIdx);
        } else {
            decision.op = Op::Split;
            decision.host = hostIdx;
        }
        return decision;
    }

    void expandLeaf(CobwebTree::Node* node, const CobwebStats& x, size_t rowId) {
        auto occupant = std::make_unique<CobwebTree::Node>();
        occupant->stats = node->stats;
        occupant->stats.remove(x);
        occupant->ownRows = std::move(node->ownRows);
        node->ownRows.clear();

        auto fresh = std::make_unique<CobwebTree::Node>();
        fresh->stats = x;
        fresh->ownRows.push_back(rowId);

        node->children.push_back(std::move(occupant));
        node->children.push_back(std::move(fresh));
    }

    CobwebTree::Node* mergeChildren(CobwebTree::Node* node, size_t first, size_t second) {
        auto merged = std::make_unique<CobwebTree::Node>();
        merged->stats = node->children[first]->stats;
        merged->stats.add(node->children[second]->stats);
        merged->children.push_back(std::move(node->children[first]));
        merged->children.push_back(std::move(node->children[second]));
        node->children[first] = std::move(merged);
        node->children.erase(node->children.begin() + static_cast<long>(second));
        return node->children[first].get();
    }

    void splitChild(CobwebTree::Node* node, size_t idx) {
        auto victim = std::move(node->children[idx]);
        node->children.erase(node->children.begin() + static_cast<long>(idx));
        for (size_t row : victim->ownRows) node->ownRows.push_back(row);
        for (auto& grandchild : victim->children) {
            node->children.insert(node->children.begin() + static_cast<long>(idx),
                                  std::move(grandchild));
            ++idx;
        }
    }

    void gatherRows(CobwebTree::Node* node, std::vector<size_t>& rows) const {
        for (size_t row : node->ownRows) rows.push_back(row);
        for (const auto& child : node->children) gatherRows(child.get(), rows);
    }

    // Dissolves children whose CU contribution falls below the cutoff, then
    // collapses a lone surviving child into the node.
    void prune(CobwebTree::Node* node) {
        if (node->children.empty()) return;
        const auto k = static_cast<double>(node->children.size());
        std::vector<std::unique_ptr<CobwebTree::Node>> kept;
        for (auto& child : node->children) {
            spend(1);
            const double contribution =
                (child->stats.count / node->stats.count) *
                childGain(node->stats, child->stats, acuity_) / k;
            if (contribution < cutoff_) {
                gatherRows(child.get(), node->ownRows);
            } else {
                kept.push_back(std::move(child));
            }
        }
        node->children = std::move(kept);
        if (node->children.size() == 1) {
            auto child = std::move(node->children.front());
            node->children.clear();
            for (size_t row : child->ownRows) node->ownRows.push_back(row);
            node->children = std::move(child->children);
        }
    }

    const Dataset& data_;
    double acuity_;
    double cutoff_;
    size_t budget_;
    std::vector<AttributeSpec> activeSchema_;
    size_t* visited_ = nullptr;
};

void dumpNode(const CobwebTree::Node* node, const std::vector<AttributeSpec>& schema,
              size_t depth, std::string& out) {
    out.append(2 * depth, ' ');
    out += "node count=" + formatDouble(node->stats.count);
    if (!node->ownRows.empty()) {
        out += " holds=" + std::to_string(node->ownRows.size());
    }
    size_t nominalSlot = 0;
    size_t numericSlot = 0;
    for (const auto& spec : schema) {
        out += ' ';
        out += spec.name;
        out += '=';
        if (spec.kind == AttributeKind::Nominal) {
            const auto& counts = node->stats.nominalCounts[nominalSlot++];
            size_t mode = 0;
            for (size_t v = 1; v < counts.size(); ++v) {
                if (counts[v] > counts[mode]) mode = v;
            }
            out += counts.empty() ? "?" : spec.domain[mode];
        } else {
            out += formatDouble(node->stats.mean(numericSlot));
            out += "±";
            out += formatDouble(node->stats.popStd(numericSlot));
            ++numericSlot;
        }
    }
    out += '\n';
    for (const auto& child : node->children) {
        dumpNode(child.get(), schema, depth + 1, out);
    }
}

size_t countNodes(const CobwebTree::Node* node) {
    size_t total = 1;
    for (const auto& child : node->children) total += countNodes(child.get());
    return total;
}

void collectClusters(const CobwebTree::Node* node, std::vector<int>& labels, int& next) {
    if (!node->ownRows.empty()) {
        for (size_t row : node->ownRows) labels[row] = next;
        ++next;
    }
    for (const auto& child : node->children) collectClusters(child.get(), labels, next);
}

} // namespace

CobwebTree CobwebTree::fit(const Dataset& d, double acuity, double cutoff, uint64_t seed,
                           size_t nodeBudget) {
    if (!(acuity > 0.0)) throw Error("acuity must be positive");
    if (cutoff < 0.0) throw Error("cutoff must be nonnegative");

    CobwebTree tree;
    tree.rowCount_ = d.n();
    for (int attr : d.activeAttributes()) {
        tree.activeSchema_.push_back(d.schema[static_cast<size_t>(attr)]);
    }
    Inserter inserter(d, acuity, cutoff, nodeBudget, tree.activeSchema_);

    std::vector<size_t> order(d.n());
    std::iota(order.begin(), order.end(), size_t{0});
    Rng rng = Rng::stream(seed, "cobweb-order");
    rng.shuffle(order);

    for (size_t row : order) {
        inserter.insert(tree.root_, row, tree.visited_);
    }
    return tree;
}

ClusterAssignment CobwebTree::assignment() const {
    ClusterAssignment out;
    out.labels.assign(rowCount_, ClusterAssignment::kNoise);
    if (root_) {
        int next = 0;
        collectClusters(root_.get(), out.labels, next);
    }
    return out;
}

size_t CobwebTree::nodeCount() const {
    return root_ ? countNodes(root_.get()) : 0;
}

std::string CobwebTree::dump() const {
    if (!root_) return "(empty tree)\n";
    std::string out;
    dumpNode(root_.get(), activeSchema_, 0, out);
    return out;
}

} // namespace steelclust
