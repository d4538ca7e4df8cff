#include "steelclust/evaluation.h"

#include <algorithm>
#include <cmath>

#include "steelclust/distance.h"
#include "steelclust/error.h"
#include "steelclust/partition.h"

namespace steelclust {

namespace {

ClusterSummary::Cell cellFor(const Dataset& d, const AttributeSpec& spec, size_t attr,
                             const std::vector<size_t>& rows) {
    ClusterSummary::Cell cell;
    cell.numeric = spec.kind == AttributeKind::Numeric;
    if (cell.numeric) {
        if (!rows.empty()) {
            double sum = 0.0;
            for (size_t row : rows) sum += d.numAt(row, attr);
            cell.mean = sum / static_cast<double>(rows.size());
            double sq = 0.0;
            for (size_t row : rows) {
                const double diff = d.numAt(row, attr) - cell.mean;
                sq += diff * diff;
            }
            cell.std = std::sqrt(sq / static_cast<double>(rows.size()));
        }
    } else {
        std::vector<size_t> counts(spec.domain.size(), 0);
        for (size_t row : rows) ++counts[static_cast<size_t>(d.rows[row][attr].sym())];
        size_t mode = 0;
        for (size_t v = 1; v < counts.size(); ++v) {
            if (counts[v] > counts[mode]) mode = v;
        }
        cell.mode = (rows.empty() || counts.empty()) ? "?" : spec.domain[mode];
    }
    return cell;
}

ClusterSummary::Column columnFor(const Dataset& d, std::string title, std::optional<int> label,
                                 const std::vector<size_t>& rows) {
    ClusterSummary::Column col;
    col.title = std::move(title);
    col.label = label;
    col.count = rows.size();
    col.percentage =
        d.n() == 0 ? 0.0 : 100.0 * static_cast<double>(rows.size()) / static_cast<double>(d.n());
    col.cells.reserve(d.schema.size());
    for (size_t attr = 0; attr < d.schema.size(); ++attr) {
        col.cells.push_back(cellFor(d, d.schema[attr], attr, rows));
    }
    return col;
}

} // namespace

double wcss(const ClusterAssignment& assignment, const Dataset& d, const Ranges& ranges) {
    if (assignment.size() != d.n()) throw Error("assignment length must match dataset size");
    const DistanceMetric metric = DistanceMetric::withRanges(d, ranges);
    const size_t clusters = assignment.clusterCount();
    double total = 0.0;
    for (size_t c = 0; c < clusters; ++c) {
        const int label = static_cast<int>(c);
        if (assignment.countOf(label) == 0) continue;
        const Instance centroid = centroidOf(d, assignment, label);
        for (size_t row = 0; row < d.n(); ++row) {
            if (assignment.labels[row] != label) continue;
            const double dist = metric(d.rows[row], centroid);
            total += dist * dist;
        }
    }
    return total;
}

ClusterSummary clusterSummary(const ClusterAssignment& assignment, const Dataset& d) {
    if (assignment.size() != d.n()) throw Error("assignment length must match dataset size");

    ClusterSummary summary;
    for (const auto& spec : d.schema) summary.attributeNames.push_back(spec.name);

    std::vector<size_t> all(d.n());
    for (size_t row = 0; row < d.n(); ++row) all[row] = row;
    summary.columns.push_back(columnFor(d, "Full Data", std::nullopt, all));

    const size_t clusters = assignment.clusterCount();
    for (size_t c = 0; c < clusters; ++c) {
        std::vector<size_t> rows;
        for (size_t row = 0; row < d.n(); ++row) {
            if (assignment.labels[row] == static_cast<int>(c)) rows.push_back(row);
        }
        summary.columns.push_back(
            columnFor(d, "Cluster#" + std::to_string(c), static_cast<int>(c), rows));
    }

    const std::pair<int, const char*> pseudo[] = {{ClusterAssignment::kNoise, "NOISE"},
                                                  {ClusterAssignment::kUndefined, "UNDEFINED"}};
    for (const auto& [label, title] : pseudo) {
        std::vector<size_t> rows;
        for (size_t row = 0; row < d.n(); ++row) {
            if (assignment.labels[row] == label) rows.push_back(row);
        }
        if (!rows.empty()) summary.columns.push_back(columnFor(d, title, label, rows));
    }
    return summary;
}

ClassesToClustersReport classesToClusters(const ClusterAssignment& assignment, const Dataset& d,
                                          int classAttr) {
    if (assignment.size() != d.n()) throw Error("assignment length must match dataset size");
    if (classAttr < 0 || static_cast<size_t>(classAttr) >= d.attributeCount()) {
        throw Error("class attribute index out of range");
    }
    const AttributeSpec& spec = d.schema[static_cast<size_t>(classAttr)];
    if (spec.kind != AttributeKind::Nominal) {
        throw Error("classes-to-clusters needs a nominal class attribute");
    }

    ClassesToClustersReport report;
    report.classNames = spec.domain;
    const size_t clusters = assignment.clusterCount();
    report.table.assign(clusters, std::vector<size_t>(spec.domain.size(), 0));

    for (size_t row = 0; row < d.n(); ++row) {
        const int label = assignment.labels[row];
        if (label < 0) {
            ++report.noiseCount;
            continue;
        }
        const auto cls = static_cast<size_t>(d.rows[row][static_cast<size_t>(classAttr)].sym());
        ++report.table[static_cast<size_t>(label)][cls];
        ++report.labeledCount;
    }

    report.majorityClass.reserve(clusters);
    for (size_t c = 0; c < clusters; ++c) {
        size_t best = 0;
        for (size_t cls = 1; cls < report.table[c].size(); ++cls) {
            if (report.table[c][cls] > report.table[c][best]) best = cls;
        }
        report.majorityClass.push_back(report.table[c].empty() ? -1 : static_cast<int>(best));
        if (!report.table[c].empty()) report.correct += report.table[c][best];
    }
    report.incorrect = report.labeledCount - report.correct;
    if (report.labeledCount > 0) {
        report.accuracyPct =
            100.0 * static_cast<double>(report.correct) / static_cast<double>(report.labeledCount);
        report.incorrectPct = 100.0 * static_cast<double>(report.incorrect) /
                              static_cast<double>(report.labeledCount);
    }
    return report;
}

} // namespace steelclust
