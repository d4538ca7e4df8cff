#include "steelclust/pipeline.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <utility>

#include <json.hpp>

#include "steelclust/aggregate.h"
#include "steelclust/cobweb.h"
#include "steelclust/csv.h"
#include "steelclust/density.h"
#include "steelclust/distance.h"
#include "steelclust/em.h"
#include "steelclust/manifest.h"
#include "steelclust/partition.h"
#include "steelclust/sampling.h"
#include "steelclust/svg_plot.h"

namespace steelclust {

namespace {

using nlohmann::json;

// Machine-file precision.
std::string fmt9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

// Human-table precision.
std::string fmt4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

std::string sanitizeName(const std::string& name) {
    std::string out;
    out.reserve(name.size());
    for (char c : name) {
        const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
        out += keep ? c : '_';
    }
    return out;
}

// Left-aligned columns separated by two spaces; no trailing padding.
std::string renderAlignedTable(const std::vector<std::vector<std::string>>& rows) {
    std::vector<size_t> widths;
    for (const auto& row : rows) {
        if (row.size() > widths.size()) widths.resize(row.size(), 0);
        for (size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
    }
    std::string out;
    for (const auto& row : rows) {
        std::string line;
        for (size_t c = 0; c < row.size(); ++c) {
            line += row[c];
            if (c + 1 < row.size()) line.append(widths[c] - row[c].size() + 2, ' ');
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line;
        out += '\n';
    }
    return out;
}

std::string joinFmt9(const std::vector<double>& values) {
    std::string out;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ' ';
        out += fmt9(values[i]);
    }
    return out;
}

std::string modelHeader(const std::string& algo) {
    return "steelclust model v1\nalgorithm: " + algo + "\n";
}

std::string centroidLines(const Dataset& d, const std::vector<Instance>& centroids) {
    std::string out;
    for (size_t c = 0; c < centroids.size(); ++c) {
        out += "centroid " + std::to_string(c) + ":";
        for (size_t attr = 0; attr < d.schema.size(); ++attr) {
            const AttributeSpec& spec = d.schema[attr];
            out += '\t';
            out += spec.name;
            out += '=';
            if (spec.kind == AttributeKind::Numeric) {
                out += fmt9(centroids[c][attr].num());
            } else {
                out += spec.domain[static_cast<size_t>(centroids[c][attr].sym())];
            }
        }
        out += '\n';
    }
    return out;
}

std::string partitionModelText(const Dataset& d, const std::string& algo,
                               const PartitionModel& model, uint64_t seed) {
    std::string out = modelHeader(algo);
    out += "k: " + std::to_string(model.k) + "\n";
    out += "seed: " + std::to_string(seed) + "\n";
    out += "iterations: " + std::to_string(model.iterationsRun) + "\n";
    out += "wcss: " + fmt9(model.wcss) + "\n";
    out += "wcss_history: " + joinFmt9(model.wcssHistory) + "\n";
    if (!model.centerRows.empty()) {
        out += "centers:";
        for (size_t row : model.centerRows) out += ' ' + std::to_string(row);
        out += '\n';
    }
    out += centroidLines(d, model.centroids);
    return out;
}

std::string emModelText(const Dataset& d, const MixtureModel& model, uint64_t seed) {
    std::string out = modelHeader("em");
    out += "k: " + std::to_string(model.k) + "\n";
    out += "seed: " + std::to_string(seed) + "\n";
    out += "iterations: " + std::to_string(model.iterationsRun) + "\n";
    out += "avg_log_likelihood: " + fmt9(model.avgLogLikelihood) + "\n";
    out += "ll_history: " + joinFmt9(model.llHistory) + "\n";
    const auto& components = model.params.components();
    for (size_t c = 0; c < components.size(); ++c) {
        out += "component " + std::to_string(c) + ":\n";
        out += "\tprior=" + fmt9(components[c].prior) + "\n";
        for (int attr : model.params.activeAttributes()) {
            const auto a = static_cast<size_t>(attr);
            const AttributeSpec& spec = d.schema[a];
            if (spec.kind == AttributeKind::Numeric) {
                out += '\t' + spec.name + ": mean=" + fmt9(components[c].means[a]) +
                       " std=" + fmt9(components[c].stds[a]) + "\n";
            } else {
                out += '\t' + spec.name + ":";
                for (size_t v = 0; v < spec.domain.size(); ++v) {
                    out += " p[" + spec.domain[v] + "]=" + fmt9(components[c].discrete[a][v]);
                }
                out += '\n';
            }
        }
    }
    return out;
}

json metricsJson(const MetricsReport& m) {
    return {
        {"correlation_coefficient", m.correlationCoefficient},
        {"mean_absolute_error", m.meanAbsoluteError},
        {"root_mean_squared_error", m.rootMeanSquaredError},
        {"relative_absolute_error_pct", m.relativeAbsoluteErrorPct},
        {"root_relative_squared_error_pct", m.rootRelativeSquaredErrorPct},
        {"n_instances", m.nInstances},
    };
}

long long roundedPercent(double pct) {
    return std::llround(pct);
}

} // namespace

ArtifactWriter::ArtifactWriter(std::filesystem::path outDir) : dir_(std::move(outDir)) {
    std::filesystem::create_directories(dir_);
}

void ArtifactWriter::writeText(const std::string& rel, const std::string& text) {
    std::ofstream out(dir_ / rel, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write artifact " + (dir_ / rel).string());
    out << text;
    if (!out) throw Error("failed writing artifact " + (dir_ / rel).string());
    if (std::find(written_.begin(), written_.end(), rel) == written_.end()) {
        written_.push_back(rel);
    }
}

void ArtifactWriter::writeDataset(const std::string& rel, const Dataset& d) {
    writeCsvFile(d, dir_ / rel);
    writeSchemaFile(d, dir_ / (rel + ".schema"));
    for (const std::string& name : {rel, rel + ".schema"}) {
        if (std::find(written_.begin(), written_.end(), name) == written_.end()) {
            written_.push_back(name);
        }
    }
}

void ArtifactWriter::finishManifest() {
    writeManifest(dir_, written_);
}

ClusterRun runClusterAlgorithm(const Dataset& d, const ClusterOptions& opts) {
    ClusterRun run;
    run.algo = opts.algo;
    if (opts.algo == "kmeans" || opts.algo == "farthest-first") {
        const size_t k = opts.k.value_or(2);
        const PartitionResult result = opts.algo == "kmeans"
                                           ? kmeans(d, k, opts.seed)
                                           : farthestFirst(d, k, opts.seed);
        run.assignment = result.assignment;
        run.modelText = partitionModelText(d, opts.algo, result.model, opts.seed);
    } else if (opts.algo == "em") {
        const EmResult result = opts.k ? emFit(d, *opts.k, opts.seed)
                                       : emSelectK(d, opts.seed, opts.folds);
        run.assignment = result.assignment;
        run.modelText = emModelText(d, result.model, opts.seed);
    } else if (opts.algo == "dbscan") {
        run.assignment = dbscan(d, opts.eps, opts.minPoints);
        std::string out = modelHeader("dbscan");
        out += "eps: " + fmt9(opts.eps) + "\n";
        out += "min_points: " + std::to_string(opts.minPoints) + "\n";
        out += "clusters: " + std::to_string(run.assignment.clusterCount()) + "\n";
        out += "noise: " + std::to_string(run.assignment.countOf(ClusterAssignment::kNoise)) +
               "\n";
        run.modelText = std::move(out);
    } else if (opts.algo == "optics") {
        const OpticsOrdering ordering = optics(d, opts.eps, opts.minPoints);
        run.assignment = opticsExtract(ordering, opts.eps);
        run.reachability = reachabilityPlotData(ordering);
        std::string out = modelHeader("optics");
        out += "eps: " + fmt9(opts.eps) + "\n";
        out += "min_points: " + std::to_string(opts.minPoints) + "\n";
        out += "extract_eps: " + fmt9(opts.eps) + "\n";
        out += "order:";
        for (size_t row : ordering.order) out += ' ' + std::to_string(row);
        out += '\n';
        run.modelText = std::move(out);
    } else if (opts.algo == "cobweb") {
        const CobwebTree tree = CobwebTree::fit(d, opts.acuity, opts.cutoff, opts.seed);
        run.assignment = tree.assignment();
        std::string out = modelHeader("cobweb");
        out += "acuity: " + fmt9(opts.acuity) + "\n";
        out += "cutoff: " + fmt9(opts.cutoff) + "\n";
        out += "seed: " + std::to_string(opts.seed) + "\n";
        out += "nodes: " + std::to_string(tree.nodeCount()) + "\n";
        out += "clusters: " + std::to_string(run.assignment.clusterCount()) + "\n";
        out += "tree:\n";
        out += tree.dump();
        run.modelText = std::move(out);
    } else if (opts.algo == "agglomerative") {
        const AgglomerativeResult result = agglomerative(d, opts.linkage, opts.k.value_or(2));
        run.assignment = result.assignment;
        std::string out = modelHeader("agglomerative");
        out += "linkage: " + linkageName(opts.linkage) + "\n";
        out += "k: " + std::to_string(opts.k.value_or(2)) + "\n";
        out += "merges:\n";
        for (const auto& merge : result.dendrogram.merges) {
            out += std::to_string(merge.left) + "\t" + std::to_string(merge.right) + "\t" +
                   fmt9(merge.height) + "\n";
        }
        run.modelText = std::move(out);
    } else {
        throw Error("unknown algorithm '" + opts.algo + "'");
    }
    return run;
}

BaselineReport baselineReport(const Dataset& d, size_t folds, uint64_t seed) {
    BaselineReport report;
    report.folds = folds;
    report.seed = seed;
    for (size_t attr = 0; attr < d.schema.size(); ++attr) {
        if (d.schema[attr].kind != AttributeKind::Numeric) continue;
        BaselineReport::Entry entry;
        entry.attribute = d.schema[attr].name;
        entry.metrics = crossValidateZeroR(d, static_cast<int>(attr), folds, seed);
        report.entries.push_back(std::move(entry));
    }
    return report;
}

std::string renderBaselineText(const BaselineReport& report) {
    std::string out = "ZeroR baseline, " + std::to_string(report.folds) +
                      "-fold cross-validation, seed " + std::to_string(report.seed) + "\n";
    if (report.entries.empty()) {
        out += "\nNo numeric attributes.\n";
        return out;
    }
    for (const auto& entry : report.entries) {
        const MetricsReport& m = entry.metrics;
        out += "\nTarget: " + entry.attribute + "\n";
        std::vector<std::vector<std::string>> rows = {
            {"  Correlation coefficient", fmt4(m.correlationCoefficient)},
            {"  Mean absolute error", fmt4(m.meanAbsoluteError)},
            {"  Root mean squared error", fmt4(m.rootMeanSquaredError)},
            {"  Relative absolute error", fmt4(m.relativeAbsoluteErrorPct) + " %"},
            {"  Root relative squared error", fmt4(m.rootRelativeSquaredErrorPct) + " %"},
            {"  Total number of instances", std::to_string(m.nInstances)},
        };
        out += renderAlignedTable(rows);
        if (m.degenerateBaseline) {
            out += "  (relative errors reported as 100: the mean baseline had zero error)\n";
        }
    }
    return out;
}

std::string renderBaselineJson(const BaselineReport& report) {
    json targets = json::array();
    for (const auto& entry : report.entries) {
        targets.push_back({
            {"attribute", entry.attribute},
            {"degenerate_baseline", entry.metrics.degenerateBaseline},
            {"metrics", metricsJson(entry.metrics)},
        });
    }
    const json doc = {{"folds", report.folds}, {"seed", report.seed}, {"targets", targets}};
    return doc.dump(2) + "\n";
}

std::string renderSummaryText(const ClusterSummary& summary, const std::string& algo) {
    const size_t n = summary.columns.empty() ? 0 : summary.columns.front().count;
    size_t clusters = 0;
    for (const auto& col : summary.columns) {
        if (col.label && *col.label >= 0) ++clusters;
    }
    std::string out = "Cluster summary\n";
    out += "Algorithm: " + algo + "\n";
    out += "Instances: " + std::to_string(n) + "\n";
    out += "Clusters: " + std::to_string(clusters) + "\n\n";

    std::vector<std::vector<std::string>> counts = {{"Column", "Count", "Percent"}};
    for (const auto& col : summary.columns) {
        counts.push_back({col.title, std::to_string(col.count),
                          std::to_string(roundedPercent(col.percentage)) + "%"});
    }
    out += renderAlignedTable(counts);
    out += '\n';

    std::vector<std::vector<std::string>> stats;
    std::vector<std::string> header = {"Attribute", "Stat"};
    for (const auto& col : summary.columns) header.push_back(col.title);
    stats.push_back(std::move(header));
    for (size_t attr = 0; attr < summary.attributeNames.size(); ++attr) {
        const bool numeric = summary.columns.front().cells[attr].numeric;
        if (numeric) {
            std::vector<std::string> meanRow = {summary.attributeNames[attr], "mean"};
            std::vector<std::string> stdRow = {"", "std"};
            for (const auto& col : summary.columns) {
                meanRow.push_back(fmt4(col.cells[attr].mean));
                stdRow.push_back(fmt4(col.cells[attr].std));
            }
            stats.push_back(std::move(meanRow));
            stats.push_back(std::move(stdRow));
        } else {
            std::vector<std::string> modeRow = {summary.attributeNames[attr], "mode"};
            for (const auto& col : summary.columns) modeRow.push_back(col.cells[attr].mode);
            stats.push_back(std::move(modeRow));
        }
    }
    out += renderAlignedTable(stats);
    return out;
}

std::string renderSummaryJson(const ClusterSummary& summary, const std::string& algo,
                              std::optional<double> wcssValue) {
    json columns = json::array();
    for (const auto& col : summary.columns) {
        json attributes = json::object();
        for (size_t attr = 0; attr < summary.attributeNames.size(); ++attr) {
            const auto& cell = col.cells[attr];
            if (cell.numeric) {
                attributes[summary.attributeNames[attr]] = {{"mean", cell.mean},
                                                            {"std", cell.std}};
            } else {
                attributes[summary.attributeNames[attr]] = {{"mode", cell.mode}};
            }
        }
        json c = {{"title", col.title},
                  {"count", col.count},
                  {"percentage", col.percentage},
                  {"attributes", attributes}};
        if (col.label) {
            c["label"] = *col.label;
        } else {
            c["label"] = nullptr;
        }
        columns.push_back(std::move(c));
    }
    size_t clusters = 0;
    for (const auto& col : summary.columns) {
        if (col.label && *col.label >= 0) ++clusters;
    }
    json doc = {
        {"algorithm", algo},
        {"n", summary.columns.empty() ? 0 : summary.columns.front().count},
        {"clusters", clusters},
        {"columns", columns},
    };
    if (wcssValue) doc["wcss"] = *wcssValue;
    return doc.dump(2) + "\n";
}

std::string renderEvaluationText(const ClassesToClustersReport& report,
                                 const std::string& classAttr) {
    std::string out = "Classes to clusters evaluation\n";
    out += "Class attribute: " + classAttr + "\n\n";

    std::vector<std::vector<std::string>> table;
    std::vector<std::string> header = {""};
    for (const auto& name : report.classNames) header.push_back(name);
    table.push_back(std::move(header));
    for (size_t c = 0; c < report.table.size(); ++c) {
        std::vector<std::string> row = {"Cluster " + std::to_string(c)};
        for (size_t cls = 0; cls < report.table[c].size(); ++cls) {
            row.push_back(std::to_string(report.table[c][cls]));
        }
        table.push_back(std::move(row));
    }
    out += renderAlignedTable(table);
    out += '\n';

    for (size_t c = 0; c < report.majorityClass.size(); ++c) {
        const int cls = report.majorityClass[c];
        out += "Cluster " + std::to_string(c) + " -> " +
               (cls >= 0 ? report.classNames[static_cast<size_t>(cls)] : "?") + "\n";
    }
    out += '\n';

    std::vector<std::vector<std::string>> tallies = {
        {"Labeled instances", std::to_string(report.labeledCount), ""},
        {"Excluded (noise)", std::to_string(report.noiseCount), ""},
        {"Correctly clustered", std::to_string(report.correct),
         fmt4(report.accuracyPct) + " %"},
        {"Incorrectly clustered", std::to_string(report.incorrect),
         fmt4(report.incorrectPct) + " %"},
    };
    out += renderAlignedTable(tallies);
    return out;
}

std::string renderEvaluationJson(const ClassesToClustersReport& report,
                                 const std::string& classAttr) {
    json mapping = json::array();
    for (int cls : report.majorityClass) {
        if (cls >= 0) {
            mapping.push_back(report.classNames[static_cast<size_t>(cls)]);
        } else {
            mapping.push_back(nullptr);
        }
    }
    const json doc = {
        {"class_attribute", classAttr},
        {"classes", report.classNames},
        {"table", report.table},
        {"mapping", mapping},
        {"labeled", report.labeledCount},
        {"noise_excluded", report.noiseCount},
        {"correct", report.correct},
        {"incorrect", report.incorrect},
        {"accuracy_pct", report.accuracyPct},
        {"incorrect_pct", report.incorrectPct},
    };
    return doc.dump(2) + "\n";
}

std::string renderSelectionText(const Dataset& d, const SelectionResult& result) {
    std::string out;
    for (int attr : result.selected) {
        out += d.schema[static_cast<size_t>(attr)].name + "\n";
    }
    return out;
}

std::string renderSelectionJson(const Dataset& d, const SelectionResult& result) {
    json selected = json::array();
    for (int attr : result.selected) {
        selected.push_back(d.schema[static_cast<size_t>(attr)].name);
    }
    const json doc = {
        {"selected", selected},
        {"merit", result.merit},
        {"subsets_evaluated", result.subsetsEvaluated},
    };
    return doc.dump(2) + "\n";
}

std::string renderAssignmentsCsv(const ClusterAssignment& assignment) {
    std::string out = "row_index,label\n";
    for (size_t row = 0; row < assignment.labels.size(); ++row) {
        out += std::to_string(row) + "," + std::to_string(assignment.labels[row]) + "\n";
    }
    return out;
}

int resolveClassAttr(Dataset& d, const std::string& name) {
    const int idx = d.attributeIndexCaseless(name);
    if (idx < 0) throw Error("class attribute '" + name + "' not found");
    d.classIndex = idx;
    return idx;
}

Dataset stageGenerate(ArtifactWriter& w, const GeneratorConfig& cfg) {
    Dataset d = generateSales(cfg);
    w.writeDataset("sales.csv", d);
    w.writeText("generator_config.json", generatorConfigToJson(cfg));
    return d;
}

Dataset stageAggregate(ArtifactWriter& w, const Dataset& raw) {
    Dataset aggregated = aggregateSales(raw);
    w.writeDataset("aggregated.csv", aggregated);
    return aggregated;
}

void stageBaseline(ArtifactWriter& w, const Dataset& d, size_t folds, uint64_t seed) {
    const BaselineReport report = baselineReport(d, folds, seed);
    w.writeText("baseline_report.txt", renderBaselineText(report));
    w.writeText("baseline_report.json", renderBaselineJson(report));
}

SelectionResult stageSelectFeatures(ArtifactWriter& w, const Dataset& d, int classAttr,
                                    size_t staleLimit, size_t bins) {
    const SelectionResult result = bestFirstSearch(d, classAttr, staleLimit, bins);
    w.writeText("selected_features.txt", renderSelectionText(d, result));
    w.writeText("selection.json", renderSelectionJson(d, result));
    return result;
}

ClusterRun stageCluster(ArtifactWriter& w, const Dataset& d, const ClusterOptions& opts) {
    ClusterRun run = runClusterAlgorithm(d, opts);
    w.writeText("model.txt", run.modelText);
    w.writeText("assignments.csv", renderAssignmentsCsv(run.assignment));
    if (run.reachability) w.writeText("reachability.txt", *run.reachability);
    const ClusterSummary summary = clusterSummary(run.assignment, d);
    const double dispersion = wcss(run.assignment, d, computeRanges(d));
    w.writeText("cluster_summary.txt", renderSummaryText(summary, run.algo));
    w.writeText("summary.json", renderSummaryJson(summary, run.algo, dispersion));
    return run;
}

void stageEvaluate(ArtifactWriter& w, const ClusterRun& run, const Dataset& d, int classAttr) {
    const ClassesToClustersReport report = classesToClusters(run.assignment, d, classAttr);
    const std::string& name = d.schema[static_cast<size_t>(classAttr)].name;
    w.writeText("evaluation.txt", renderEvaluationText(report, name));
    w.writeText("evaluation.json", renderEvaluationJson(report, name));
}

void stagePlot(ArtifactWriter& w, const Dataset& d, const std::string& xName,
               const std::string& yName, const ClusterAssignment& assignment) {
    const int x = d.attributeIndexCaseless(xName);
    if (x < 0) throw Error("plot attribute '" + xName + "' not found");
    const int y = d.attributeIndexCaseless(yName);
    if (y < 0) throw Error("plot attribute '" + yName + "' not found");
    const std::string rel = "plot_" + sanitizeName(d.schema[static_cast<size_t>(x)].name) +
                            "_" + sanitizeName(d.schema[static_cast<size_t>(y)].name) + ".svg";
    w.writeText(rel, scatterSvg(d, x, y, assignment));
}

namespace {

template <typename F>
decltype(auto) guard(const char* stage, F&& f) {
    try {
        return std::forward<F>(f)();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(stage, e.what());
    }
}

} // namespace

void runPipeline(const PipelineConfig& cfg) {
    guard("configure", [&] {
        if (cfg.inputPath.has_value() == cfg.generator.has_value()) {
            throw Error("exactly one data source (input file or generator config) is required");
        }
        if (!(cfg.trainFraction > 0.0 && cfg.trainFraction <= 1.0)) {
            throw Error("train fraction must lie in (0, 1]");
        }
        if (cfg.selectFeatures && !cfg.classAttr && !cfg.generator) {
            throw Error("feature selection needs a class attribute");
        }
        const char* known[] = {"kmeans",         "em",     "dbscan",       "optics",
                               "cobweb",         "farthest-first",         "agglomerative"};
        if (std::find(std::begin(known), std::end(known), cfg.cluster.algo) ==
            std::end(known)) {
            throw Error("unknown algorithm '" + cfg.cluster.algo + "'");
        }
    });

    ArtifactWriter writer(cfg.outDir);

    Dataset d = cfg.generator
                    ? guard("generate", [&] { return stageGenerate(writer, *cfg.generator); })
                    : guard("ingest", [&] { return loadCsv(*cfg.inputPath); });

    if (cfg.aggregate) {
        d = guard("aggregate", [&] { return stageAggregate(writer, d); });
    }

    int classIdx = -1;
    guard("configure", [&] {
        if (cfg.classAttr) {
            classIdx = resolveClassAttr(d, *cfg.classAttr);
        } else if (d.classIndex) {
            classIdx = *d.classIndex;
        }
    });

    guard("baseline", [&] { stageBaseline(writer, d, cfg.folds, cfg.seed); });

    if (cfg.selectFeatures) {
        guard("select-features", [&] {
            if (classIdx < 0) throw Error("feature selection needs a class attribute");
            const SelectionResult sel =
                stageSelectFeatures(writer, d, classIdx, cfg.staleLimit, cfg.bins);
            std::vector<int> keep = sel.selected;
            keep.push_back(classIdx);
            d = projectAttributes(d, keep);
            classIdx = d.classIndex.value();
        });
    }

    Dataset train = d;
    if (cfg.trainFraction < 1.0) {
        guard("split", [&] {
            Rng rng = Rng::stream(cfg.seed, "train-test-split");
            const TrainTestSplit split = splitTrainTest(d.n(), cfg.trainFraction, rng);
            train = selectRows(d, split.trainRows);
            writer.writeDataset("train.csv", train);
            writer.writeDataset("holdout.csv", selectRows(d, split.testRows));
        });
    }

    ClusterOptions opts = cfg.cluster;
    opts.seed = cfg.seed;
    opts.folds = cfg.folds;
    const ClusterRun run =
        guard("cluster", [&] { return stageCluster(writer, train, opts); });

    if (classIdx >= 0) {
        guard("evaluate", [&] { stageEvaluate(writer, run, train, classIdx); });
    }

    for (const auto& [xName, yName] : cfg.plots) {
        guard("plot", [&] { stagePlot(writer, train, xName, yName, run.assignment); });
    }

    guard("manifest", [&] { writer.finishManifest(); });
}

} // namespace steelclust
