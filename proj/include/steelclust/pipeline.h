#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "steelclust/agglomerative.h"
#include "steelclust/baseline.h"
#include "steelclust/clustering.h"
#include "steelclust/dataset.h"
#include "steelclust/error.h"
#include "steelclust/evaluation.h"
#include "steelclust/feature_selection.h"
#include "steelclust/generator.h"

namespace steelclust {

// A stage failure, carrying the stage name for the diagnostic stream.
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& cause)
        : Error(stage + ": " + cause), stage_(std::move(stage)) {}

    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

// Collects the artifacts a run writes so the closing manifest covers exactly
// those files. Text goes out in binary mode with LF endings, keeping
// artifact bytes platform-independent.
class ArtifactWriter {
public:
    explicit ArtifactWriter(std::filesystem::path outDir);

    void writeText(const std::string& rel, const std::string& text);
    // CSV plus a typing sidecar "<rel>.schema".
    void writeDataset(const std::string& rel, const Dataset& d);

    const std::filesystem::path& dir() const { return dir_; }
    const std::vector<std::string>& written() const { return written_; }

    // Writes manifest.txt over everything recorded so far.
    void finishManifest();

private:
    std::filesystem::path dir_;
    std::vector<std::string> written_;
};

// Algorithm selection plus every tunable the CLI exposes. An empty k means
// "not given": EM then picks k by cross-validated likelihood and the other
// k-consuming algorithms fall back to 2.
struct ClusterOptions {
    std::string algo = "kmeans";
    std::optional<size_t> k;
    double eps = 0.9;
    size_t minPoints = 6;
    double acuity = 1.0;
    double cutoff = 0.00282;
    Linkage linkage = Linkage::Single;
    uint64_t seed = 42;
    size_t folds = 10;  // EM k-selection cross-validation
};

struct ClusterRun {
    std::string algo;
    ClusterAssignment assignment;
    std::string modelText;
    std::optional<std::string> reachability;  // OPTICS plot data
};

// Dispatches to the chosen algorithm; the class attribute (when marked)
// stays out of every distance and density.
ClusterRun runClusterAlgorithm(const Dataset& d, const ClusterOptions& opts);

// ZeroR cross-validation over every numeric attribute.
struct BaselineReport {
    struct Entry {
        std::string attribute;
        MetricsReport metrics;
    };
    size_t folds = 10;
    uint64_t seed = 42;
    std::vector<Entry> entries;
};

BaselineReport baselineReport(const Dataset& d, size_t folds, uint64_t seed);

std::string renderBaselineText(const BaselineReport& report);
std::string renderBaselineJson(const BaselineReport& report);
std::string renderSummaryText(const ClusterSummary& summary, const std::string& algo);
std::string renderSummaryJson(const ClusterSummary& summary, const std::string& algo,
                              std::optional<double> wcssValue);
std::string renderEvaluationText(const ClassesToClustersReport& report,
                                 const std::string& classAttr);
std::string renderEvaluationJson(const ClassesToClustersReport& report,
                                 const std::string& classAttr);
std::string renderSelectionText(const Dataset& d, const SelectionResult& result);
std::string renderSelectionJson(const Dataset& d, const SelectionResult& result);
std::string renderAssignmentsCsv(const ClusterAssignment& assignment);

// Marks the named attribute (matched case-insensitively) as the class.
int resolveClassAttr(Dataset& d, const std::string& name);

// Stage helpers shared by the single-purpose subcommands and the pipeline.
// Each writes its artifacts through the writer and returns what downstream
// stages need.
Dataset stageGenerate(ArtifactWriter& w, const GeneratorConfig& cfg);
Dataset stageAggregate(ArtifactWriter& w, const Dataset& raw);
void stageBaseline(ArtifactWriter& w, const Dataset& d, size_t folds, uint64_t seed);
SelectionResult stageSelectFeatures(ArtifactWriter& w, const Dataset& d, int classAttr,
                                    size_t staleLimit, size_t bins);
ClusterRun stageCluster(ArtifactWriter& w, const Dataset& d, const ClusterOptions& opts);
void stageEvaluate(ArtifactWriter& w, const ClusterRun& run, const Dataset& d, int classAttr);
void stagePlot(ArtifactWriter& w, const Dataset& d, const std::string& xName,
               const std::string& yName, const ClusterAssignment& assignment);

// One full run: data source, optional aggregation, baseline, optional
// feature selection, train split, clustering, evaluation, plots, manifest.
struct PipelineConfig {
    // Exactly one source: a CSV path or a generator configuration.
    std::optional<std::filesystem::path> inputPath;
    std::optional<GeneratorConfig> generator;
    bool aggregate = false;
    ClusterOptions cluster;
    bool selectFeatures = false;
    std::optional<std::string> classAttr;
    size_t staleLimit = 5;
    size_t bins = 0;
    size_t folds = 10;
    double trainFraction = 0.66;
    std::vector<std::pair<std::string, std::string>> plots;
    std::filesystem::path outDir;
    uint64_t seed = 42;
};

// Executes every stage in order; the manifest appears only after all stages
// succeed. Any failure surfaces as StageError.
void runPipeline(const PipelineConfig& cfg);

} // namespace steelclust
