#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "steelclust/csv.h"
#include "steelclust/error.h"
#include "steelclust/generator.h"
#include "steelclust/manifest.h"
#include "steelclust/pipeline.h"

namespace {

using namespace steelclust;

constexpr const char* kAlgoChoices[] = {"kmeans", "em",             "dbscan",       "optics",
                                        "cobweb", "farthest-first", "agglomerative"};

// Options shared by every algorithm-running subcommand.
struct AlgoFlags {
    std::string algo = "kmeans";
    long long k = -1;
    double eps = 0.9;
    long long minPoints = 6;
    double acuity = 1.0;
    double cutoff = 0.00282;
    std::string linkage = "single";
    CLI::Option* algoOpt = nullptr;

    void attach(CLI::App* cmd) {
        algoOpt = cmd->add_option("--algo", algo, "Clustering algorithm")
                      ->check(CLI::IsMember(std::vector<std::string>(std::begin(kAlgoChoices),
                                                                     std::end(kAlgoChoices))));
        cmd->add_option("--k", k, "Cluster count (EM selects by cross-validation when absent)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--eps", eps, "Density radius (normalized distance)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--min-points", minPoints, "Density neighborhood size (self included)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--acuity", acuity, "Concept-tree numeric std floor")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--cutoff", cutoff, "Concept-tree child pruning threshold")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--linkage", linkage, "Agglomerative linkage")
            ->check(CLI::IsMember({"single", "complete", "average"}));
    }

    ClusterOptions toOptions(uint64_t seed, size_t folds) const {
        ClusterOptions opts;
        opts.algo = algo;
        if (k >= 1) opts.k = static_cast<size_t>(k);
        opts.eps = eps;
        opts.minPoints = static_cast<size_t>(minPoints);
        opts.acuity = acuity;
        opts.cutoff = cutoff;
        opts.linkage = parseLinkage(linkage);
        opts.seed = seed;
        opts.folds = folds;
        return opts;
    }
};

// Generator source selection shared by generate and pipeline.
struct SourceFlags {
    std::string configPath;
    std::string preset;
    long long rows = -1;
    long long outliers = -1;
    bool sharedCustomers = false;
    CLI::Option* configOpt = nullptr;
    CLI::Option* presetOpt = nullptr;

    void attach(CLI::App* cmd) {
        configOpt = cmd->add_option("--config", configPath, "Generator configuration JSON")
                        ->check(CLI::ExistingFile);
        presetOpt = cmd->add_option("--preset", preset, "Built-in generator preset")
                        ->check(CLI::IsMember({"reference", "separated"}));
        configOpt->excludes(presetOpt);
        cmd->add_option("--rows", rows, "Override total row count")->check(CLI::PositiveNumber);
        cmd->add_option("--outliers", outliers, "Override outlier count")
            ->check(CLI::NonNegativeNumber);
        cmd->add_flag("--shared-customers", sharedCustomers,
                      "One customer-code pool across all segments");
    }

    bool given() const { return configOpt->count() > 0 || presetOpt->count() > 0; }

    GeneratorConfig build(uint64_t seed, bool seedGiven) const {
        GeneratorConfig cfg;
        if (configOpt->count() > 0) {
            cfg = loadGeneratorConfig(configPath);
            if (seedGiven) cfg.seed = seed;
        } else {
            cfg = preset == "separated" ? GeneratorConfig::separatedPreset()
                                        : GeneratorConfig::referencePreset();
            cfg.seed = seed;
        }
        if (rows >= 0) cfg.totalRows = static_cast<size_t>(rows);
        if (outliers >= 0) cfg.outlierCount = static_cast<size_t>(outliers);
        if (sharedCustomers) cfg.sharedCustomerPool = true;
        return cfg;
    }
};

std::pair<std::string, std::string> parsePlotSpec(const std::string& spec) {
    const size_t colon = spec.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == spec.size()) {
        throw Error("plot spec must be X:Y (got '" + spec + "')");
    }
    return {spec.substr(0, colon), spec.substr(colon + 1)};
}

template <typename F>
void runStage(const char* stage, F&& f) {
    try {
        f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(stage, e.what());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"steelclust: clustering toolkit for transactional sales data"};
    app.require_subcommand(1);

    std::string input;
    std::string outDir;
    uint64_t seed = 42;
    long long folds = 10;
    long long staleLimit = 5;
    long long bins = 0;
    double trainFraction = 0.66;
    std::string classAttr;
    std::vector<std::string> plotSpecs;
    bool doAggregate = false;
    bool doSelect = false;

    SourceFlags genSource;
    SourceFlags pipeSource;
    AlgoFlags clusterAlgo;
    AlgoFlags evaluateAlgo;
    AlgoFlags plotAlgo;
    AlgoFlags pipelineAlgo;

    auto* generate = app.add_subcommand("generate", "Synthesize a seeded sales dataset");
    generate->add_option("--out", outDir, "Output directory")->required();
    auto* generateSeed = generate->add_option("--seed", seed, "Random seed");
    genSource.attach(generate);

    auto* aggregate =
        app.add_subcommand("aggregate", "Collapse raw sales into product-customer rows");
    aggregate->add_option("--input", input, "Input CSV")->required()->check(CLI::ExistingFile);
    aggregate->add_option("--out", outDir, "Output directory")->required();

    auto* baseline = app.add_subcommand("baseline", "ZeroR cross-validated regression metrics");
    baseline->add_option("--input", input, "Input CSV")->required()->check(CLI::ExistingFile);
    baseline->add_option("--out", outDir, "Output directory")->required();
    baseline->add_option("--seed", seed, "Random seed");
    baseline->add_option("--folds", folds, "Cross-validation folds")->check(CLI::Range(2LL, 1000000LL));

    auto* selectFeatures =
        app.add_subcommand("select-features", "Correlation-based subset selection");
    selectFeatures->add_option("--input", input, "Input CSV")->required()->check(CLI::ExistingFile);
    selectFeatures->add_option("--out", outDir, "Output directory")->required();
    selectFeatures->add_option("--class-attr", classAttr, "Class attribute")->required();
    selectFeatures->add_option("--stale-limit", staleLimit, "Best-first stale expansions")
        ->check(CLI::PositiveNumber);
    selectFeatures->add_option("--bins", bins, "Discretization bins (0 = automatic)")
        ->check(CLI::NonNegativeNumber);

    auto* cluster = app.add_subcommand("cluster", "Fit one clustering algorithm");
    cluster->add_option("--input", input, "Input CSV")->required()->check(CLI::ExistingFile);
    cluster->add_option("--out", outDir, "Output directory")->required();
    cluster->add_option("--seed", seed, "Random seed");
    cluster->add_option("--folds", folds, "EM k-selection folds")->check(CLI::Range(2LL, 1000000LL));
    auto* clusterClass = cluster->add_option("--class-attr", classAttr,
                                             "Attribute excluded from distances");
    clusterAlgo.attach(cluster);

    auto* evaluate = app.add_subcommand("evaluate", "Cluster plus classes-to-clusters report");
    evaluate->add_option("--input", input, "Input CSV")->required()->check(CLI::ExistingFile);
    evaluate->add_option("--out", outDir, "Output directory")->required();
    evaluate->add_option("--seed", seed, "Random seed");
    evaluate->add_option("--folds", folds, "EM k-selection folds")->check(CLI::Range(2LL, 1000000LL));
    evaluate->add_option("--class-attr", classAttr, "Class attribute")->required();
    evaluateAlgo.attach(evaluate);

    auto* plot = app.add_subcommand("plot", "Scatter plot, optionally colored by a clustering");
    plot->add_option("--input", input, "Input CSV")->required()->check(CLI::ExistingFile);
    plot->add_option("--out", outDir, "Output directory")->required();
    plot->add_option("--seed", seed, "Random seed");
    plot->add_option("--folds", folds, "EM k-selection folds")->check(CLI::Range(2LL, 1000000LL));
    plot->add_option("--plot", plotSpecs, "Attribute pair X:Y")->required();
    auto* plotClass = plot->add_option("--class-attr", classAttr,
                                       "Attribute excluded from distances");
    plotAlgo.attach(plot);

    auto* pipeline = app.add_subcommand("pipeline", "Run every stage end to end");
    auto* pipelineInput =
        pipeline->add_option("--input", input, "Input CSV")->check(CLI::ExistingFile);
    pipeline->add_option("--out", outDir, "Output directory")->required();
    auto* pipelineSeed = pipeline->add_option("--seed", seed, "Random seed");
    pipeline->add_option("--folds", folds, "Cross-validation folds")->check(CLI::Range(2LL, 1000000LL));
    pipeline->add_option("--train-fraction", trainFraction,
                         "Training share of the data (1 disables the split)");
    auto* pipelineClass = pipeline->add_option("--class-attr", classAttr, "Class attribute");
    pipeline->add_flag("--aggregate", doAggregate, "Aggregate raw sales first");
    pipeline->add_flag("--select-features", doSelect, "Run feature selection");
    pipeline->add_option("--stale-limit", staleLimit, "Best-first stale expansions")
        ->check(CLI::PositiveNumber);
    pipeline->add_option("--bins", bins, "Discretization bins (0 = automatic)")
        ->check(CLI::NonNegativeNumber);
    pipeline->add_option("--plot", plotSpecs, "Attribute pair X:Y (repeatable)");
    pipeSource.attach(pipeline);
    pipelineInput->excludes(pipeSource.configOpt);
    pipelineInput->excludes(pipeSource.presetOpt);
    pipelineAlgo.attach(pipeline);

    auto* verify = app.add_subcommand("verify", "Recheck a manifest's artifact digests");
    verify->add_option("--out", outDir, "Directory holding manifest.txt")->required();

    try {
        CLI11_PARSE(app, argc, argv);

        if (generate->parsed()) {
            runStage("generate", [&] {
                ArtifactWriter writer(outDir);
                stageGenerate(writer, genSource.build(seed, generateSeed->count() > 0));
                writer.finishManifest();
            });
        } else if (aggregate->parsed()) {
            runStage("aggregate", [&] {
                ArtifactWriter writer(outDir);
                stageAggregate(writer, loadCsv(input));
                writer.finishManifest();
            });
        } else if (baseline->parsed()) {
            runStage("baseline", [&] {
                ArtifactWriter writer(outDir);
                stageBaseline(writer, loadCsv(input), static_cast<size_t>(folds), seed);
                writer.finishManifest();
            });
        } else if (selectFeatures->parsed()) {
            runStage("select-features", [&] {
                ArtifactWriter writer(outDir);
                Dataset d = loadCsv(input);
                const int classIdx = resolveClassAttr(d, classAttr);
                stageSelectFeatures(writer, d, classIdx, static_cast<size_t>(staleLimit),
                                    static_cast<size_t>(bins));
                writer.finishManifest();
            });
        } else if (cluster->parsed()) {
            runStage("cluster", [&] {
                ArtifactWriter writer(outDir);
                Dataset d = loadCsv(input);
                if (clusterClass->count() > 0) resolveClassAttr(d, classAttr);
                stageCluster(writer, d, clusterAlgo.toOptions(seed, static_cast<size_t>(folds)));
                writer.finishManifest();
            });
        } else if (evaluate->parsed()) {
            runStage("evaluate", [&] {
                ArtifactWriter writer(outDir);
                Dataset d = loadCsv(input);
                const int classIdx = resolveClassAttr(d, classAttr);
                const ClusterRun run = stageCluster(
                    writer, d, evaluateAlgo.toOptions(seed, static_cast<size_t>(folds)));
                stageEvaluate(writer, run, d, classIdx);
                writer.finishManifest();
            });
        } else if (plot->parsed()) {
            runStage("plot", [&] {
                ArtifactWriter writer(outDir);
                Dataset d = loadCsv(input);
                if (plotClass->count() > 0) resolveClassAttr(d, classAttr);
                ClusterAssignment assignment;
                if (plotAlgo.algoOpt->count() > 0) {
                    assignment = runClusterAlgorithm(
                                     d, plotAlgo.toOptions(seed, static_cast<size_t>(folds)))
                                     .assignment;
                }
                for (const std::string& spec : plotSpecs) {
                    const auto [x, y] = parsePlotSpec(spec);
                    stagePlot(writer, d, x, y, assignment);
                }
                writer.finishManifest();
            });
        } else if (pipeline->parsed()) {
            PipelineConfig cfg;
            if (pipelineInput->count() > 0) cfg.inputPath = input;
            if (pipeSource.given()) {
                cfg.generator = pipeSource.build(seed, pipelineSeed->count() > 0);
            }
            cfg.aggregate = doAggregate;
            cfg.cluster = pipelineAlgo.toOptions(seed, static_cast<size_t>(folds));
            cfg.selectFeatures = doSelect;
            if (pipelineClass->count() > 0) cfg.classAttr = classAttr;
            cfg.staleLimit = static_cast<size_t>(staleLimit);
            cfg.bins = static_cast<size_t>(bins);
            cfg.folds = static_cast<size_t>(folds);
            cfg.trainFraction = trainFraction;
            for (const std::string& spec : plotSpecs) cfg.plots.push_back(parsePlotSpec(spec));
            cfg.outDir = outDir;
            cfg.seed = seed;
            runPipeline(cfg);
        } else if (verify->parsed()) {
            VerifyResult result;
            runStage("verify", [&] { result = verifyManifest(outDir); });
            for (const std::string& problem : result.problems) {
                std::cerr << "steelclust: verify: " << problem << "\n";
            }
            if (!result.ok) return 1;
            std::cout << "ok\n";
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "steelclust: " << e.what() << "\n";
        return 1;
    }
}
