#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "steelclust/dataset.h"

namespace steelclust {

// One customer segment: a mixing weight, truncated-normal parameters for the
// three numeric sale attributes, and nominal code pools. reuse is the
// probability a row draws its code from the segment's pool instead of
// minting a fresh unique one; reuse 0 yields all-unique codes.
struct SegmentConfig {
    std::string name;
    double weight = 0.0;
    double meanRecords = 0.0;
    double stdRecords = 0.0;
    double meanQuantity = 0.0;
    double stdQuantity = 0.0;
    double meanValue = 0.0;
    double stdValue = 0.0;
    size_t productPool = 20;
    double productReuse = 0.9;
    size_t customerPool = 20;
    double customerReuse = 0.9;
    std::string descStem = "WR Coil";
};

struct GeneratorConfig {
    std::vector<SegmentConfig> segments;
    size_t totalRows = 0;
    size_t outlierCount = 0;
    uint64_t seed = 42;
    // Draw customer codes from one pool spanning all segments, making the
    // customer attribute uninformative about segment membership.
    bool sharedCustomerPool = false;
    std::string outlierDesc = "BF SLAG (EXPORT)";

    void validate() const;

    // Four segments with the surveyed mixture weights (rounding to
    // 0.39/0.04/0.32/0.24) and per-segment sale statistics.
    static GeneratorConfig referencePreset();
    // Same means and weights, but stds tightened to mean/6 so the segments
    // are cleanly separable; truncation at zero becomes negligible.
    static GeneratorConfig separatedPreset();
};

GeneratorConfig generatorConfigFromJson(const std::string& text);
GeneratorConfig loadGeneratorConfig(const std::filesystem::path& path);
std::string generatorConfigToJson(const GeneratorConfig& cfg);

// Synthesizes an aggregated sales dataset: totalRows rows of which the final
// outlierCount are extreme outliers (every numeric value at 20x to 30x the
// largest segment mean, codes minted outside all pools). The generating
// segment is appended as a nominal class attribute named "segment"; outlier
// rows carry the label "outlier". Deterministic per config and seed.
Dataset generateSales(const GeneratorConfig& cfg);

// Mean of a normal(mean, std) conditioned on being >= 0. Used to predict
// sample means of the generator's truncated draws.
double truncatedNormalMean(double mean, double std);

} // namespace steelclust
