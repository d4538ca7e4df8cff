#include "steelclust/generator.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "steelclust/aggregate.h"
#include "steelclust/error.h"
#include "steelclust/rng.h"

namespace steelclust {

namespace {

constexpr double kTwoPi = 6.283185307179586;

std::string digits(Rng& rng, size_t count) {
    std::string out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        out += static_cast<char>('0' + rng.nextBelow(10));
    }
    return out;
}

// 15-digit product code: mill digit, 2-digit group, 3-digit size,
// 5-digit grade, 4-digit length.
std::string mintProductCode(Rng& rng, char millDigit, std::set<std::string>& issued) {
    while (true) {
        std::string code;
        code += millDigit;
        code += digits(rng, 14);
        if (issued.insert(code).second) return code;
    }
}

// Customer codes look like 510A080008: region digits, a letter, a serial.
std::string mintCustomerCode(Rng& rng, std::set<std::string>& issued) {
    while (true) {
        std::string code = digits(rng, 3);
        code += static_cast<char>('A' + rng.nextBelow(26));
        code += digits(rng, 6);
        if (issued.insert(code).second) return code;
    }
}

std::string descFor(const std::string& stem, const std::string& productCode) {
    std::string size = productCode.substr(3, 3);
    while (size.size() > 1 && size.front() == '0') size.erase(size.begin());
    return stem + " " + size;
}

double truncatedDraw(Rng& rng, double mean, double std) {
    if (std == 0.0) return mean;
    for (int attempt = 0; attempt < 10000000; ++attempt) {
        const double x = mean + std * rng.nextGaussian();
        if (x >= 0.0) return x;
    }
    throw Error("truncated normal rejection failed to accept");
}

SegmentConfig makeSegment(std::string name, double weight, double meanRecords,
                          double stdRecords, double meanQuantity, double stdQuantity,
                          double meanValue, double stdValue, std::string descStem) {
    SegmentConfig s;
    s.name = std::move(name);
    s.weight = weight;
    s.meanRecords = meanRecords;
    s.stdRecords = stdRecords;
    s.meanQuantity = meanQuantity;
    s.stdQuantity = stdQuantity;
    s.meanValue = meanValue;
    s.stdValue = stdValue;
    s.descStem = std::move(descStem);
    return s;
}

void requireKeys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                 const std::string& where) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            throw Error("unknown key in " + where + ": " + item.key());
        }
    }
}

void readStat(const nlohmann::json& obj, const std::string& key, double& mean, double& std) {
    if (!obj.contains(key)) return;
    const auto& stat = obj.at(key);
    requireKeys(stat, {"mean", "std"}, "segment." + key);
    if (stat.contains("mean")) mean = stat.at("mean").get<double>();
    if (stat.contains("std")) std = stat.at("std").get<double>();
}

} // namespace

void GeneratorConfig::validate() const {
    if (totalRows < outlierCount) {
        throw Error("total_rows is smaller than outlier_count");
    }
    if (segments.empty() && totalRows > outlierCount) {
        throw Error("segments required when generating non-outlier rows");
    }
    double weightSum = 0.0;
    std::set<std::string> names;
    for (const auto& s : segments) {
        if (s.name.empty()) throw Error("segment with empty name");
        if (s.name == "outlier") throw Error("segment name outlier is reserved");
        if (!names.insert(s.name).second) throw Error("duplicate segment name: " + s.name);
        if (s.weight < 0.0) throw Error("segment " + s.name + " has negative weight");
        for (double std : {s.stdRecords, s.stdQuantity, s.stdValue}) {
            if (std < 0.0) throw Error("segment " + s.name + " has negative std");
        }
        for (auto [mean, std] : {std::pair{s.meanRecords, s.stdRecords},
                                 std::pair{s.meanQuantity, s.stdQuantity},
                                 std::pair{s.meanValue, s.stdValue}}) {
            if (mean < -3.0 * std || (std == 0.0 && mean < 0.0)) {
                throw Error("segment " + s.name +
                            " mean is too far below zero for truncated sampling");
            }
        }
        if (s.productReuse < 0.0 || s.productReuse > 1.0 || s.customerReuse < 0.0 ||
            s.customerReuse > 1.0) {
            throw Error("segment " + s.name + " reuse probabilities must lie in [0,1]");
        }
        if ((s.productReuse > 0.0 && s.productPool == 0) ||
            (s.customerReuse > 0.0 && s.customerPool == 0)) {
            throw Error("segment " + s.name + " reuses codes from an empty pool");
        }
        weightSum += s.weight;
    }
    if (!segments.empty() && std::abs(weightSum - 1.0) > 1e-9) {
        throw Error("segment weights must sum to 1");
    }
}

GeneratorConfig GeneratorConfig::referencePreset() {
    // Weights are the exact segment shares of the surveyed 18901 pairs
    // (they round to the published 39/4/32/24 percent split).
    GeneratorConfig cfg;
    cfg.segments = {
        makeSegment("spot", 7451.0 / 18901.0, 1.143, 0.35, 6.09, 3.65, 225617.82, 135610.07,
                    "TMT Rebar"),
        makeSegment("export", 765.0 / 18901.0, 17.95, 14.32, 1929.19, 15045.98, 27113906.80,
                    32195752.77, "BF SLAG"),
        makeSegment("trade", 6142.0 / 18901.0, 2.29, 1.19, 26.99, 12.07, 986642.45, 438024.16,
                    "WR Coil"),
        makeSegment("project", 4543.0 / 18901.0, 5.25, 3.26, 113.27, 76.72, 4058298.08,
                    2722933.25, "HR Plate"),
    };
    cfg.totalRows = 18901;
    cfg.outlierCount = 2;
    return cfg;
}

GeneratorConfig GeneratorConfig::separatedPreset() {
    GeneratorConfig cfg = referencePreset();
    for (auto& s : cfg.segments) {
        s.stdRecords = s.meanRecords / 6.0;
        s.stdQuantity = s.meanQuantity / 6.0;
        s.stdValue = s.meanValue / 6.0;
    }
    return cfg;
}

GeneratorConfig generatorConfigFromJson(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("generator config is not valid JSON: ") + e.what());
    }
    requireKeys(doc,
                {"seed", "total_rows", "outlier_count", "shared_customer_pool",
                 "outlier_desc", "segments"},
                "generator config");
    GeneratorConfig cfg;
    cfg.segments.clear();
    if (doc.contains("seed")) cfg.seed = doc.at("seed").get<uint64_t>();
    if (doc.contains("total_rows")) cfg.totalRows = doc.at("total_rows").get<size_t>();
    if (doc.contains("outlier_count")) {
        cfg.outlierCount = doc.at("outlier_count").get<size_t>();
    }
    if (doc.contains("shared_customer_pool")) {
        cfg.sharedCustomerPool = doc.at("shared_customer_pool").get<bool>();
    }
    if (doc.contains("outlier_desc")) {
        cfg.outlierDesc = doc.at("outlier_desc").get<std::string>();
    }
    if (doc.contains("segments")) {
        size_t index = 0;
        for (const auto& seg : doc.at("segments")) {
            requireKeys(seg,
                        {"name", "weight", "no_of_records", "quantity_sold", "sales_value",
                         "product_pool", "product_reuse", "customer_pool", "customer_reuse",
                         "desc_stem"},
                        "segment");
            SegmentConfig s;
            s.name = seg.contains("name") ? seg.at("name").get<std::string>()
                                          : "segment" + std::to_string(index);
            if (seg.contains("weight")) s.weight = seg.at("weight").get<double>();
            readStat(seg, "no_of_records", s.meanRecords, s.stdRecords);
            readStat(seg, "quantity_sold", s.meanQuantity, s.stdQuantity);
            readStat(seg, "sales_value", s.meanValue, s.stdValue);
            if (seg.contains("product_pool")) {
                s.productPool = seg.at("product_pool").get<size_t>();
            }
            if (seg.contains("product_reuse")) {
                s.productReuse = seg.at("product_reuse").get<double>();
            }
            if (seg.contains("customer_pool")) {
                s.customerPool = seg.at("customer_pool").get<size_t>();
            }
            if (seg.contains("customer_reuse")) {
                s.customerReuse = seg.at("customer_reuse").get<double>();
            }
            if (seg.contains("desc_stem")) s.descStem = seg.at("desc_stem").get<std::string>();
            cfg.segments.push_back(std::move(s));
            ++index;
        }
    }
    cfg.validate();
    return cfg;
}

GeneratorConfig loadGeneratorConfig(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return generatorConfigFromJson(buf.str());
}

std::string generatorConfigToJson(const GeneratorConfig& cfg) {
    nlohmann::json doc;
    doc["seed"] = cfg.seed;
    doc["total_rows"] = cfg.totalRows;
    doc["outlier_count"] = cfg.outlierCount;
    doc["shared_customer_pool"] = cfg.sharedCustomerPool;
    doc["outlier_desc"] = cfg.outlierDesc;
    doc["segments"] = nlohmann::json::array();
    for (const auto& s : cfg.segments) {
        nlohmann::json seg;
        seg["name"] = s.name;
        seg["weight"] = s.weight;
        seg["no_of_records"] = {{"mean", s.meanRecords}, {"std", s.stdRecords}};
        seg["quantity_sold"] = {{"mean", s.meanQuantity}, {"std", s.stdQuantity}};
        seg["sales_value"] = {{"mean", s.meanValue}, {"std", s.stdValue}};
        seg["product_pool"] = s.productPool;
        seg["product_reuse"] = s.productReuse;
        seg["customer_pool"] = s.customerPool;
        seg["customer_reuse"] = s.customerReuse;
        seg["desc_stem"] = s.descStem;
        doc["segments"].push_back(std::move(seg));
    }
    return doc.dump(2) + "\n";
}

double truncatedNormalMean(double mean, double std) {
    if (std == 0.0) return mean;
    const double beta = -mean / std;
    const double pdf = std::exp(-0.5 * beta * beta) / std::sqrt(kTwoPi);
    const double tail = 0.5 * std::erfc(beta / std::sqrt(2.0));
    return mean + std * pdf / tail;
}

Dataset generateSales(const GeneratorConfig& cfg) {
    cfg.validate();

    Dataset out = emptyAggregatedDataset();
    AttributeSpec segmentAttr = AttributeSpec::nominal("segment");
    for (const auto& s : cfg.segments) segmentAttr.domain.push_back(s.name);
    if (cfg.outlierCount > 0) segmentAttr.domain.push_back("outlier");
    out.schema.push_back(std::move(segmentAttr));
    out.classIndex = 6;

    SymbolInterner products(out.schema[0]);
    SymbolInterner descs(out.schema[1]);
    SymbolInterner customers(out.schema[2]);

    std::set<std::string> issuedProducts;
    std::set<std::string> issuedCustomers;
    const auto millDigit = [](size_t segment) {
        return static_cast<char>('1' + segment % 9);
    };

    Rng poolRng = Rng::stream(cfg.seed, "code-pools");
    std::vector<std::vector<std::string>> productPools(cfg.segments.size());
    std::vector<std::vector<std::string>> customerPools(cfg.segments.size());
    std::vector<std::string> sharedCustomers;
    for (size_t i = 0; i < cfg.segments.size(); ++i) {
        for (size_t j = 0; j < cfg.segments[i].productPool; ++j) {
            productPools[i].push_back(mintProductCode(poolRng, millDigit(i), issuedProducts));
        }
        for (size_t j = 0; j < cfg.segments[i].customerPool; ++j) {
            std::string code = mintCustomerCode(poolRng, issuedCustomers);
            if (cfg.sharedCustomerPool) {
                sharedCustomers.push_back(std::move(code));
            } else {
                customerPools[i].push_back(std::move(code));
            }
        }
    }

    std::vector<double> weights;
    for (const auto& s : cfg.segments) weights.push_back(s.weight);

    Rng rowRng = Rng::stream(cfg.seed, "rows");
    const size_t regularRows = cfg.totalRows - cfg.outlierCount;
    out.rows.reserve(cfg.totalRows);
    for (size_t r = 0; r < regularRows; ++r) {
        const size_t si = rowRng.nextWeighted(weights);
        const SegmentConfig& s = cfg.segments[si];

        std::string productCode;
        if (rowRng.nextUnit() < s.productReuse && !productPools[si].empty()) {
            productCode = productPools[si][rowRng.nextBelow(productPools[si].size())];
        } else {
            productCode = mintProductCode(rowRng, millDigit(si), issuedProducts);
        }
        std::string customerCode;
        const auto& pool = cfg.sharedCustomerPool ? sharedCustomers : customerPools[si];
        if (rowRng.nextUnit() < s.customerReuse && !pool.empty()) {
            customerCode = pool[rowRng.nextBelow(pool.size())];
        } else {
            customerCode = mintCustomerCode(rowRng, issuedCustomers);
        }

        Instance row;
        row.push_back(Value::symbol(products.intern(productCode)));
        row.push_back(Value::symbol(descs.intern(descFor(s.descStem, productCode))));
        row.push_back(Value::symbol(customers.intern(customerCode)));
        row.push_back(Value::numeric(truncatedDraw(rowRng, s.meanRecords, s.stdRecords)));
        row.push_back(Value::numeric(truncatedDraw(rowRng, s.meanQuantity, s.stdQuantity)));
        row.push_back(Value::numeric(truncatedDraw(rowRng, s.meanValue, s.stdValue)));
        row.push_back(Value::symbol(out.schema[6].symbolIndex(s.name)));
        out.rows.push_back(std::move(row));
    }

    double maxMeanRecords = 0.0, maxMeanQuantity = 0.0, maxMeanValue = 0.0;
    for (const auto& s : cfg.segments) {
        maxMeanRecords = std::max(maxMeanRecords, s.meanRecords);
        maxMeanQuantity = std::max(maxMeanQuantity, s.meanQuantity);
        maxMeanValue = std::max(maxMeanValue, s.meanValue);
    }
    Rng outlierRng = Rng::stream(cfg.seed, "outliers");
    for (size_t r = 0; r < cfg.outlierCount; ++r) {
        const std::string productCode = mintProductCode(outlierRng, '0', issuedProducts);
        const std::string customerCode = mintCustomerCode(outlierRng, issuedCustomers);
        const auto scale = [&] { return 20.0 + 10.0 * outlierRng.nextUnit(); };
        Instance row;
        row.push_back(Value::symbol(products.intern(productCode)));
        row.push_back(Value::symbol(descs.intern(cfg.outlierDesc)));
        row.push_back(Value::symbol(customers.intern(customerCode)));
        row.push_back(Value::numeric(scale() * maxMeanRecords));
        row.push_back(Value::numeric(scale() * maxMeanQuantity));
        row.push_back(Value::numeric(scale() * maxMeanValue));
        row.push_back(Value::symbol(out.schema[6].symbolIndex("outlier")));
        out.rows.push_back(std::move(row));
    }

    out.validate();
    return out;
}

} // namespace steelclust
