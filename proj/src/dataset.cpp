#include "steelclust/dataset.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "steelclust/error.h"

namespace steelclust {

namespace {

std::string toLower(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

} // namespace

AttributeSpec AttributeSpec::numeric(std::string name, std::string units) {
    AttributeSpec spec;
    spec.name = std::move(name);
    spec.kind = AttributeKind::Numeric;
    spec.units = std::move(units);
    return spec;
}

AttributeSpec AttributeSpec::nominal(std::string name, std::vector<std::string> domain) {
    AttributeSpec spec;
    spec.name = std::move(name);
    spec.kind = AttributeKind::Nominal;
    spec.domain = std::move(domain);
    return spec;
}

int AttributeSpec::symbolIndex(const std::string& symbol) const {
    for (size_t i = 0; i < domain.size(); ++i) {
        if (domain[i] == symbol) return static_cast<int>(i);
    }
    return -1;
}

Value Value::numeric(double v) {
    Value out;
    out.num_ = v;
    out.numeric_ = true;
    return out;
}

Value Value::symbol(int domainIndex) {
    Value out;
    out.sym_ = domainIndex;
    out.numeric_ = false;
    return out;
}

int Dataset::attributeIndex(const std::string& name) const {
    for (size_t i = 0; i < schema.size(); ++i) {
        if (schema[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

int Dataset::attributeIndexCaseless(const std::string& name) const {
    const std::string needle = toLower(name);
    for (size_t i = 0; i < schema.size(); ++i) {
        if (toLower(schema[i].name) == needle) return static_cast<int>(i);
    }
    return -1;
}

const std::string& Dataset::symbolAt(size_t row, size_t attr) const {
    return schema[attr].domain[static_cast<size_t>(rows[row][attr].sym())];
}

std::vector<int> Dataset::activeAttributes() const {
    std::vector<int> out;
    for (size_t i = 0; i < schema.size(); ++i) {
        if (classIndex && *classIndex == static_cast<int>(i)) continue;
        out.push_back(static_cast<int>(i));
    }
    return out;
}

void Dataset::validate() const {
    std::set<std::string> seen;
    for (const auto& spec : schema) {
        if (spec.name.empty()) throw Error("attribute with empty name");
        if (!seen.insert(spec.name).second) {
            throw Error("duplicate attribute name: " + spec.name);
        }
        if (spec.kind == AttributeKind::Nominal) {
            std::set<std::string> symbols;
            for (const auto& sym : spec.domain) {
                if (!symbols.insert(sym).second) {
                    throw Error("attribute " + spec.name + " has duplicate symbol: " + sym);
                }
            }
        }
    }
    if (classIndex) {
        if (*classIndex < 0 || *classIndex >= static_cast<int>(schema.size())) {
            throw Error("class attribute index out of range");
        }
    }
    for (size_t r = 0; r < rows.size(); ++r) {
        const Instance& row = rows[r];
        if (row.size() != schema.size()) {
            throw Error("row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                        " values, schema declares " + std::to_string(schema.size()));
        }
        for (size_t a = 0; a < row.size(); ++a) {
            const auto& spec = schema[a];
            const Value& v = row[a];
            if (spec.kind == AttributeKind::Numeric) {
                if (!v.isNumeric()) {
                    throw Error("row " + std::to_string(r) + " attribute " + spec.name +
                                ": expected numeric value");
                }
                if (!std::isfinite(v.num())) {
                    throw Error("row " + std::to_string(r) + " attribute " + spec.name +
                                ": non-finite value");
                }
            } else {
                if (v.isNumeric()) {
                    throw Error("row " + std::to_string(r) + " attribute " + spec.name +
                                ": expected nominal value");
                }
                if (v.sym() < 0 || v.sym() >= static_cast<int>(spec.domain.size())) {
                    throw Error("row " + std::to_string(r) + " attribute " + spec.name +
                                ": symbol index out of domain");
                }
            }
        }
    }
}

SymbolInterner::SymbolInterner(AttributeSpec& spec) : spec_(&spec) {
    for (size_t i = 0; i < spec.domain.size(); ++i) {
        index_.emplace(spec.domain[i], static_cast<int>(i));
    }
}

int SymbolInterner::intern(const std::string& symbol) {
    auto [it, inserted] = index_.try_emplace(symbol, static_cast<int>(spec_->domain.size()));
    if (inserted) spec_->domain.push_back(symbol);
    return it->second;
}

double Ranges::span(size_t attr) const {
    if (attr >= perAttribute.size() || !perAttribute[attr]) return 0.0;
    return perAttribute[attr]->max - perAttribute[attr]->min;
}

Dataset projectAttributes(const Dataset& d, const std::vector<int>& attrs) {
    Dataset out;
    out.schema.reserve(attrs.size());
    for (size_t j = 0; j < attrs.size(); ++j) {
        const int a = attrs[j];
        if (a < 0 || a >= static_cast<int>(d.schema.size())) {
            throw Error("attribute index out of range");
        }
        out.schema.push_back(d.schema[static_cast<size_t>(a)]);
        if (d.classIndex && *d.classIndex == a) out.classIndex = static_cast<int>(j);
    }
    out.rows.reserve(d.n());
    for (const Instance& row : d.rows) {
        Instance projected;
        projected.reserve(attrs.size());
        for (int a : attrs) projected.push_back(row[static_cast<size_t>(a)]);
        out.rows.push_back(std::move(projected));
    }
    return out;
}

Ranges computeRanges(const Dataset& d) {
    Ranges out;
    if (d.rows.empty()) return out;
    out.perAttribute.resize(d.schema.size());
    for (size_t a = 0; a < d.schema.size(); ++a) {
        if (d.schema[a].kind != AttributeKind::Numeric) continue;
        Ranges::Bound b;
        b.min = d.numAt(0, a);
        b.max = b.min;
        for (size_t r = 1; r < d.n(); ++r) {
            const double v = d.numAt(r, a);
            b.min = std::min(b.min, v);
            b.max = std::max(b.max, v);
        }
        out.perAttribute[a] = b;
    }
    return out;
}

} // namespace steelclust
