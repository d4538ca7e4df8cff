#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace steelclust {

enum class AttributeKind { Numeric, Nominal };

// One column declaration. Nominal attributes carry an ordered symbol domain
// (order matters: ties in modes and class mappings break by domain order).
// Numeric attributes carry free-text units.
struct AttributeSpec {
    std::string name;
    AttributeKind kind = AttributeKind::Numeric;
    std::vector<std::string> domain;
    std::string units;

    static AttributeSpec numeric(std::string name, std::string units = "");
    static AttributeSpec nominal(std::string name, std::vector<std::string> domain = {});

    // Index of a symbol in the domain, or -1.
    int symbolIndex(const std::string& symbol) const;
};

// A cell: either a finite real or an index into the attribute's domain.
// Which one is valid is determined by the schema position it sits at.
class Value {
public:
    static Value numeric(double v);
    static Value symbol(int domainIndex);

    double num() const { return num_; }
    int sym() const { return sym_; }
    bool isNumeric() const { return numeric_; }

    friend bool operator==(const Value& a, const Value& b) {
        if (a.numeric_ != b.numeric_) return false;
        return a.numeric_ ? a.num_ == b.num_ : a.sym_ == b.sym_;
    }

private:
    double num_ = 0.0;
    int sym_ = -1;
    bool numeric_ = true;
};

using Instance = std::vector<Value>;

struct Dataset {
    std::vector<AttributeSpec> schema;
    std::vector<Instance> rows;
    std::optional<int> classIndex;

    size_t n() const { return rows.size(); }
    size_t attributeCount() const { return schema.size(); }

    int attributeIndex(const std::string& name) const;           // -1 if absent
    int attributeIndexCaseless(const std::string& name) const;   // -1 if absent

    double numAt(size_t row, size_t attr) const { return rows[row][attr].num(); }
    const std::string& symbolAt(size_t row, size_t attr) const;

    // Attribute positions participating in distances: all except the class.
    std::vector<int> activeAttributes() const;

    // Checks every declared invariant; throws Error naming the first violation.
    void validate() const;
};

// Observed numeric min/max per attribute position. An empty dataset produces
// the empty-ranges marker (no bounds at all).
struct Ranges {
    struct Bound {
        double min = 0.0;
        double max = 0.0;
    };
    std::vector<std::optional<Bound>> perAttribute;

    bool empty() const { return perAttribute.empty(); }
    double span(size_t attr) const;
};

Ranges computeRanges(const Dataset& d);

// New dataset keeping only the listed attribute positions, in the given
// order. The class marker follows its attribute if kept, otherwise clears.
Dataset projectAttributes(const Dataset& d, const std::vector<int>& attrs);

// Grows a nominal attribute's domain in first-appearance order while
// keeping lookups logarithmic. The attribute must outlive the interner.
class SymbolInterner {
public:
    explicit SymbolInterner(AttributeSpec& spec);
    int intern(const std::string& symbol);

private:
    AttributeSpec* spec_;
    std::map<std::string, int> index_;
};

} // namespace steelclust
