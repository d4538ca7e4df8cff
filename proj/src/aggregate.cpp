#include "steelclust/aggregate.h"

#include <map>
#include <string>
#include <vector>

#include "steelclust/csv.h"
#include "steelclust/error.h"

namespace steelclust {

namespace {

struct Group {
    std::string product;
    std::string customer;
    double records = 0.0;
    double quantity = 0.0;
    double value = 0.0;
};

int requireColumn(const Dataset& raw, const std::string& name) {
    const int idx = raw.attributeIndexCaseless(name);
    if (idx < 0) throw Error("aggregate input is missing column " + name);
    return idx;
}

std::string cellText(const Dataset& d, size_t row, size_t attr) {
    if (d.schema[attr].kind == AttributeKind::Numeric) {
        return formatDouble(d.numAt(row, attr));
    }
    return d.symbolAt(row, attr);
}

} // namespace

Dataset emptyAggregatedDataset() {
    Dataset out;
    out.schema = {
        AttributeSpec::nominal("Product_CD"),
        AttributeSpec::nominal("Prod_Desc"),
        AttributeSpec::nominal("Customer_CD"),
        AttributeSpec::numeric("No_of_Records", "count"),
        AttributeSpec::numeric("Quantity_sold", "Tons"),
        AttributeSpec::numeric("Sales_value", "INR"),
    };
    return out;
}

Dataset aggregateSales(const Dataset& raw) {
    const int productCol = requireColumn(raw, "product_cd");
    const int descCol = requireColumn(raw, "prod_desc");
    const int customerCol = requireColumn(raw, "customer_cd");
    const int quantityCol = requireColumn(raw, "quantity");
    const int valueCol = requireColumn(raw, "value");
    if (raw.schema[static_cast<size_t>(quantityCol)].kind != AttributeKind::Numeric) {
        throw Error("aggregate column quantity must be numeric");
    }
    if (raw.schema[static_cast<size_t>(valueCol)].kind != AttributeKind::Numeric) {
        throw Error("aggregate column value must be numeric");
    }

    std::vector<Group> groups;
    std::map<std::pair<std::string, std::string>, size_t> groupIndex;
    std::map<std::string, std::string> firstDesc;

    for (size_t r = 0; r < raw.n(); ++r) {
        const std::string product = cellText(raw, r, static_cast<size_t>(productCol));
        const std::string customer = cellText(raw, r, static_cast<size_t>(customerCol));
        const std::string desc = cellText(raw, r, static_cast<size_t>(descCol));
        firstDesc.try_emplace(product, desc);

        auto [it, inserted] = groupIndex.try_emplace({product, customer}, groups.size());
        if (inserted) {
            Group g;
            g.product = product;
            g.customer = customer;
            groups.push_back(std::move(g));
        }
        Group& g = groups[it->second];
        g.records += 1.0;
        g.quantity += raw.numAt(r, static_cast<size_t>(quantityCol));
        g.value += raw.numAt(r, static_cast<size_t>(valueCol));
    }

    Dataset out = emptyAggregatedDataset();
    SymbolInterner products(out.schema[0]);
    SymbolInterner descs(out.schema[1]);
    SymbolInterner customers(out.schema[2]);
    out.rows.reserve(groups.size());
    for (const Group& g : groups) {
        Instance row;
        row.push_back(Value::symbol(products.intern(g.product)));
        row.push_back(Value::symbol(descs.intern(firstDesc.at(g.product))));
        row.push_back(Value::symbol(customers.intern(g.customer)));
        row.push_back(Value::numeric(g.records));
        row.push_back(Value::numeric(g.quantity));
        row.push_back(Value::numeric(g.value));
        out.rows.push_back(std::move(row));
    }
    return out;
}

} // namespace steelclust
