#pragma once

#include "steelclust/dataset.h"

namespace steelclust {

// Collapses transactional sale rows into one row per (product, customer)
// pair: No_of_Records counts the rows, Quantity_sold and Sales_value sum
// them. The raw input needs columns product_cd, prod_desc, customer_cd,
// quantity and value (matched case-insensitively); quantity and value must
// be numeric. Output rows follow first appearance of each pair, and a
// product's description is the first one seen for it.
Dataset aggregateSales(const Dataset& raw);

// The aggregated six-attribute schema with an empty row set.
Dataset emptyAggregatedDataset();

} // namespace steelclust
