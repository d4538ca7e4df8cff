#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "steelclust/dataset.h"

namespace steelclust {

// Raw comma-separated content: a mandatory header row plus string cells.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> cells;
};

CsvTable parseCsvText(const std::string& text);
CsvTable readCsvFile(const std::filesystem::path& path);

// Optional per-column typing carried in a sidecar file. Columns are matched
// to hints by name, case-insensitively; unhinted columns fall back to
// inference. Hints exist because identifier-like columns (all-digit codes)
// would otherwise infer numeric.
struct SchemaHint {
    std::string name;
    AttributeKind kind = AttributeKind::Numeric;
    std::string units;
};

using SchemaHints = std::vector<SchemaHint>;

SchemaHints readSchemaFile(const std::filesystem::path& path);
void writeSchemaFile(const Dataset& d, const std::filesystem::path& path);

// Builds a typed dataset. A column is numeric when hinted numeric, or when
// unhinted and every cell parses fully as a finite real. Nominal domains
// collect symbols in first-appearance order. Empty cells are rejected.
Dataset tableToDataset(const CsvTable& table, const SchemaHints& hints = {});

// Reads path, applying "<path>.schema" automatically when that file exists.
Dataset loadCsv(const std::filesystem::path& path);

// Shortest decimal form that round-trips the exact double.
std::string formatDouble(double v);

std::string serializeCsv(const Dataset& d);
void writeCsvFile(const Dataset& d, const std::filesystem::path& path);

} // namespace steelclust
