#include "steelclust/csv.h"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "steelclust/error.h"

namespace steelclust {

namespace {

bool parseFiniteReal(const std::string& cell, double& out) {
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    if (first != last && *first == '+') ++first;
    if (first == last) return false;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

std::string readWholeFile(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool needsQuoting(const std::string& field) {
    return field.find_first_of(",\"\r\n") != std::string::npos;
}

void appendField(std::string& out, const std::string& field) {
    if (!needsQuoting(field)) {
        out += field;
        return;
    }
    out += '"';
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
}

std::vector<std::string> splitTabs(const std::string& line) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        const size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return out;
}

} // namespace

CsvTable parseCsvText(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool inQuotes = false;
    bool fieldWasQuoted = false;
    bool recordHasContent = false;

    auto endField = [&] {
        record.push_back(field);
        field.clear();
        fieldWasQuoted = false;
    };
    auto endRecord = [&] {
        endField();
        records.push_back(std::move(record));
        record.clear();
        recordHasContent = false;
    };

    for (size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (inQuotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    inQuotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
        case '"':
            if (!field.empty() || fieldWasQuoted) {
                throw Error("stray quote inside unquoted field");
            }
            inQuotes = true;
            fieldWasQuoted = true;
            recordHasContent = true;
            break;
        case ',':
            endField();
            recordHasContent = true;
            break;
        case '\r':
            if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
            endRecord();
            break;
        case '\n':
            endRecord();
            break;
        default:
            field += c;
            recordHasContent = true;
            break;
        }
    }
    if (inQuotes) throw Error("unterminated quoted field");
    if (recordHasContent || !field.empty() || !record.empty()) endRecord();

    if (records.empty()) throw Error("empty input: header row required");

    CsvTable table;
    table.header = std::move(records.front());
    for (size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != table.header.size()) {
            throw Error("row " + std::to_string(r) + " has " +
                        std::to_string(records[r].size()) + " fields, header has " +
                        std::to_string(table.header.size()));
        }
        table.cells.push_back(std::move(records[r]));
    }
    return table;
}

CsvTable readCsvFile(const std::filesystem::path& path) {
    return parseCsvText(readWholeFile(path));
}

SchemaHints readSchemaFile(const std::filesystem::path& path) {
    const std::string text = readWholeFile(path);
    SchemaHints hints;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto parts = splitTabs(line);
        if (parts.size() < 2 || parts.size() > 3) {
            throw Error("schema line needs name, kind and optional units: " + line);
        }
        SchemaHint hint;
        hint.name = parts[0];
        if (parts[1] == "numeric") {
            hint.kind = AttributeKind::Numeric;
        } else if (parts[1] == "nominal") {
            hint.kind = AttributeKind::Nominal;
        } else {
            throw Error("schema kind must be numeric or nominal: " + parts[1]);
        }
        if (parts.size() == 3) hint.units = parts[2];
        hints.push_back(std::move(hint));
    }
    return hints;
}

void writeSchemaFile(const Dataset& d, const std::filesystem::path& path) {
    std::string out;
    for (const auto& spec : d.schema) {
        out += spec.name;
        out += '\t';
        out += spec.kind == AttributeKind::Numeric ? "numeric" : "nominal";
        if (!spec.units.empty()) {
            out += '\t';
            out += spec.units;
        }
        out += '\n';
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot write " + path.string());
    file << out;
}

Dataset tableToDataset(const CsvTable& table, const SchemaHints& hints) {
    const size_t cols = table.header.size();
    Dataset d;
    d.schema.resize(cols);

    auto lower = [](std::string s) {
        for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return s;
    };

    std::vector<bool> hinted(cols, false);
    for (size_t a = 0; a < cols; ++a) {
        d.schema[a].name = table.header[a];
        if (d.schema[a].name.empty()) {
            throw Error("column " + std::to_string(a) + " has empty header");
        }
        for (const auto& hint : hints) {
            if (lower(hint.name) == lower(table.header[a])) {
                d.schema[a].kind = hint.kind;
                d.schema[a].units = hint.units;
                hinted[a] = true;
                break;
            }
        }
    }

    for (size_t r = 0; r < table.cells.size(); ++r) {
        for (size_t a = 0; a < cols; ++a) {
            if (table.cells[r][a].empty()) {
                throw Error("missing value at row " + std::to_string(r + 1) + " column " +
                            table.header[a]);
            }
        }
    }

    for (size_t a = 0; a < cols; ++a) {
        if (hinted[a]) continue;
        bool allNumeric = !table.cells.empty();
        for (const auto& row : table.cells) {
            double unused;
            if (!parseFiniteReal(row[a], unused)) {
                allNumeric = false;
                break;
            }
        }
        d.schema[a].kind = allNumeric ? AttributeKind::Numeric : AttributeKind::Nominal;
    }

    d.rows.reserve(table.cells.size());
    for (size_t r = 0; r < table.cells.size(); ++r) {
        Instance row;
        row.reserve(cols);
        for (size_t a = 0; a < cols; ++a) {
            const std::string& cell = table.cells[r][a];
            if (d.schema[a].kind == AttributeKind::Numeric) {
                double v;
                if (!parseFiniteReal(cell, v)) {
                    throw Error("row " + std::to_string(r + 1) + " column " + d.schema[a].name +
                                ": not a finite number: " + cell);
                }
                row.push_back(Value::numeric(v));
            } else {
                int idx = d.schema[a].symbolIndex(cell);
                if (idx < 0) {
                    idx = static_cast<int>(d.schema[a].domain.size());
                    d.schema[a].domain.push_back(cell);
                }
                row.push_back(Value::symbol(idx));
            }
        }
        d.rows.push_back(std::move(row));
    }
    d.validate();
    return d;
}

Dataset loadCsv(const std::filesystem::path& path) {
    const std::filesystem::path sidecar = path.string() + ".schema";
    SchemaHints hints;
    if (std::filesystem::exists(sidecar)) hints = readSchemaFile(sidecar);
    return tableToDataset(readCsvFile(path), hints);
}

std::string formatDouble(double v) {
    std::array<char, 64> buf;
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc()) throw Error("number formatting failed");
    return std::string(buf.data(), ptr);
}

std::string serializeCsv(const Dataset& d) {
    std::string out;
    for (size_t a = 0; a < d.schema.size(); ++a) {
        if (a) out += ',';
        appendField(out, d.schema[a].name);
    }
    out += '\n';
    for (size_t r = 0; r < d.n(); ++r) {
        for (size_t a = 0; a < d.schema.size(); ++a) {
            if (a) out += ',';
            if (d.schema[a].kind == AttributeKind::Numeric) {
                out += formatDouble(d.numAt(r, a));
            } else {
                appendField(out, d.symbolAt(r, a));
            }
        }
        out += '\n';
    }
    return out;
}

void writeCsvFile(const Dataset& d, const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot write " + path.string());
    file << serializeCsv(d);
}

} // namespace steelclust
