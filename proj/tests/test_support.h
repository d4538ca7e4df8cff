#pragma once

#include <cstdlib>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "steelclust/dataset.h"

namespace testsupport {

// Single numeric attribute "x" holding the given values.
inline steelclust::Dataset numericColumn(const std::vector<double>& values,
                                         const std::string& name = "x") {
    steelclust::Dataset d;
    d.schema.push_back(steelclust::AttributeSpec::numeric(name));
    for (double v : values) {
        d.rows.push_back({steelclust::Value::numeric(v)});
    }
    return d;
}

// Numeric attributes x0..x{m-1}; one row per inner vector.
inline steelclust::Dataset numericTable(const std::vector<std::vector<double>>& rows) {
    steelclust::Dataset d;
    if (!rows.empty()) {
        for (size_t a = 0; a < rows.front().size(); ++a) {
            d.schema.push_back(steelclust::AttributeSpec::numeric("x" + std::to_string(a)));
        }
    }
    for (const auto& row : rows) {
        steelclust::Instance inst;
        for (double v : row) inst.push_back(steelclust::Value::numeric(v));
        d.rows.push_back(std::move(inst));
    }
    return d;
}

// One nominal attribute over the given domain; rows hold domain indices.
inline steelclust::Dataset nominalColumn(std::vector<std::string> domain,
                                         const std::vector<int>& rows,
                                         const std::string& name = "color") {
    steelclust::Dataset d;
    d.schema.push_back(steelclust::AttributeSpec::nominal(name, std::move(domain)));
    for (int s : rows) {
        d.rows.push_back({steelclust::Value::symbol(s)});
    }
    return d;
}

// Unique directory under the system temp path, removed on destruction.
class TempDir {
public:
    TempDir() {
        std::string tmpl =
            (std::filesystem::temp_directory_path() / "steelclust-test-XXXXXX").string();
        if (mkdtemp(tmpl.data()) == nullptr) {
            throw std::runtime_error("mkdtemp failed");
        }
        path_ = tmpl;
    }

    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

} // namespace testsupport
