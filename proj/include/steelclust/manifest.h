#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace steelclust {

// FNV-1a 64-bit digest of a byte string.
uint64_t fnv1a64(std::string_view bytes);

// Digest of a file's raw bytes; throws Error when unreadable.
uint64_t digestFile(const std::filesystem::path& file);

struct ManifestEntry {
    std::string path;  // relative, '/'-separated
    uint64_t digest = 0;
};

// Writes `fnv1a64:<16 hex>  <relpath>` lines, sorted by path, to
// dir/manifestName.
void writeManifest(const std::filesystem::path& dir, std::vector<std::string> relPaths,
                   const std::string& manifestName = "manifest.txt");

std::vector<ManifestEntry> readManifest(const std::filesystem::path& manifestFile);

// Recomputes the digest of every listed artifact. Missing or altered files
// land in problems; ok means none were found.
struct VerifyResult {
    bool ok = true;
    std::vector<std::string> problems;
};

VerifyResult verifyManifest(const std::filesystem::path& dir,
                            const std::string& manifestName = "manifest.txt");

} // namespace steelclust
