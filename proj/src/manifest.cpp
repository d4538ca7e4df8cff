#include "steelclust/manifest.h"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "steelclust/error.h"

namespace steelclust {

namespace {

constexpr uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr uint64_t kFnvPrime = 1099511628211ULL;
constexpr const char* kDigestPrefix = "fnv1a64:";

std::string formatDigest(uint64_t digest) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(digest));
    return buf;
}

} // namespace

uint64_t fnv1a64(std::string_view bytes) {
    uint64_t hash = kFnvOffset;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= kFnvPrime;
    }
    return hash;
}

uint64_t digestFile(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error("cannot read file " + file.string());
    uint64_t hash = kFnvOffset;
    char buf[65536];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= kFnvPrime;
        }
    }
    return hash;
}

void writeManifest(const std::filesystem::path& dir, std::vector<std::string> relPaths,
                   const std::string& manifestName) {
    std::sort(relPaths.begin(), relPaths.end());
    std::string text;
    for (const std::string& rel : relPaths) {
        text += kDigestPrefix;
        text += formatDigest(digestFile(dir / rel));
        text += "  ";
        text += rel;
        text += '\n';
    }
    std::ofstream out(dir / manifestName, std::ios::binary);
    if (!out) throw Error("cannot write manifest in " + dir.string());
    out << text;
}

std::vector<ManifestEntry> readManifest(const std::filesystem::path& manifestFile) {
    std::ifstream in(manifestFile, std::ios::binary);
    if (!in) throw Error("cannot read manifest " + manifestFile.string());
    std::vector<ManifestEntry> entries;
    std::string line;
    size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string prefix = kDigestPrefix;
        const size_t hexLen = 16;
        if (line.size() < prefix.size() + hexLen + 2 || line.compare(0, prefix.size(), prefix) != 0 ||
            line.compare(prefix.size() + hexLen, 2, "  ") != 0) {
            throw Error("malformed manifest line " + std::to_string(lineNo));
        }
        ManifestEntry entry;
        entry.path = line.substr(prefix.size() + hexLen + 2);
        uint64_t digest = 0;
        for (size_t i = 0; i < hexLen; ++i) {
            const char c = line[prefix.size() + i];
            digest <<= 4;
            if (c >= '0' && c <= '9') {
                digest |= static_cast<uint64_t>(c - '0');
            } else if (c >= 'a' && c <= 'f') {
                digest |= static_cast<uint64_t>(c - 'a' + 10);
            } else {
                throw Error("malformed manifest line " + std::to_string(lineNo));
            }
        }
        entry.digest = digest;
        entries.push_back(std::move(entry));
    }
    return entries;
}

VerifyResult verifyManifest(const std::filesystem::path& dir, const std::string& manifestName) {
    VerifyResult result;
    for (const ManifestEntry& entry : readManifest(dir / manifestName)) {
        const std::filesystem::path file = dir / entry.path;
        if (!std::filesystem::exists(file)) {
            result.problems.push_back("missing: " + entry.path);
            continue;
        }
        if (digestFile(file) != entry.digest) {
            result.problems.push_back("digest mismatch: " + entry.path);
        }
    }
    result.ok = result.problems.empty();
    return result;
}

} // namespace steelclust
