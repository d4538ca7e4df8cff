#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "steelclust/error.h"
#include "steelclust/manifest.h"

#include "test_support.h"

using namespace steelclust;

namespace {

void writeBytes(const std::filesystem::path& file, const std::string& bytes) {
    std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::string readBytes(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Straight-line restatement of the digest definition, kept independent of
// the library loop.
uint64_t referenceFnv(const std::string& bytes) {
    uint64_t hash = 0xcbf29ce484222325ULL;
    for (char c : bytes) {
        hash = (hash ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
    }
    return hash;
}

} // namespace

TEST_CASE("the digest of the empty string is the offset basis") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
}

TEST_CASE("string digests match an independent restatement") {
    for (const std::string& text :
         {std::string("a"), std::string("hello"), std::string("steelclust\n"),
          std::string("x\0y", 3)}) {
        CAPTURE(text.size());
        CHECK(fnv1a64(text) == referenceFnv(text));
    }
}

TEST_CASE("file digests equal the digest of the file bytes") {
    testsupport::TempDir tmp;
    const std::string payload =
        std::string("line one\n") + std::string("\x01\x02\x00", 3) + " binary tail";
    const auto file = tmp.path() / "blob.bin";
    writeBytes(file, payload);
    CHECK(digestFile(file) == fnv1a64(payload));
    CHECK(digestFile(file) == referenceFnv(payload));
}

TEST_CASE("unreadable files are reported") {
    testsupport::TempDir tmp;
    CHECK_THROWS_WITH_AS(digestFile(tmp.path() / "absent.bin"),
                         doctest::Contains("cannot read file"), Error);
}

TEST_CASE("manifests list sorted, double-spaced digest lines") {
    testsupport::TempDir tmp;
    writeBytes(tmp.path() / "b.txt", "beta");
    writeBytes(tmp.path() / "sub" / "a.txt", "alpha");
    writeManifest(tmp.path(), {"b.txt", "sub/a.txt"});

    const std::string text = readBytes(tmp.path() / "manifest.txt");
    std::string expected;
    {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx  b.txt\n",
                      static_cast<unsigned long long>(referenceFnv("beta")));
        expected += buf;
        std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx  sub/a.txt\n",
                      static_cast<unsigned long long>(referenceFnv("alpha")));
        expected += buf;
    }
    CHECK(text == expected);
}

TEST_CASE("manifests round-trip through the reader") {
    testsupport::TempDir tmp;
    writeBytes(tmp.path() / "one.csv", "a,b\n1,2\n");
    writeBytes(tmp.path() / "two.svg", "<svg/>");
    writeManifest(tmp.path(), {"two.svg", "one.csv"});

    const auto entries = readManifest(tmp.path() / "manifest.txt");
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].path == "one.csv");
    CHECK(entries[0].digest == referenceFnv("a,b\n1,2\n"));
    CHECK(entries[1].path == "two.svg");
    CHECK(entries[1].digest == referenceFnv("<svg/>"));
}

TEST_CASE("the reader tolerates blank lines and carriage returns") {
    testsupport::TempDir tmp;
    writeBytes(tmp.path() / "m.txt",
               "\nfnv1a64:00000000000000ff  data.csv\r\n\nfnv1a64:0000000000000001  z\n");
    const auto entries = readManifest(tmp.path() / "m.txt");
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].path == "data.csv");
    CHECK(entries[0].digest == 0xffULL);
    CHECK(entries[1].path == "z");
    CHECK(entries[1].digest == 1ULL);
}

TEST_CASE("malformed manifest lines are rejected with their line number") {
    testsupport::TempDir tmp;

    SUBCASE("wrong prefix") {
        writeBytes(tmp.path() / "m.txt", "sha256:0000000000000000  f\n");
        CHECK_THROWS_WITH_AS(readManifest(tmp.path() / "m.txt"),
                             doctest::Contains("malformed manifest line 1"), Error);
    }
    SUBCASE("bad hex digit") {
        writeBytes(tmp.path() / "m.txt",
                   "fnv1a64:0000000000000001  ok\nfnv1a64:00000000000000ZZ  f\n");
        CHECK_THROWS_WITH_AS(readManifest(tmp.path() / "m.txt"),
                             doctest::Contains("malformed manifest line 2"), Error);
    }
    SUBCASE("single space separator") {
        writeBytes(tmp.path() / "m.txt", "fnv1a64:0000000000000001 f\n");
        CHECK_THROWS_AS(readManifest(tmp.path() / "m.txt"), Error);
    }
    SUBCASE("missing manifest") {
        CHECK_THROWS_WITH_AS(readManifest(tmp.path() / "nope.txt"),
                             doctest::Contains("cannot read manifest"), Error);
    }
}

TEST_CASE("verification distinguishes intact, altered, and missing artifacts") {
    testsupport::TempDir tmp;
    writeBytes(tmp.path() / "keep.txt", "constant");
    writeBytes(tmp.path() / "edit.txt", "original");
    writeBytes(tmp.path() / "lose.txt", "ephemeral");
    writeManifest(tmp.path(), {"keep.txt", "edit.txt", "lose.txt"});

    auto clean = verifyManifest(tmp.path());
    CHECK(clean.ok);
    CHECK(clean.problems.empty());

    writeBytes(tmp.path() / "edit.txt", "tampered");
    std::filesystem::remove(tmp.path() / "lose.txt");

    const auto result = verifyManifest(tmp.path());
    CHECK(!result.ok);
    REQUIRE(result.problems.size() == 2);
    CHECK(result.problems[0] == "digest mismatch: edit.txt");
    CHECK(result.problems[1] == "missing: lose.txt");
}

TEST_CASE("writing a manifest over an unreadable artifact fails") {
    testsupport::TempDir tmp;
    CHECK_THROWS_WITH_AS(writeManifest(tmp.path(), {"ghost.bin"}),
                         doctest::Contains("cannot read file"), Error);
}
