#include "themescope/embedding.hpp"

#include "themescope/errors.hpp"
#include "themescope/util.hpp"
#include "support/tmpdir.hpp"

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <span>

using namespace themescope;
using testsupport::TmpDir;

namespace {

std::filesystem::path write_text(const TmpDir& dir, const std::string& name,
                                 const std::string& contents) {
    const auto path = dir.file(name);
    std::ofstream out(path, std::ios::binary);
    out << contents;
    return path;
}

} // namespace

TEST_CASE("load parses the text format") {
    TmpDir dir("emb");
    const auto path = write_text(dir, "t.txt", "2 3\ncat 1 0 0\ndog 0 1 0\n");
    const auto table = EmbeddingTable::load(path, EmbeddingTable::Format::text);
    CHECK(table.size() == 2);
    CHECK(table.dimension() == 3);
    CHECK(table.find("cat") != nullptr);
    CHECK(table.find("dog") != nullptr);
    CHECK(table.find("fox") == nullptr);
}

TEST_CASE("load error contracts") {
    TmpDir dir("emb");
    CHECK_THROWS_AS(EmbeddingTable::load(write_text(dir, "a.txt", "1 3\ncat 1 0\n"),
                                         EmbeddingTable::Format::text),
                    DimensionMismatch);
    CHECK_THROWS_AS(EmbeddingTable::load(write_text(dir, "b.txt", "2 2\ncat 1 0\ncat 0 1\n"),
                                         EmbeddingTable::Format::text),
                    DuplicateWord);
    CHECK_THROWS_AS(EmbeddingTable::load(write_text(dir, "c.txt", "bogus\ncat 1 0\n"),
                                         EmbeddingTable::Format::text),
                    MalformedHeader);
    CHECK_THROWS_AS(EmbeddingTable::load(write_text(dir, "d.txt", "1 2\ncat 0 0\n"),
                                         EmbeddingTable::Format::text),
                    ZeroVector);
}

TEST_CASE("format inference by extension") {
    CHECK(EmbeddingTable::infer_format("w.bin") == EmbeddingTable::Format::binary);
    CHECK(EmbeddingTable::infer_format("w.txt") == EmbeddingTable::Format::text);
    CHECK(EmbeddingTable::infer_format("w.vec") == EmbeddingTable::Format::text);
}

TEST_CASE("text round-trip reproduces vectors bitwise") {
    TmpDir dir("emb");
    const auto path =
        write_text(dir, "t.txt", "3 2\na 0.125 -7.25\nb 1e-7 3.14159274\nc -0 42\n");
    const auto table = EmbeddingTable::load(path, EmbeddingTable::Format::text);
    table.save_text(dir.file("round.txt"));
    const auto again = EmbeddingTable::load(dir.file("round.txt"), EmbeddingTable::Format::text);
    REQUIRE(again.size() == table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        CHECK(again.words()[i] == table.words()[i]);
        const auto a = table.vector_at(i);
        const auto b = again.vector_at(i);
        for (std::size_t k = 0; k < table.dimension(); ++k) CHECK(a[k] == b[k]);
    }
}

TEST_CASE("binary round-trip is exact") {
    TmpDir dir("emb");
    const auto path = write_text(dir, "t.txt", "2 3\ncat 0.1 -0.2 0.3\ndog 7 -8 9.5\n");
    const auto table = EmbeddingTable::load(path, EmbeddingTable::Format::text);
    table.save_binary(dir.file("t.bin"));
    const auto again = EmbeddingTable::load(dir.file("t.bin"), EmbeddingTable::Format::binary);
    REQUIRE(again.size() == 2);
    REQUIRE(again.dimension() == 3);
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto a = table.vector_at(i);
        const auto b = again.vector_at(i);
        for (std::size_t k = 0; k < 3; ++k) CHECK(a[k] == b[k]);
    }
}

TEST_CASE("cosine similarity fixtures") {
    const auto table = EmbeddingTable::from_rows(2, {
        {"x", {1.0f, 0.0f}},
        {"y", {0.0f, 1.0f}},
        {"xy", {1.0f, 1.0f}},
        {"negx", {-1.0f, 0.0f}},
        {"x2", {1.0f, 0.0f}},
    });
    CHECK(cosine_similarity("x", "x2", table) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cosine_similarity("x", "y", table) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cosine_similarity("xy", "x", table) == doctest::Approx(0.7071067).epsilon(1e-6));
    CHECK(cosine_similarity("x", "negx", table) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("cosine similarity is symmetric and bounded") {
    util::Rng rng(7);
    for (int round = 0; round < 50; ++round) {
        std::vector<float> a(8), b(8);
        for (auto& v : a) v = static_cast<float>(rng.real() * 2.0 - 1.0);
        for (auto& v : b) v = static_cast<float>(rng.real() * 2.0 - 1.0);
        if (std::all_of(a.begin(), a.end(), [](float x) { return x == 0.0f; })) a[0] = 1.0f;
        if (std::all_of(b.begin(), b.end(), [](float x) { return x == 0.0f; })) b[0] = 1.0f;
        const double ab = cosine_similarity(std::span<const float>(a), std::span<const float>(b));
        const double ba = cosine_similarity(std::span<const float>(b), std::span<const float>(a));
        CHECK(ab == ba);
        CHECK(ab >= -1.0);
        CHECK(ab <= 1.0);
    }
}

TEST_CASE("cosine similarity is invariant under positive scaling") {
    util::Rng rng(11);
    std::vector<std::pair<std::string, std::vector<float>>> rows;
    for (int i = 0; i < 10; ++i) {
        std::vector<float> v(6);
        for (auto& x : v) x = static_cast<float>(rng.real() * 2.0 - 1.0 + 0.01);
        rows.emplace_back("w" + std::to_string(i), v);
    }
    auto scaled_rows = rows;
    for (auto& [word, v] : scaled_rows) {
        for (auto& x : v) x *= 4.0f; // power of two: exact in float
    }
    const auto table = EmbeddingTable::from_rows(6, rows);
    const auto scaled = EmbeddingTable::from_rows(6, scaled_rows);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows.size(); ++j) {
            const double s1 = cosine_similarity(rows[i].first, rows[j].first, table);
            const double s2 = cosine_similarity(rows[i].first, rows[j].first, scaled);
            CHECK(s1 == doctest::Approx(s2).epsilon(1e-9));
        }
    }
}

TEST_CASE("missing words are reported by name") {
    const auto table = EmbeddingTable::from_rows(2, {{"cat", {1.0f, 0.0f}}});
    try {
        cosine_similarity("cat", "unicorn", table);
        FAIL("expected WordNotFound");
    } catch (const WordNotFound& e) {
        CHECK(e.word() == "unicorn");
    }
}

TEST_CASE("lookup tries lowercase first, then original case") {
    const auto table = EmbeddingTable::from_rows(2, {
        {"Paris", {1.0f, 0.0f}},
        {"berlin", {0.0f, 1.0f}},
        {"rome", {1.0f, 1.0f}},
        {"Rome", {-1.0f, 1.0f}},
    });
    CHECK(table.resolve("Paris") == table.find("Paris")); // lowercase miss, original hit
    CHECK(table.resolve("Berlin") == table.find("berlin"));
    CHECK(table.resolve("Rome") == table.find("rome")); // lowercase wins when present
    CHECK(table.resolve("madrid") == nullptr);
}

TEST_CASE("one_minus_cosine form is the literal replication variant") {
    const auto table = EmbeddingTable::from_rows(2, {{"a", {1.0f, 0.0f}}, {"b", {0.0f, 1.0f}}});
    const auto va = std::span<const float>(table.find("a"), 2);
    const auto vb = std::span<const float>(table.find("b"), 2);
    CHECK(pair_similarity(va, vb, SimilarityForm::cosine) == doctest::Approx(0.0));
    CHECK(pair_similarity(va, vb, SimilarityForm::one_minus_cosine) == doctest::Approx(1.0));
    CHECK(pair_similarity(va, va, SimilarityForm::one_minus_cosine) == doctest::Approx(0.0));
}
