#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace themescope {

/// Immutable word -> dense-vector table loaded from a word2vec-style file.
/// Lookups and similarity calls are read-only and thread-safe.
class EmbeddingTable {
public:
    enum class Format { text, binary };

    /// `.bin` -> binary, anything else -> text.
    static Format infer_format(const std::filesystem::path& path);

    /// Throws MalformedHeader, DimensionMismatch, DuplicateWord or ZeroVector.
    static EmbeddingTable load(const std::filesystem::path& path, Format format);

    /// Builds a table in memory under the same invariants as load().
    static EmbeddingTable from_rows(
        std::size_t dimension,
        const std::vector<std::pair<std::string, std::vector<float>>>& rows);

    std::size_t dimension() const { return dimension_; }
    std::size_t size() const { return words_.size(); }

    /// Words in file order.
    const std::vector<std::string>& words() const { return words_; }

    /// Exact lookup; nullptr when absent.
    const float* find(const std::string& word) const;

    /// Pipeline lookup policy: lowercase form first, then the original
    /// spelling. Returns nullptr when both miss.
    const float* resolve(const std::string& word) const;

    bool contains(const std::string& word) const { return resolve(word) != nullptr; }

    std::span<const float> vector_at(std::size_t i) const {
        return {vectors_.data() + i * dimension_, dimension_};
    }

    /// word2vec text format, floats printed at round-trip precision.
    void save_text(const std::filesystem::path& path) const;

    /// word2vec binary format (ASCII header, little-endian float32 rows).
    void save_binary(const std::filesystem::path& path) const;

private:
    std::size_t dimension_ = 0;
    std::vector<std::string> words_;
    std::vector<float> vectors_; // size() * dimension_, row-major
    std::unordered_map<std::string, std::size_t> index_;

    void insert_row(std::string word, std::vector<float> vec, std::size_t lineno);
};

/// dot(a, b) / (|a| |b|), accumulated in double. Throws ZeroNorm.
double cosine_similarity(std::span<const float> a, std::span<const float> b);

/// Cosine similarity between two stored words. Throws WordNotFound naming
/// the missing word; lookup follows EmbeddingTable::resolve.
double cosine_similarity(const std::string& w1, const std::string& w2, const EmbeddingTable& table);

/// Association form used when scoring. `cosine` is the toolkit default;
/// `one_minus_cosine` reproduces the literal formula some setups report
/// (a distance: lower = more similar) and exists for replication runs.
enum class SimilarityForm { cosine, one_minus_cosine };

double pair_similarity(std::span<const float> a, std::span<const float> b, SimilarityForm form);

} // namespace themescope
