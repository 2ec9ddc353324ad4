#pragma once

#include "themescope/text.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace themescope {

/// Collocate-search groups, in the order corpus tools report them.
enum class PosGroup { Adj, Verb, Noun, Adv };

std::string_view to_string(PosGroup group);
PosGroup parse_pos_group(std::string_view s);

/// Content tags map onto a group; everything else has none.
std::optional<PosGroup> pos_group_of(PosTag tag);

struct CollocationConfig {
    int window = 4;      // tokens each side of the seed, within a sentence
    double mi_min = 3.0; // inclusive
    int freq_min = 10;   // inclusive, on corpus frequency
};

struct CollocationCandidate {
    std::string word;
    PosGroup pos_group;
    std::int64_t cooccurrence_count = 0;
    std::int64_t corpus_frequency = 0;
    double mi = 0.0;
};

/// Pointwise, window-normalized base-2 association score:
///   log2( pair_count * total_tokens / (seed_count * word_count * 2*window) )
/// This is the scale corpus query tools report, the one the usual >= 3
/// threshold applies to. Throws ZeroCount when any marginal count is zero.
double mutual_information(std::int64_t seed_count, std::int64_t word_count,
                          std::int64_t pair_count, std::int64_t total_tokens, int window);

/// Counts, for every content word, its co-occurrences with `seed` within
/// +/-window tokens (never across a sentence boundary), then keeps candidates
/// with mi >= mi_min and corpus_frequency >= freq_min. Word identity is the
/// lowercased surface plus its POS group; the seed matches as an exact
/// (lowercased) token regardless of POS. Each (seed position, word position)
/// pair in range counts once. Output is ordered by group, then mi descending,
/// then word. Throws SeedNotInCorpus when the seed never occurs.
std::vector<CollocationCandidate> extract_collocates(const std::vector<Sentence>& corpus,
                                                     const std::string& seed,
                                                     const CollocationConfig& config);

/// A named, POS-tagged curated word list representing one theme dimension.
struct ThemeVector {
    std::string name;
    PosGroup pos_group = PosGroup::Adj;
    std::vector<std::string> words;

    /// "Revenge_Adj"
    std::string label() const;
};

/// Lowercases and de-duplicates (first occurrence wins). Throws
/// EmptySelection when no words remain.
ThemeVector build_theme_vector(std::string name, PosGroup pos_group,
                               const std::vector<std::string>& curated_words);

/// Theme-vector file: first line `name<TAB>pos_group`, then one word per line.
ThemeVector read_theme_file(const std::filesystem::path& path);
void write_theme_file(const std::filesystem::path& path, const ThemeVector& theme);

/// The eight seed words the CLI ships as defaults.
const std::vector<std::string>& default_seed_words();

} // namespace themescope
