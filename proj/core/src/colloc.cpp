#include "themescope/colloc.hpp"

#include "themescope/errors.hpp"
#include "themescope/util.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace themescope {

std::string_view to_string(PosGroup group) {
    switch (group) {
        case PosGroup::Adj: return "Adj";
        case PosGroup::Verb: return "Verb";
        case PosGroup::Noun: return "Noun";
        case PosGroup::Adv: return "Adv";
    }
    return "Adj";
}

PosGroup parse_pos_group(std::string_view s) {
    const std::string lower = util::to_lower(s);
    if (lower == "adj" || lower == "adjective") return PosGroup::Adj;
    if (lower == "verb") return PosGroup::Verb;
    if (lower == "noun") return PosGroup::Noun;
    if (lower == "adv" || lower == "adverb") return PosGroup::Adv;
    throw InputError("unknown POS group: \"" + std::string(s) + "\" (expected Adj|Verb|Noun|Adv)");
}

std::optional<PosGroup> pos_group_of(PosTag tag) {
    switch (tag) {
        case PosTag::Adj: return PosGroup::Adj;
        case PosTag::Verb: return PosGroup::Verb;
        case PosTag::Noun: return PosGroup::Noun;
        case PosTag::Adv: return PosGroup::Adv;
        default: return std::nullopt;
    }
}

double mutual_information(std::int64_t seed_count, std::int64_t word_count,
                          std::int64_t pair_count, std::int64_t total_tokens, int window) {
    if (seed_count == 0 || word_count == 0 || total_tokens == 0) {
        throw ZeroCount("mutual_information: seed_count, word_count and total_tokens must be > 0");
    }
    const double numerator = static_cast<double>(pair_count) * static_cast<double>(total_tokens);
    const double denominator = static_cast<double>(seed_count) * static_cast<double>(word_count) *
                               (2.0 * window);
    return std::log2(numerator / denominator);
}

std::vector<CollocationCandidate> extract_collocates(const std::vector<Sentence>& corpus,
                                                     const std::string& seed,
                                                     const CollocationConfig& config) {
    const std::string seed_lower = util::to_lower(seed);

    struct Key {
        std::string word;
        PosGroup group;
        bool operator<(const Key& o) const {
            if (group != o.group) return group < o.group;
            return word < o.word;
        }
    };

    std::int64_t total_tokens = 0;
    std::int64_t seed_count = 0;
    std::map<Key, std::int64_t> frequency;
    std::map<Key, std::int64_t> pairs;

    for (const auto& sentence : corpus) {
        std::vector<std::string> lowered(sentence.size());
        std::vector<std::size_t> seed_positions;
        for (std::size_t i = 0; i < sentence.size(); ++i) {
            lowered[i] = util::to_lower(sentence[i].surface);
            ++total_tokens;
            if (lowered[i] == seed_lower) {
                ++seed_count;
                seed_positions.push_back(i);
            }
            if (auto group = pos_group_of(sentence[i].tag)) {
                ++frequency[{lowered[i], *group}];
            }
        }
        for (std::size_t pos : seed_positions) {
            const std::size_t lo = pos >= static_cast<std::size_t>(config.window)
                                       ? pos - static_cast<std::size_t>(config.window)
                                       : 0;
            const std::size_t hi = std::min(sentence.size(), pos + static_cast<std::size_t>(config.window) + 1);
            for (std::size_t j = lo; j < hi; ++j) {
                if (j == pos) continue;
                if (auto group = pos_group_of(sentence[j].tag)) {
                    ++pairs[{lowered[j], *group}];
                }
            }
        }
    }

    if (seed_count == 0) throw SeedNotInCorpus("seed \"" + seed + "\" never occurs in the corpus");

    std::vector<CollocationCandidate> out;
    for (const auto& [key, pair_count] : pairs) {
        const std::int64_t freq = frequency.at(key);
        if (freq < config.freq_min) continue;
        const double mi = mutual_information(seed_count, freq, pair_count, total_tokens, config.window);
        if (mi < config.mi_min) continue;
        out.push_back({key.word, key.group, pair_count, freq, mi});
    }
    std::sort(out.begin(), out.end(), [](const CollocationCandidate& a, const CollocationCandidate& b) {
        if (a.pos_group != b.pos_group) return a.pos_group < b.pos_group;
        if (a.mi != b.mi) return a.mi > b.mi;
        return a.word < b.word;
    });
    return out;
}

std::string ThemeVector::label() const {
    return name + "_" + std::string(to_string(pos_group));
}

ThemeVector build_theme_vector(std::string name, PosGroup pos_group,
                               const std::vector<std::string>& curated_words) {
    ThemeVector theme;
    theme.name = std::move(name);
    theme.pos_group = pos_group;
    for (const auto& word : curated_words) {
        std::string lower = util::to_lower(word);
        if (lower.empty()) continue;
        if (std::find(theme.words.begin(), theme.words.end(), lower) == theme.words.end()) {
            theme.words.push_back(std::move(lower));
        }
    }
    if (theme.words.empty()) {
        throw EmptySelection("theme vector \"" + theme.name + "\" has no words");
    }
    return theme;
}

ThemeVector read_theme_file(const std::filesystem::path& path) {
    const auto lines = util::split_lines(util::read_file(path));
    if (lines.empty()) throw InputError("empty theme file: " + path.string());
    const std::size_t tab = lines[0].find('\t');
    if (tab == std::string::npos || tab == 0) {
        throw InputError(path.string() + ": first line must be `name<TAB>pos_group`");
    }
    std::vector<std::string> words;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (!lines[i].empty()) words.push_back(lines[i]);
    }
    return build_theme_vector(lines[0].substr(0, tab),
                              parse_pos_group(std::string_view(lines[0]).substr(tab + 1)), words);
}

void write_theme_file(const std::filesystem::path& path, const ThemeVector& theme) {
    std::string out = theme.name;
    out += '\t';
    out += to_string(theme.pos_group);
    out += '\n';
    for (const auto& word : theme.words) {
        out += word;
        out += '\n';
    }
    util::write_file_atomic(path, out);
}

const std::vector<std::string>& default_seed_words() {
    static const std::vector<std::string> seeds = {
        "Unjust", "Unfair", "Revenge", "Immoral", "Lonely", "Pleasure", "Humiliate", "Humiliated",
    };
    return seeds;
}

} // namespace themescope
