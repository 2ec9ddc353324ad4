#pragma once

// Independent brute-force reference implementations. These stay deliberately
// naive (nested loops, no shared code with the library) so they can arbitrate
// the optimized paths.

#include "themescope/colloc.hpp"
#include "themescope/textprep.hpp"
#include "themescope/util.hpp"

#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace oracle {

// tf-idf weight of every term of corpus[doc]: count in the document times
// ln(N / number of documents containing the term), all by direct scanning.
inline std::map<std::string, double> tfidf_weights(const std::vector<themescope::Document>& corpus,
                                                   std::size_t doc) {
    std::map<std::string, double> weights;
    const auto& target = corpus[doc];
    for (const auto& term : target.tokens) {
        if (weights.count(term)) continue;
        std::size_t count = 0;
        for (const auto& token : target.tokens) count += token == term;
        std::size_t containing = 0;
        for (const auto& other : corpus) {
            for (const auto& token : other.tokens) {
                if (token == term) {
                    ++containing;
                    break;
                }
            }
        }
        const double idf = std::log(static_cast<double>(corpus.size()) /
                                    static_cast<double>(containing));
        weights[term] = static_cast<double>(count) * idf;
    }
    return weights;
}

struct CollocCounts {
    long long seed_count = 0;
    long long total_tokens = 0;
    // (word, group) -> counts
    std::map<std::pair<std::string, themescope::PosGroup>, long long> frequency;
    std::map<std::pair<std::string, themescope::PosGroup>, long long> pairs;
};

inline CollocCounts window_counts(const std::vector<themescope::Sentence>& corpus,
                                  const std::string& seed, int window) {
    using themescope::pos_group_of;
    CollocCounts counts;
    const std::string seed_lower = themescope::util::to_lower(seed);
    for (const auto& sentence : corpus) {
        for (std::size_t i = 0; i < sentence.size(); ++i) {
            ++counts.total_tokens;
            const std::string lower = themescope::util::to_lower(sentence[i].surface);
            if (lower == seed_lower) ++counts.seed_count;
            if (auto group = pos_group_of(sentence[i].tag)) {
                ++counts.frequency[{lower, *group}];
            }
        }
        for (std::size_t i = 0; i < sentence.size(); ++i) {
            if (themescope::util::to_lower(sentence[i].surface) != seed_lower) continue;
            for (std::size_t j = 0; j < sentence.size(); ++j) {
                if (j == i) continue;
                const long long distance = j > i ? static_cast<long long>(j - i)
                                                 : static_cast<long long>(i - j);
                if (distance > window) continue;
                if (auto group = pos_group_of(sentence[j].tag)) {
                    ++counts.pairs[{themescope::util::to_lower(sentence[j].surface), *group}];
                }
            }
        }
    }
    return counts;
}

// AUC by enumerating every (positive, negative) pair; ties count one half.
inline double pairwise_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    double wins = 0.0;
    long long pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] != 1) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j] == 1) continue;
            ++pairs;
            if (scores[i] > scores[j]) wins += 1.0;
            else if (scores[i] == scores[j]) wins += 0.5;
        }
    }
    return wins / static_cast<double>(pairs);
}

} // namespace oracle
