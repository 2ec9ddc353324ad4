#pragma once

#include "themescope/text.hpp"

#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace themescope {

struct RawText {
    std::string author_id;
    std::string body;
};

/// One author's merged text reduced to lowercase content tokens.
struct Document {
    std::string doc_id;
    std::vector<std::string> tokens;

    std::size_t token_count() const { return tokens.size(); }
};

struct PreprocessConfig {
    std::set<PosTag> content_pos_tags = {PosTag::Noun, PosTag::Verb, PosTag::Adj, PosTag::Adv};
    std::size_t min_tokens = 100;
    std::unordered_set<std::string> exclusion_terms;
};

/// True when the word is in the reference vocabulary. Receives the token
/// exactly as spelled; implementations decide their own case policy (the
/// embedding-backed test tries lowercase first, then the original spelling).
using VocabTest = std::function<bool(const std::string&)>;

/// Total word -> base-form mapping; must return its input when no rule applies.
using LemmaFn = std::function<std::string(const std::string&)>;

/// Groups texts by author, keeping first-appearance order. Bodies of the
/// same author are joined with a newline in input order.
std::vector<std::pair<std::string, std::string>> merge_author_texts(const std::vector<RawText>& texts);

/// Tokenize/tag with the built-in tagger, then reduce to content tokens:
/// keep the lowercased surface when the vocabulary contains it, otherwise
/// its lemma when the vocabulary contains that, otherwise drop. Exclusion
/// terms are removed after this normalization.
Document preprocess_document(std::string doc_id, std::string_view body, const VocabTest& vocab,
                             const LemmaFn& lemmatizer, const PreprocessConfig& config);

/// Same reduction for text that arrives already tagged.
Document preprocess_tagged(std::string doc_id, const std::vector<Sentence>& sentences,
                           const VocabTest& vocab, const LemmaFn& lemmatizer,
                           const PreprocessConfig& config);

/// Keeps documents with token_count >= config.min_tokens, order preserved.
std::vector<Document> filter_short_documents(std::vector<Document> docs, const PreprocessConfig& config);

/// VocabTest that accepts every non-empty token (used when no reference
/// vocabulary is configured).
VocabTest accept_all_vocab();

/// LemmaFn backed by the built-in Lemmatizer.
LemmaFn builtin_lemmatizer();

} // namespace themescope
