#include "themescope/textprep.hpp"

#include "themescope/lemma.hpp"
#include "themescope/util.hpp"

#include <unordered_map>

namespace themescope {

std::vector<std::pair<std::string, std::string>> merge_author_texts(const std::vector<RawText>& texts) {
    std::vector<std::pair<std::string, std::string>> merged;
    std::unordered_map<std::string, std::size_t> slot;
    for (const auto& text : texts) {
        auto [it, inserted] = slot.try_emplace(text.author_id, merged.size());
        if (inserted) {
            merged.emplace_back(text.author_id, text.body);
        } else {
            auto& body = merged[it->second].second;
            body.push_back('\n');
            body.append(text.body);
        }
    }
    return merged;
}

Document preprocess_tagged(std::string doc_id, const std::vector<Sentence>& sentences,
                           const VocabTest& vocab, const LemmaFn& lemmatizer,
                           const PreprocessConfig& config) {
    Document doc;
    doc.doc_id = std::move(doc_id);
    for (const auto& sentence : sentences) {
        for (const auto& token : sentence) {
            if (!config.content_pos_tags.count(token.tag)) continue;
            const std::string lower = util::to_lower(token.surface);
            if (lower.empty()) continue;

            std::string kept;
            if (vocab(lower) || (lower != token.surface && vocab(token.surface))) {
                kept = lower;
            } else {
                std::string lem = lemmatizer(lower);
                if (vocab(lem)) kept = std::move(lem);
            }
            if (kept.empty()) continue;
            if (config.exclusion_terms.count(kept)) continue;
            doc.tokens.push_back(std::move(kept));
        }
    }
    return doc;
}

Document preprocess_document(std::string doc_id, std::string_view body, const VocabTest& vocab,
                             const LemmaFn& lemmatizer, const PreprocessConfig& config) {
    return preprocess_tagged(std::move(doc_id), tag_text(body), vocab, lemmatizer, config);
}

std::vector<Document> filter_short_documents(std::vector<Document> docs, const PreprocessConfig& config) {
    std::vector<Document> kept;
    kept.reserve(docs.size());
    for (auto& doc : docs) {
        if (doc.token_count() >= config.min_tokens) kept.push_back(std::move(doc));
    }
    return kept;
}

VocabTest accept_all_vocab() {
    return [](const std::string& word) { return !word.empty(); };
}

LemmaFn builtin_lemmatizer() {
    return [](const std::string& word) {
        static const Lemmatizer lemmatizer;
        return lemmatizer.lemma(word);
    };
}

} // namespace themescope
