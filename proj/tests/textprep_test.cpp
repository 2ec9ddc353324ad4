#include "themescope/textprep.hpp"

#include "themescope/errors.hpp"
#include "themescope/lemma.hpp"
#include "themescope/util.hpp"

#include <doctest.h>

#include <set>

using namespace themescope;

namespace {

VocabTest set_vocab(std::set<std::string> words) {
    return [words = std::move(words)](const std::string& w) { return words.count(w) > 0; };
}

} // namespace

TEST_CASE("merge_author_texts groups by author in first-appearance order") {
    const std::vector<RawText> texts = {{"A", "t1"}, {"A", "t2"}, {"B", "t3"}};
    const auto merged = merge_author_texts(texts);
    REQUIRE(merged.size() == 2);
    CHECK(merged[0].first == "A");
    CHECK(merged[0].second == "t1\nt2");
    CHECK(merged[1].first == "B");
    CHECK(merged[1].second == "t3");
}

TEST_CASE("merge_author_texts identity and empty cases") {
    const auto single = merge_author_texts({{"A", "only"}});
    REQUIRE(single.size() == 1);
    CHECK(single[0].second == "only");
    CHECK(merge_author_texts({}).empty());
}

TEST_CASE("merge_author_texts is idempotent on already-merged input") {
    const std::vector<RawText> texts = {{"A", "x"}, {"B", "y"}, {"A", "z"}};
    const auto once = merge_author_texts(texts);
    std::vector<RawText> remerged;
    for (const auto& [author, body] : once) remerged.push_back({author, body});
    CHECK(merge_author_texts(remerged) == once);
}

TEST_CASE("preprocess_document applies POS filter, vocab and lemma fallback") {
    PreprocessConfig config;
    const auto doc = preprocess_document("d", "The dogs ran quickly",
                                         set_vocab({"dog", "run", "quickly"}),
                                         builtin_lemmatizer(), config);
    CHECK(doc.tokens == std::vector<std::string>{"dog", "run", "quickly"});
    CHECK(doc.token_count() == 3);
}

TEST_CASE("preprocess_document trivia") {
    PreprocessConfig config;
    CHECK(preprocess_document("d", "", accept_all_vocab(), builtin_lemmatizer(), config)
              .tokens.empty());
    CHECK(preprocess_document("d", "of the and", accept_all_vocab(), builtin_lemmatizer(), config)
              .tokens.empty());
}

TEST_CASE("preprocess_document exclusion removes normalized forms") {
    PreprocessConfig config;
    config.exclusion_terms = {"revenge", "revenges", "revenged", "revenging",
                              "avenge",  "avenged",  "avenges",  "avenging"};
    const auto doc = preprocess_document("d", "sweet revenge", set_vocab({"sweet", "revenge"}),
                                         builtin_lemmatizer(), config);
    CHECK(doc.tokens == std::vector<std::string>{"sweet"});
}

TEST_CASE("preprocess output respects vocab membership and exclusion") {
    // every emitted token must pass the vocabulary (surface or lemma) and
    // never equal an exclusion term
    const std::set<std::string> vocab = {"dog", "run", "cat", "bad", "fight", "house"};
    PreprocessConfig config;
    config.exclusion_terms = {"cat"};
    const auto doc = preprocess_document(
        "d", "Dogs fight. The cats ran home to bad houses, fighting.", set_vocab(vocab),
        builtin_lemmatizer(), config);
    CHECK(!doc.tokens.empty());
    for (const auto& token : doc.tokens) {
        CHECK(vocab.count(token) == 1);
        CHECK(config.exclusion_terms.count(token) == 0);
    }
}

TEST_CASE("preprocess vocab falls back to original case") {
    // vocabulary holds the capitalized spelling only
    PreprocessConfig config;
    const auto doc = preprocess_document("d", "talked to London", set_vocab({"London"}),
                                         builtin_lemmatizer(), config);
    CHECK(doc.tokens == std::vector<std::string>{"london"});
}

TEST_CASE("preprocess_tagged consumes pre-tagged sentences") {
    const auto sentences = parse_pretagged("dogs\tNNS\nran\tVBD\n\nquickly\tRB\n");
    REQUIRE(sentences.size() == 2);
    PreprocessConfig config;
    const auto doc = preprocess_tagged("d", sentences, set_vocab({"dog", "run", "quickly"}),
                                       builtin_lemmatizer(), config);
    CHECK(doc.tokens == std::vector<std::string>{"dog", "run", "quickly"});
}

TEST_CASE("parse_pretagged rejects malformed lines") {
    CHECK_THROWS_AS(parse_pretagged("no-tab-here\n"), InputError);
}

TEST_CASE("filter_short_documents keeps the 100-token boundary inclusive") {
    PreprocessConfig config; // min_tokens = 100
    Document doc99{"a", std::vector<std::string>(99, "w")};
    Document doc100{"b", std::vector<std::string>(100, "w")};
    Document doc0{"c", {}};
    const auto kept = filter_short_documents({doc99, doc100, doc0}, config);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].doc_id == "b");
}

TEST_CASE("filter_short_documents is a pure order-preserving filter") {
    PreprocessConfig config;
    config.min_tokens = 2;
    std::vector<Document> docs;
    for (int i = 0; i < 20; ++i) {
        docs.push_back({"d" + std::to_string(i),
                        std::vector<std::string>(static_cast<std::size_t>(i % 5), "w")});
    }
    const auto kept = filter_short_documents(docs, config);
    CHECK(kept.size() <= docs.size());
    // every kept doc appears in the original order
    std::size_t cursor = 0;
    for (const auto& doc : kept) {
        while (cursor < docs.size() && docs[cursor].doc_id != doc.doc_id) ++cursor;
        REQUIRE(cursor < docs.size());
        CHECK(doc.token_count() >= 2);
    }
}

TEST_CASE("tokenizer keeps hyphenated compounds and splits punctuation") {
    const auto sentences = split_sentences("A self-esteem boost, don't you think? Yes!");
    REQUIRE(sentences.size() == 3);
    CHECK(sentences[0] == std::vector<std::string>{"A", "self-esteem", "boost", "don't", "you",
                                                   "think"});
    CHECK(sentences[1] == std::vector<std::string>{"Yes"});
}

TEST_CASE("tokenizer treats curly quotes and dashes as separators") {
    const auto sentences = split_sentences("wrath—fury “quoted” don’t");
    REQUIRE(sentences.size() == 1);
    CHECK(sentences[0] ==
          std::vector<std::string>{"wrath", "fury", "quoted", "don't"});
}

TEST_CASE("built-in tagger covers the documented examples") {
    const Tagger& tagger = Tagger::builtin();
    const auto tagged = tagger.tag({"The", "dogs", "ran", "quickly"});
    CHECK(tagged[0].tag == PosTag::Det);
    CHECK(tagged[1].tag == PosTag::Noun);
    CHECK(tagged[2].tag == PosTag::Verb);
    CHECK(tagged[3].tag == PosTag::Adv);

    const auto function_words = tagger.tag({"of", "the", "and"});
    CHECK(function_words[0].tag == PosTag::Adp);
    CHECK(function_words[1].tag == PosTag::Det);
    CHECK(function_words[2].tag == PosTag::Conj);
}

TEST_CASE("pos tag parsing accepts UD, Penn and coarse names") {
    CHECK(parse_pos_tag("NN") == PosTag::Noun);
    CHECK(parse_pos_tag("NNS") == PosTag::Noun);
    CHECK(parse_pos_tag("VBD") == PosTag::Verb);
    CHECK(parse_pos_tag("JJ") == PosTag::Adj);
    CHECK(parse_pos_tag("RB") == PosTag::Adv);
    CHECK(parse_pos_tag("PROPN") == PosTag::Noun);
    CHECK(parse_pos_tag("adj") == PosTag::Adj);
    CHECK(parse_pos_tag("gibberish") == PosTag::Other);
}

TEST_CASE("lemmatizer rules and exceptions") {
    const Lemmatizer lemmatizer;
    CHECK(lemmatizer.lemma("dogs") == "dog");
    CHECK(lemmatizer.lemma("ran") == "run");
    CHECK(lemmatizer.lemma("bodies") == "body");
    CHECK(lemmatizer.lemma("classes") == "class");
    CHECK(lemmatizer.lemma("houses") == "house");
    CHECK(lemmatizer.lemma("running") == "run");
    CHECK(lemmatizer.lemma("falling") == "fall");
    CHECK(lemmatizer.lemma("walked") == "walk");
    CHECK(lemmatizer.lemma("went") == "go");
    CHECK(lemmatizer.lemma("run") == "run"); // total: unchanged when no rule applies
}
