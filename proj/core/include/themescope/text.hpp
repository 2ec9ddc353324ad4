#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace themescope {

/// Coarse part-of-speech categories. Noun/Verb/Adj/Adv are the content
/// categories the pipeline keeps; the rest exist so taggers can be explicit
/// about what they drop.
enum class PosTag {
    Noun,
    Verb,
    Adj,
    Adv,
    Pron,
    Det,
    Adp,
    Conj,
    Num,
    Part,
    Intj,
    Punct,
    Other,
};

std::string_view to_string(PosTag tag);

/// Accepts coarse names ("NOUN", "Adj"), UD tags (PROPN, AUX, CCONJ, ...) and
/// Penn Treebank tags (NN*, VB*, JJ*, RB*, DT, IN, ...). Unknown -> Other.
PosTag parse_pos_tag(std::string_view s);

struct TaggedToken {
    std::string surface;
    PosTag tag = PosTag::Other;
};

using Sentence = std::vector<TaggedToken>;

/// Splits text into sentences of surface tokens. Tokens are maximal runs of
/// word characters; internal hyphens and apostrophes keep compounds whole
/// ("self-esteem", "don't"). Sentences end at ./!/? runs or at line breaks.
std::vector<std::vector<std::string>> split_sentences(std::string_view text);

/// Compact built-in tagger: a closed-class lexicon, an irregular-verb list
/// and suffix heuristics, with a one-step context fix after determiners.
/// It is approximate by construction; for replication-grade tagging feed
/// pre-tagged input (see parse_pretagged) from the tagger of your choice.
class Tagger {
public:
    static const Tagger& builtin();

    Sentence tag(const std::vector<std::string>& tokens) const;

    /// Tags a single word given the previous token's tag.
    PosTag tag_word(const std::string& lower, PosTag prev) const;

private:
    Tagger();
};

/// Full path for raw text: segment, tokenize, tag with the built-in tagger.
std::vector<Sentence> tag_text(std::string_view text);

/// Parses the pre-tagged exchange format: one `surface<TAB>POS` pair per
/// line, blank line between sentences. Throws InputError on malformed lines.
std::vector<Sentence> parse_pretagged(std::string_view contents);

} // namespace themescope
