#include "themescope/text.hpp"

#include "themescope/errors.hpp"
#include "themescope/util.hpp"

#include <array>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

namespace themescope {

std::string_view to_string(PosTag tag) {
    switch (tag) {
        case PosTag::Noun: return "NOUN";
        case PosTag::Verb: return "VERB";
        case PosTag::Adj: return "ADJ";
        case PosTag::Adv: return "ADV";
        case PosTag::Pron: return "PRON";
        case PosTag::Det: return "DET";
        case PosTag::Adp: return "ADP";
        case PosTag::Conj: return "CONJ";
        case PosTag::Num: return "NUM";
        case PosTag::Part: return "PART";
        case PosTag::Intj: return "INTJ";
        case PosTag::Punct: return "PUNCT";
        case PosTag::Other: return "X";
    }
    return "X";
}

PosTag parse_pos_tag(std::string_view s) {
    std::string up;
    up.reserve(s.size());
    for (char c : s) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));

    static const std::unordered_map<std::string, PosTag> exact = {
        {"NOUN", PosTag::Noun},  {"PROPN", PosTag::Noun}, {"VERB", PosTag::Verb},
        {"AUX", PosTag::Verb},   {"ADJ", PosTag::Adj},    {"ADV", PosTag::Adv},
        {"PRON", PosTag::Pron},  {"DET", PosTag::Det},    {"ADP", PosTag::Adp},
        {"CONJ", PosTag::Conj},  {"CCONJ", PosTag::Conj}, {"SCONJ", PosTag::Conj},
        {"NUM", PosTag::Num},    {"PART", PosTag::Part},  {"INTJ", PosTag::Intj},
        {"PUNCT", PosTag::Punct},{"SYM", PosTag::Other},  {"X", PosTag::Other},
        // Penn tags without a prefix rule
        {"DT", PosTag::Det},     {"PDT", PosTag::Det},    {"IN", PosTag::Adp},
        {"CC", PosTag::Conj},    {"CD", PosTag::Num},     {"TO", PosTag::Part},
        {"UH", PosTag::Intj},    {"MD", PosTag::Verb},    {"EX", PosTag::Other},
        {"POS", PosTag::Part},   {"WDT", PosTag::Det},    {"WP", PosTag::Pron},
        {"WP$", PosTag::Pron},   {"WRB", PosTag::Adv},    {"FW", PosTag::Other},
        {"LS", PosTag::Other},   {"RP", PosTag::Part},
    };
    if (auto it = exact.find(up); it != exact.end()) return it->second;
    if (up.rfind("NN", 0) == 0) return PosTag::Noun;
    if (up.rfind("VB", 0) == 0) return PosTag::Verb;
    if (up.rfind("JJ", 0) == 0) return PosTag::Adj;
    if (up.rfind("RB", 0) == 0) return PosTag::Adv;
    if (up.rfind("PRP", 0) == 0) return PosTag::Pron;
    if (!up.empty() && std::ispunct(static_cast<unsigned char>(up[0]))) return PosTag::Punct;
    return PosTag::Other;
}

namespace {

// Minimal UTF-8 codepoint decode; returns byte length consumed.
std::size_t decode_utf8(std::string_view s, std::size_t i, char32_t& cp) {
    const unsigned char b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        cp = b0;
        return 1;
    }
    std::size_t len = 0;
    if ((b0 & 0xe0) == 0xc0) { cp = b0 & 0x1f; len = 2; }
    else if ((b0 & 0xf0) == 0xe0) { cp = b0 & 0x0f; len = 3; }
    else if ((b0 & 0xf8) == 0xf0) { cp = b0 & 0x07; len = 4; }
    else { cp = 0xfffd; return 1; }
    if (i + len > s.size()) { cp = 0xfffd; return 1; }
    for (std::size_t k = 1; k < len; ++k) {
        const unsigned char b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xc0) != 0x80) { cp = 0xfffd; return 1; }
        cp = (cp << 6) | (b & 0x3f);
    }
    return len;
}

bool is_word_codepoint(char32_t cp) {
    if (cp < 0x80) {
        return std::isalnum(static_cast<int>(cp)) != 0 || cp == '_';
    }
    // General punctuation (dashes, curly quotes, ellipsis) and a few common
    // punctuation blocks split tokens; everything else non-ASCII is a letter.
    if (cp >= 0x2000 && cp <= 0x206f) return false;
    if (cp == 0x00ab || cp == 0x00bb || cp == 0x00a1 || cp == 0x00bf) return false;
    if (cp >= 0x3000 && cp <= 0x303f) return false;
    return true;
}

bool is_joiner(char32_t cp) {
    return cp == '\'' || cp == '-' || cp == 0x2019; // ASCII apostrophe/hyphen, curly apostrophe
}

struct Scanned {
    std::vector<std::vector<std::string>> sentences;
};

} // namespace

std::vector<std::vector<std::string>> split_sentences(std::string_view text) {
    std::vector<std::vector<std::string>> sentences;
    std::vector<std::string> current;
    std::string token;

    auto flush_token = [&] {
        if (!token.empty()) {
            current.push_back(std::move(token));
            token.clear();
        }
    };
    auto flush_sentence = [&] {
        flush_token();
        if (!current.empty()) {
            sentences.push_back(std::move(current));
            current.clear();
        }
    };

    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        char32_t cp;
        const std::size_t len = decode_utf8(text, i, cp);
        if (is_word_codepoint(cp)) {
            token.append(text.substr(i, len));
        } else if (is_joiner(cp) && !token.empty()) {
            // keep hyphen/apostrophe only between word characters
            std::size_t j = i + len;
            char32_t next = 0;
            if (j < n) decode_utf8(text, j, next);
            if (j < n && is_word_codepoint(next) && cp != 0x2019) {
                token.append(text.substr(i, len));
            } else if (j < n && is_word_codepoint(next) && cp == 0x2019) {
                token.push_back('\''); // normalize curly apostrophe
            } else {
                flush_token();
            }
        } else if (cp == '.' || cp == '!' || cp == '?' || cp == '\n') {
            flush_sentence();
        } else {
            flush_token();
        }
        i += len;
    }
    flush_sentence();
    return sentences;
}

namespace {

const std::unordered_set<std::string>& det_words() {
    static const std::unordered_set<std::string> s = {
        "the", "a", "an", "this", "that", "these", "those", "each", "every",
        "either", "neither", "some", "any", "no", "all", "both", "such",
        "another", "other", "what", "which", "whose",
    };
    return s;
}

const std::unordered_set<std::string>& adp_words() {
    static const std::unordered_set<std::string> s = {
        "of", "in", "on", "at", "by", "for", "with", "from", "to", "into",
        "onto", "about", "above", "below", "under", "over", "after", "before",
        "between", "through", "during", "against", "among", "within",
        "without", "toward", "towards", "upon", "across", "behind", "beyond",
        "near", "since", "until", "per", "via", "off", "out", "up", "down",
        "around", "along",
    };
    return s;
}

const std::unordered_set<std::string>& pron_words() {
    static const std::unordered_set<std::string> s = {
        "i", "you", "he", "she", "it", "we", "they", "me", "him", "her", "us",
        "them", "my", "your", "his", "its", "our", "their", "mine", "yours",
        "hers", "ours", "theirs", "myself", "yourself", "himself", "herself",
        "itself", "ourselves", "themselves", "who", "whom", "someone",
        "anyone", "everyone", "nobody", "something", "anything", "everything",
        "nothing", "one",
    };
    return s;
}

const std::unordered_set<std::string>& conj_words() {
    static const std::unordered_set<std::string> s = {
        "and", "or", "but", "nor", "so", "yet", "because", "although",
        "though", "while", "whereas", "if", "unless", "whether", "than",
        "when", "where", "as",
    };
    return s;
}

const std::unordered_set<std::string>& aux_words() {
    static const std::unordered_set<std::string> s = {
        "is", "am", "are", "was", "were", "be", "been", "being", "have",
        "has", "had", "having", "do", "does", "did", "doing", "will",
        "would", "can", "could", "shall", "should", "may", "might", "must",
        "won't", "don't", "doesn't", "didn't", "can't", "couldn't",
        "wouldn't", "shouldn't", "isn't", "aren't", "wasn't", "weren't",
        "hasn't", "haven't", "hadn't",
    };
    return s;
}

// Irregular verbs and a few high-frequency regular ones the suffix rules miss.
const std::unordered_set<std::string>& verb_words() {
    static const std::unordered_set<std::string> s = {
        "go", "goes", "went", "gone", "see", "saw", "seen", "run", "ran",
        "take", "took", "taken", "make", "made", "come", "came", "get",
        "got", "gotten", "know", "knew", "known", "think", "thought", "say",
        "said", "tell", "told", "feel", "felt", "keep", "kept", "leave",
        "left", "find", "found", "give", "gave", "given", "want", "need",
        "let", "put", "mean", "meant", "become", "became", "begin", "began",
        "begun", "bring", "brought", "buy", "bought", "catch", "caught",
        "choose", "chose", "eat", "ate", "fall", "fell", "grow", "grew",
        "hear", "heard", "hold", "held", "lose", "lost", "pay", "paid",
        "read", "rise", "rose", "sell", "sold", "send", "sent", "sit", "sat",
        "speak", "spoke", "spend", "spent", "stand", "stood", "teach",
        "taught", "throw", "threw", "understand", "understood", "wear",
        "wore", "win", "won", "write", "wrote", "written", "seek", "sought",
        "fight", "fought", "hurt", "hit", "kill", "plot", "hate", "love",
        "try", "tried", "cry", "cried", "die", "died", "lie", "lied",
    };
    return s;
}

const std::unordered_set<std::string>& adv_words() {
    static const std::unordered_set<std::string> s = {
        "not", "never", "always", "often", "sometimes", "very", "too",
        "also", "just", "again", "still", "already", "soon", "now", "then",
        "here", "there", "almost", "even", "quite", "rather", "enough",
        "away", "back", "well", "however", "instead", "maybe", "perhaps",
        "together", "alone", "once", "twice", "more", "most", "less",
        "least", "far", "long", "much", "how", "why",
    };
    return s;
}

const std::unordered_set<std::string>& adj_words() {
    static const std::unordered_set<std::string> s = {
        "good", "bad", "new", "old", "great", "big", "small", "little",
        "high", "low", "young", "sweet", "bitter", "dark", "deep", "cold",
        "hot", "true", "false", "wrong", "right", "sad", "happy", "angry",
        "afraid", "alone", "lonely", "unfair", "unjust", "immoral", "cruel",
        "violent", "bloody", "evil", "own", "same", "different", "last",
        "first", "next", "only", "real", "sure", "free", "full", "empty",
        "strong", "weak", "hard", "easy", "late", "early", "whole", "main",
    };
    return s;
}

bool ends_with(const std::string& w, std::string_view suffix) {
    return w.size() >= suffix.size() &&
           w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool all_digits(const std::string& w) {
    if (w.empty()) return false;
    for (char c : w) {
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.' && c != ',') return false;
    }
    return std::isdigit(static_cast<unsigned char>(w[0])) != 0;
}

} // namespace

Tagger::Tagger() = default;

const Tagger& Tagger::builtin() {
    static const Tagger t;
    return t;
}

PosTag Tagger::tag_word(const std::string& lower, PosTag prev) const {
    if (lower.empty()) return PosTag::Other;
    if (all_digits(lower)) return PosTag::Num;

    if (det_words().count(lower)) return PosTag::Det;
    if (pron_words().count(lower)) return PosTag::Pron;
    if (adp_words().count(lower)) return PosTag::Adp;
    if (conj_words().count(lower)) return PosTag::Conj;
    if (aux_words().count(lower)) return PosTag::Verb;
    if (adv_words().count(lower)) return PosTag::Adv;
    if (adj_words().count(lower)) return PosTag::Adj;
    if (verb_words().count(lower)) return PosTag::Verb;

    if (ends_with(lower, "ly") && lower.size() > 3) return PosTag::Adv;
    if (lower.size() > 4 &&
        (ends_with(lower, "tion") || ends_with(lower, "sion") || ends_with(lower, "ment") ||
         ends_with(lower, "ness") || ends_with(lower, "ship") || ends_with(lower, "hood") ||
         ends_with(lower, "ance") || ends_with(lower, "ence") || ends_with(lower, "ity")))
        return PosTag::Noun;
    if (lower.size() > 4 &&
        (ends_with(lower, "ous") || ends_with(lower, "ful") || ends_with(lower, "ive") ||
         ends_with(lower, "able") || ends_with(lower, "ible") || ends_with(lower, "less") ||
         ends_with(lower, "ish") || ends_with(lower, "ic") || ends_with(lower, "al")))
        return PosTag::Adj;
    if (lower.size() > 4 && (ends_with(lower, "ize") || ends_with(lower, "ise") || ends_with(lower, "ify")))
        return PosTag::Verb;
    if (lower.size() > 4 && (ends_with(lower, "ing") || ends_with(lower, "ed"))) {
        // "the killing" reads as a noun, "was killed" as a verb
        return prev == PosTag::Det ? PosTag::Noun : PosTag::Verb;
    }
    return PosTag::Noun;
}

Sentence Tagger::tag(const std::vector<std::string>& tokens) const {
    Sentence out;
    out.reserve(tokens.size());
    PosTag prev = PosTag::Other;
    for (const auto& tok : tokens) {
        const PosTag t = tag_word(util::to_lower(tok), prev);
        out.push_back({tok, t});
        prev = t;
    }
    return out;
}

std::vector<Sentence> tag_text(std::string_view text) {
    const auto raw = split_sentences(text);
    std::vector<Sentence> out;
    out.reserve(raw.size());
    const Tagger& tagger = Tagger::builtin();
    for (const auto& sentence : raw) out.push_back(tagger.tag(sentence));
    return out;
}

std::vector<Sentence> parse_pretagged(std::string_view contents) {
    std::vector<Sentence> sentences;
    Sentence current;
    std::size_t lineno = 0;
    for (const auto& line : util::split_lines(contents)) {
        ++lineno;
        if (line.empty()) {
            if (!current.empty()) {
                sentences.push_back(std::move(current));
                current.clear();
            }
            continue;
        }
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0) {
            throw InputError("pre-tagged input line " + std::to_string(lineno) +
                             ": expected `surface<TAB>POS`, got \"" + line + "\"");
        }
        current.push_back({line.substr(0, tab), parse_pos_tag(std::string_view(line).substr(tab + 1))});
    }
    if (!current.empty()) sentences.push_back(std::move(current));
    return sentences;
}

} // namespace themescope
