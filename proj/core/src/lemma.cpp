#include "themescope/lemma.hpp"

#include <string_view>

namespace themescope {

namespace {

bool ends_with(const std::string& w, std::string_view suffix) {
    return w.size() >= suffix.size() &&
           w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// runn -> run, hopp -> hop; keeps ll/ss/zz ("fall", "kiss", "buzz")
std::string undouble(std::string stem) {
    const std::size_t n = stem.size();
    if (n >= 3 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]) &&
        stem[n - 1] != 'l' && stem[n - 1] != 's' && stem[n - 1] != 'z') {
        stem.pop_back();
    }
    return stem;
}

} // namespace

Lemmatizer::Lemmatizer() {
    static const char* kIrregular[][2] = {
        {"ran", "run"},       {"went", "go"},      {"gone", "go"},
        {"goes", "go"},       {"was", "be"},       {"were", "be"},
        {"is", "be"},         {"are", "be"},       {"am", "be"},
        {"been", "be"},       {"has", "have"},     {"had", "have"},
        {"did", "do"},        {"done", "do"},      {"does", "do"},
        {"saw", "see"},       {"seen", "see"},     {"took", "take"},
        {"taken", "take"},    {"made", "make"},    {"came", "come"},
        {"got", "get"},       {"gotten", "get"},   {"knew", "know"},
        {"known", "know"},    {"felt", "feel"},    {"kept", "keep"},
        {"left", "leave"},    {"found", "find"},   {"gave", "give"},
        {"given", "give"},    {"thought", "think"},{"said", "say"},
        {"told", "tell"},     {"meant", "mean"},   {"became", "become"},
        {"began", "begin"},   {"begun", "begin"},  {"brought", "bring"},
        {"bought", "buy"},    {"caught", "catch"}, {"chose", "choose"},
        {"ate", "eat"},       {"fell", "fall"},    {"grew", "grow"},
        {"heard", "hear"},    {"held", "hold"},    {"lost", "lose"},
        {"paid", "pay"},      {"rose", "rise"},    {"sold", "sell"},
        {"sent", "send"},     {"sat", "sit"},      {"spoke", "speak"},
        {"spent", "spend"},   {"stood", "stand"},  {"taught", "teach"},
        {"threw", "throw"},   {"understood", "understand"},
        {"wore", "wear"},     {"won", "win"},      {"wrote", "write"},
        {"written", "write"}, {"sought", "seek"},  {"fought", "fight"},
        {"men", "man"},       {"women", "woman"},  {"children", "child"},
        {"feet", "foot"},     {"teeth", "tooth"},  {"mice", "mouse"},
        {"geese", "goose"},   {"people", "person"},{"lives", "life"},
        {"wives", "wife"},    {"knives", "knife"}, {"selves", "self"},
        {"leaves", "leaf"},   {"died", "die"},     {"dying", "die"},
        {"lied", "lie"},      {"lying", "lie"},    {"tied", "tie"},
        {"tying", "tie"},     {"dies", "die"},     {"lies", "lie"},
        {"better", "good"},   {"best", "good"},    {"worse", "bad"},
        {"worst", "bad"},
    };
    for (const auto& entry : kIrregular) exceptions_.emplace(entry[0], entry[1]);
}

void Lemmatizer::add_exception(std::string word, std::string lemma) {
    exceptions_[std::move(word)] = std::move(lemma);
}

std::string Lemmatizer::lemma(const std::string& word) const {
    if (auto it = exceptions_.find(word); it != exceptions_.end()) return it->second;
    const std::size_t n = word.size();

    if (n > 4 && ends_with(word, "ies")) return word.substr(0, n - 3) + "y";
    if (n > 4 && ends_with(word, "ied")) return word.substr(0, n - 3) + "y";
    if (n > 3 && ends_with(word, "es")) {
        std::string stem = word.substr(0, n - 2);
        if (ends_with(stem, "ss") || ends_with(stem, "sh") || ends_with(stem, "ch") ||
            ends_with(stem, "x") || ends_with(stem, "z") || ends_with(stem, "o")) {
            return stem;
        }
        return word.substr(0, n - 1); // houses -> house
    }
    if (n > 3 && ends_with(word, "s") && !ends_with(word, "ss") && !ends_with(word, "us") &&
        !ends_with(word, "is")) {
        return word.substr(0, n - 1);
    }
    if (n > 5 && ends_with(word, "ing")) {
        std::string stem = undouble(word.substr(0, n - 3));
        if (stem.size() >= 3) return stem;
    }
    if (n > 4 && ends_with(word, "ed")) {
        std::string stem = undouble(word.substr(0, n - 2));
        if (stem.size() >= 3) return stem;
    }
    return word;
}

} // namespace themescope
