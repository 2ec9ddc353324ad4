#pragma once

#include <string>
#include <unordered_map>

namespace themescope {

/// Rule-based lemmatizer: an exception table for irregular forms, then
/// ordered suffix-stripping rules. Total: returns the input unchanged when
/// no rule applies. Deterministic and auditable; no model files.
///
/// The result is a candidate base form, not gospel. Callers that gate on a
/// vocabulary (see textprep) simply drop tokens whose candidate misses.
class Lemmatizer {
public:
    /// Built-in English exception table.
    Lemmatizer();

    void add_exception(std::string word, std::string lemma);

    /// Input must be lowercase.
    std::string lemma(const std::string& word) const;

private:
    std::unordered_map<std::string, std::string> exceptions_;
};

} // namespace themescope
