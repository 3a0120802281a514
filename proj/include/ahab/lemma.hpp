#pragma once

#include <string>
#include <vector>

namespace ahab {

struct QToken {
    std::string raw;   // original text, lowercased
    std::string lemma; // singularized form
    bool punct = false;
};

// Lowercases, splits punctuation into separate tokens and singularizes
// plurals with a small irregular map. Verb forms are left intact; template
// patterns carry alternations for those. Throws std::invalid_argument on
// empty input.
std::vector<QToken> tokenize_and_lemmatize(const std::string& text);

std::string lemmatize_word(const std::string& word);

// Lemmatizes each whitespace-separated word of a phrase.
std::string lemmatize_phrase(const std::string& phrase);

} // namespace ahab
