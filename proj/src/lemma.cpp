#include "ahab/lemma.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ahab {

namespace {

const std::map<std::string, std::string>& irregulars() {
    static const std::map<std::string, std::string> m = {
        {"men", "man"},       {"women", "woman"},   {"children", "child"},
        {"people", "person"}, {"mice", "mouse"},    {"geese", "goose"},
        {"feet", "foot"},     {"teeth", "tooth"},   {"knives", "knife"},
        {"wolves", "wolf"},   {"leaves", "leaf"},   {"loaves", "loaf"},
        {"shelves", "shelf"}, {"oxen", "ox"},       {"sheep", "sheep"},
    };
    return m;
}

// Words ending in 's' that are not plurals.
const std::set<std::string>& s_final_words() {
    static const std::set<std::string> s = {
        "was",  "has",   "yes",  "its",  "his",   "this", "thus",   "gas",
        "bias", "atlas", "lens", "news", "means", "series", "species",
        "tennis", "iris", "always", "perhaps",
    };
    return s;
}

bool is_punct_char(char c) {
    return std::string("?!.,;:\"'()").find(c) != std::string::npos;
}

} // namespace

std::string lemmatize_word(const std::string& word) {
    if (word.empty()) return word;
    auto irr = irregulars().find(word);
    if (irr != irregulars().end()) return irr->second;
    if (s_final_words().count(word)) return word;

    size_t n = word.size();
    auto ends = [&](const std::string& suffix) {
        return n >= suffix.size() && word.compare(n - suffix.size(), suffix.size(), suffix) == 0;
    };

    if (ends("ies") && n > 4) return word.substr(0, n - 3) + "y";
    if (ends("sses")) return word.substr(0, n - 2);
    if (ends("ches") || ends("shes")) return word.substr(0, n - 2);
    if (ends("xes") || ends("zes")) return word.substr(0, n - 2);
    if (ends("oes")) return word.substr(0, n - 2);
    if (ends("ss") || ends("us") || ends("is")) return word;
    if (ends("s") && n >= 4) return word.substr(0, n - 1);
    return word;
}

std::string lemmatize_phrase(const std::string& phrase) {
    std::istringstream in(phrase);
    std::string word, out;
    while (in >> word) {
        if (!out.empty()) out += ' ';
        out += lemmatize_word(word);
    }
    return out;
}

std::vector<QToken> tokenize_and_lemmatize(const std::string& text) {
    bool has_content = false;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) has_content = true;
    if (!has_content) throw std::invalid_argument("empty question text");

    std::vector<QToken> out;
    std::string word;
    auto flush_word = [&]() {
        if (word.empty()) return;
        QToken t;
        t.raw = word;
        t.lemma = lemmatize_word(word);
        out.push_back(t);
        word.clear();
    };

    for (char raw_c : text) {
        char c = static_cast<char>(std::tolower(static_cast<unsigned char>(raw_c)));
        if (std::isspace(static_cast<unsigned char>(c))) {
            flush_word();
        } else if (is_punct_char(c)) {
            flush_word();
            QToken t;
            t.raw = std::string(1, c);
            t.lemma = t.raw;
            t.punct = true;
            out.push_back(t);
        } else {
            word += c;
        }
    }
    flush_word();
    return out;
}

} // namespace ahab
