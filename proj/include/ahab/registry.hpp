#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ahab {

// Object-class and attribute registries. Shipped as editable TSV files
// (label <TAB> supercategory); matching is done on lemmatized, lowercased
// labels so plural questions line up with singular class names.
class ConceptRegistry {
public:
    void add(const std::string& label, const std::string& supercategory);
    static ConceptRegistry load(const std::string& path);

    bool has_label(const std::string& label) const;
    std::optional<std::string> supercategory_of(const std::string& label) const;
    bool is_supercategory(const std::string& word) const;
    std::vector<std::string> labels_in_supercategory(const std::string& supercat) const;
    size_t size() const { return entries_.size(); }

    // Longest run of `tokens` starting at `start` that forms a known label
    // (token-wise). 0 when none matches.
    size_t longest_label_match(const std::vector<std::string>& tokens, size_t start) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;       // label -> supercat (as written)
    std::map<std::string, std::string> lemma_entries_; // lemmatized label -> label
    std::set<std::string> supercats_;
};

// Maps colloquial head nouns onto registry classes ("man" -> "person").
const std::map<std::string, std::string>& head_noun_aliases();

} // namespace ahab
