#include "ahab/registry.hpp"

#include "ahab/lemma.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ahab {

void ConceptRegistry::add(const std::string& label, const std::string& supercategory) {
    entries_[label] = supercategory;
    lemma_entries_[lemmatize_phrase(label)] = label;
    supercats_.insert(supercategory);
}

ConceptRegistry ConceptRegistry::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open registry file: " + path);
    ConceptRegistry reg;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected 'label<TAB>supercategory'");
        reg.add(line.substr(0, tab), line.substr(tab + 1));
    }
    return reg;
}

bool ConceptRegistry::has_label(const std::string& label) const {
    if (entries_.count(label)) return true;
    return lemma_entries_.count(lemmatize_phrase(label)) > 0;
}

std::optional<std::string> ConceptRegistry::supercategory_of(const std::string& label) const {
    auto it = entries_.find(label);
    if (it != entries_.end()) return it->second;
    auto lem = lemma_entries_.find(lemmatize_phrase(label));
    if (lem != lemma_entries_.end()) return entries_.at(lem->second);
    return std::nullopt;
}

bool ConceptRegistry::is_supercategory(const std::string& word) const {
    return supercats_.count(word) > 0;
}

std::vector<std::string> ConceptRegistry::labels_in_supercategory(
    const std::string& supercat) const {
    std::vector<std::string> out;
    for (const auto& [label, sc] : entries_)
        if (sc == supercat) out.push_back(label);
    return out;
}

size_t ConceptRegistry::longest_label_match(const std::vector<std::string>& tokens,
                                            size_t start) const {
    size_t best = 0;
    std::string joined;
    for (size_t len = 1; len <= 4 && start + len <= tokens.size(); ++len) {
        if (len > 1) joined += ' ';
        joined += tokens[start + len - 1];
        if (lemma_entries_.count(joined)) best = len;
    }
    return best;
}

const std::map<std::string, std::string>& head_noun_aliases() {
    static const std::map<std::string, std::string> aliases = {
        {"man", "person"},  {"woman", "person"}, {"child", "person"},
        {"boy", "person"},  {"girl", "person"},  {"guy", "person"},
        {"lady", "person"}, {"kid", "person"},   {"person", "person"},
    };
    return aliases;
}

} // namespace ahab
