#include "ahab/vocab.hpp"

namespace ahab {
namespace vocab {

std::optional<Term> taxonomy_rank_predicate(const std::string& rank_word) {
    for (const auto& [word, pred] : taxonomy_ranks_specific_first())
        if (word == rank_word) return pred;
    return std::nullopt;
}

const std::vector<std::pair<std::string, Term>>& taxonomy_ranks_specific_first() {
    static const std::vector<std::pair<std::string, Term>> ranks = {
        {"genus", rank_genus()},     {"family", rank_family()},
        {"order", rank_order()},     {"class", rank_class()},
        {"phylum", rank_phylum()},   {"kingdom", rank_kingdom()},
    };
    return ranks;
}

std::string display_name(const Term& t) {
    if (t.is_literal()) return t.text();
    std::string s = t.text();
    for (const std::string& ns : {KB_CATEGORY_NS, KB_NS, LOCAL_NS, DATA_NS}) {
        if (s.rfind(ns, 0) == 0) { s = s.substr(ns.size()); break; }
    }
    auto slash = s.find_last_of("/#");
    if (slash != std::string::npos && s.rfind("http", 0) == 0) s = s.substr(slash + 1);
    for (char& c : s)
        if (c == '_') c = ' ';
    return s;
}

} // namespace vocab

PrefixTable PrefixTable::standard() {
    PrefixTable t;
    t.add_prefix("KB", vocab::KB_NS);
    t.add_prefix("ahab", vocab::LOCAL_NS);
    t.add_name("label", vocab::label());
    t.add_name("comment", vocab::comment());
    t.add_name("wikiPageRedirects", vocab::wiki_page_redirects());
    t.add_name("subject", vocab::subject());
    t.add_name("broader", vocab::broader());
    t.add_name("WikiLink", vocab::wiki_link());
    t.add_name("ingredient", vocab::ingredient());
    t.add_name("img-att", vocab::img_att());
    t.add_name("img-scn", vocab::img_scn());
    t.add_name("contain", vocab::contain());
    t.add_name("name", vocab::name());
    t.add_name("color", vocab::color());
    t.add_name("size", vocab::size());
    t.add_name("supercat-name", vocab::supercat_name());
    t.add_name("same-concept", vocab::same_concept());
    for (const auto& [word, pred] : vocab::taxonomy_ranks_specific_first())
        t.add_name(word, pred);
    // Shorthand used in query listings for the sports super-category.
    t.add_name("KB:Cat-Sports_equipment", vocab::kb_category("Sports_equipment"));
    return t;
}

void PrefixTable::add_prefix(const std::string& prefix, const std::string& base) {
    prefixes_[prefix] = base;
}

void PrefixTable::add_name(const std::string& name, const Term& term) {
    names_.insert_or_assign(name, term);
}

std::optional<Term> PrefixTable::resolve(const std::string& token) const {
    auto named = names_.find(token);
    if (named != names_.end()) return named->second;
    auto colon = token.find(':');
    if (colon == std::string::npos) return std::nullopt;
    auto pref = prefixes_.find(token.substr(0, colon));
    if (pref == prefixes_.end()) return std::nullopt;
    std::string local = token.substr(colon + 1);
    if (local.empty()) return std::nullopt;
    return Term::iri(pref->second + local);
}

std::string PrefixTable::shorten(const Term& iri) const {
    if (!iri.is_iri()) return iri.str();
    for (const auto& [name, term] : names_)
        if (term == iri) return name;
    std::string best;
    for (const auto& [prefix, base] : prefixes_) {
        if (iri.text().rfind(base, 0) != 0) continue;
        std::string local = iri.text().substr(base.size());
        if (local.empty()) continue;
        // Locals that would not re-parse (spaces, trailing dot) stay absolute.
        if (local.find(' ') != std::string::npos || local.back() == '.') continue;
        std::string candidate = prefix + ":" + local;
        if (best.empty() || candidate.size() < best.size()) best = candidate;
    }
    return best.empty() ? iri.str() : best;
}

} // namespace ahab
