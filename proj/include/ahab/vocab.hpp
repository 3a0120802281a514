#pragma once

#include "ahab/term.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ahab {

// Well-known predicates and namespaces. DBpedia-side predicates keep their
// canonical IRIs; engine-local predicates (image structure) live in a
// separate namespace so the two vocabularies can never collide.
namespace vocab {

inline const std::string KB_NS = "http://dbpedia.org/resource/";
inline const std::string KB_CATEGORY_NS = "http://dbpedia.org/resource/Category:";
inline const std::string LOCAL_NS = "http://ahab.local/ns#";
inline const std::string DATA_NS = "http://ahab.local/data/";

// DBpedia / W3C predicates.
inline const Term label() { return Term::iri("http://www.w3.org/2000/01/rdf-schema#label"); }
inline const Term comment() { return Term::iri("http://www.w3.org/2000/01/rdf-schema#comment"); }
inline const Term wiki_page_redirects() { return Term::iri("http://dbpedia.org/ontology/wikiPageRedirects"); }
inline const Term subject() { return Term::iri("http://purl.org/dc/terms/subject"); }
inline const Term broader() { return Term::iri("http://www.w3.org/2004/02/skos/core#broader"); }
inline const Term wiki_link() { return Term::iri("http://dbpedia.org/ontology/wikiPageWikiLink"); }
inline const Term ingredient() { return Term::iri("http://dbpedia.org/ontology/ingredient"); }

// Animal taxonomy rank predicates.
inline const Term rank_kingdom() { return Term::iri("http://dbpedia.org/ontology/kingdom"); }
inline const Term rank_phylum() { return Term::iri("http://dbpedia.org/ontology/phylum"); }
inline const Term rank_class() { return Term::iri("http://dbpedia.org/ontology/class"); }
inline const Term rank_order() { return Term::iri("http://dbpedia.org/ontology/order"); }
inline const Term rank_family() { return Term::iri("http://dbpedia.org/ontology/family"); }
inline const Term rank_genus() { return Term::iri("http://dbpedia.org/ontology/genus"); }

// Engine-local predicates for image-side triples.
inline const Term img_att() { return Term::iri(LOCAL_NS + "img-att"); }
inline const Term img_scn() { return Term::iri(LOCAL_NS + "img-scn"); }
inline const Term contain() { return Term::iri(LOCAL_NS + "contain"); }
inline const Term name() { return Term::iri(LOCAL_NS + "name"); }
inline const Term color() { return Term::iri(LOCAL_NS + "color"); }
inline const Term size() { return Term::iri(LOCAL_NS + "size"); }
inline const Term supercat_name() { return Term::iri(LOCAL_NS + "supercat-name"); }
inline const Term same_concept() { return Term::iri(LOCAL_NS + "same-concept"); }

inline Term kb_entity(const std::string& local) { return Term::iri(KB_NS + local); }
inline Term kb_category(const std::string& local) { return Term::iri(KB_CATEGORY_NS + local); }

inline bool is_category(const Term& t) {
    return t.is_iri() && t.text().rfind(KB_CATEGORY_NS, 0) == 0;
}

// Taxonomy rank word -> predicate. The six ranks are closed.
std::optional<Term> taxonomy_rank_predicate(const std::string& rank_word);
// Ranks ordered most specific first: genus, family, order, class, phylum, kingdom.
const std::vector<std::pair<std::string, Term>>& taxonomy_ranks_specific_first();

// Human-readable fallback name for an IRI: strips known namespaces and
// maps '_' to ' ' (used when an entity has no label triple).
std::string display_name(const Term& t);

} // namespace vocab

// Resolution context for query text: prefix form `KB:Name`, bare names for
// predicates (`label`, `contain`, ...) and query-local entity aliases.
class PrefixTable {
public:
    // Table with the standard prefixes and every vocabulary predicate
    // registered under its bare name.
    static PrefixTable standard();

    void add_prefix(const std::string& prefix, const std::string& base);
    void add_name(const std::string& name, const Term& term);

    // Resolve a prefixed or bare token to a term. Bare tokens are looked up
    // in the name table; `P:Local` splits at the first ':'.
    std::optional<Term> resolve(const std::string& token) const;

    // Render an IRI in the shortest registered form (bare name, prefix
    // form, or `<...>`).
    std::string shorten(const Term& iri) const;

private:
    std::map<std::string, std::string> prefixes_;
    std::map<std::string, Term> names_;
};

} // namespace ahab
