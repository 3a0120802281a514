#pragma once

#include "ahab/image_graph.hpp"
#include "ahab/templates.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ahab {

struct ObjectResolution {
    // Matched objects ordered by bbox area descending, then object id.
    std::vector<Term> objects;
    std::vector<int> object_ids;
    std::vector<std::string> notes;
    bool ambiguous = false; // several candidates where one referent was wanted

    bool empty() const { return objects.empty(); }
    const Term& primary() const { return objects.front(); }
};

struct ConceptResolution {
    std::optional<Term> entity;
    std::string phrase;
    std::vector<Term> redirect_chain; // entities visited before the fixed point
    std::optional<std::string> ambiguity_note;

    bool resolved() const { return entity.has_value(); }
};

// Filters image objects by head noun, then location (bbox-center thirds),
// then size (area ordering). Empty result means no such object.
ObjectResolution resolve_object_slot(const ImageContext& image, const SlotPhrase& slot,
                                     const ConceptRegistry& classes);

// Label lookup (exact, case-insensitive, then space/underscore-normalized)
// followed by redirect resolution; non-category entities are preferred.
ConceptResolution resolve_concept_slot(const Graph& kb, const SlotPhrase& slot);
ConceptResolution resolve_concept_phrase(const Graph& kb, const std::string& raw_phrase,
                                         const std::string& lemma_phrase);

// Taxonomy rank word to its predicate IRI.
std::optional<Term> resolve_taxonomy_slot(const SlotPhrase& slot);

// Horizontal/vertical third of a bbox center; every object falls in exactly
// one of each.
enum class Third { Low, Mid, High };
Third horizontal_third(const BBox& box, int image_width);
Third vertical_third(const BBox& box, int image_height);

} // namespace ahab
