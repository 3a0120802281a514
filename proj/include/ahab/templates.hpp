#pragma once

#include "ahab/lemma.hpp"
#include "ahab/registry.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ahab {

enum class SlotKind { Obj, Person, Animal, Food, Concept, Taxonomy, Choice };

struct SlotPhrase {
    SlotKind kind = SlotKind::Concept;
    std::string name;                    // slot name from the pattern
    std::string phrase;                  // captured lemma phrase (qualifiers included)
    std::string raw_phrase;              // captured surface phrase
    std::optional<std::string> size;     // small | large
    std::optional<std::string> location; // left | right | top | bottom | center
    std::string head;                    // head noun (lemma, qualifiers stripped)
    bool head_is_superclass = false;     // supercategory or "object" vs specific class
};

struct ParsedQuestion {
    std::string template_id;
    std::map<std::string, SlotPhrase> slots;
    std::string raw_text;
    std::vector<std::string> lemmas;
};

// One matcher line: sequence of literal lemmas, alternations, optional
// elements and slot captures.
struct TemplatePattern {
    struct Element {
        enum class Type { Literal, Alternation, Slot };
        Type type = Type::Literal;
        bool optional = false;
        std::vector<std::string> words; // Literal: 1 word; Alternation: options
        SlotKind slot_kind = SlotKind::Concept;
        std::string slot_name;
        std::vector<std::string> choices; // Choice slots (taxonomy, largest/smallest)
    };
    std::string template_id;
    std::vector<Element> elements;
    std::string source; // pattern text as written in the registry file
};

// Template registry: patterns tried in file order, first match wins.
class TemplateRegistry {
public:
    static TemplateRegistry load(const std::string& path, const ConceptRegistry& classes);
    static TemplatePattern parse_pattern(const std::string& template_id,
                                         const std::string& pattern_text);

    void add(TemplatePattern pattern);

    // Total and deterministic; std::nullopt when no template matches.
    std::optional<ParsedQuestion> match(const std::string& question_text) const;

    std::vector<std::string> template_ids() const;
    size_t pattern_count() const { return patterns_.size(); }

private:
    std::vector<TemplatePattern> patterns_;
    const ConceptRegistry* classes_ = nullptr;
};

// Splits leading size/location qualifiers off a captured object phrase and
// classifies the head noun against the class registry.
SlotPhrase parse_slot_qualifiers(const std::string& name, SlotKind kind,
                                 const std::vector<std::string>& lemmas,
                                 const std::vector<std::string>& raws,
                                 const ConceptRegistry& classes);

bool is_size_qualifier(const std::string& word);
bool is_location_qualifier(const std::string& word);

} // namespace ahab
