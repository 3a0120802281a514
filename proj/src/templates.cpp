#include "ahab/templates.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ahab {

namespace {

const std::set<std::string> kSizeWords = {"small", "large"};
const std::set<std::string> kLocationWords = {"left", "right", "top", "bottom", "center"};
const std::set<std::string> kArticles = {"the", "a", "an"};

SlotKind slot_kind_from(const std::string& word) {
    if (word == "obj") return SlotKind::Obj;
    if (word == "person") return SlotKind::Person;
    if (word == "animal") return SlotKind::Animal;
    if (word == "food") return SlotKind::Food;
    if (word == "concept") return SlotKind::Concept;
    if (word == "taxonomy") return SlotKind::Taxonomy;
    throw std::runtime_error("unknown slot kind: " + word);
}

std::vector<std::string> split_options(const std::string& body) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : body) {
        if (c == '|') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

bool is_size_qualifier(const std::string& word) { return kSizeWords.count(word) > 0; }
bool is_location_qualifier(const std::string& word) { return kLocationWords.count(word) > 0; }

TemplatePattern TemplateRegistry::parse_pattern(const std::string& template_id,
                                                const std::string& pattern_text) {
    TemplatePattern pattern;
    pattern.template_id = template_id;
    pattern.source = pattern_text;

    std::istringstream in(pattern_text);
    std::string tok;
    while (in >> tok) {
        TemplatePattern::Element e;
        if (tok.size() > 1 && tok.back() == '?' && tok[0] != '<') {
            e.optional = true;
            tok.pop_back();
        }
        if (tok.front() == '<') {
            if (tok.back() != '>')
                throw std::runtime_error("unterminated slot in pattern: " + tok);
            std::string body = tok.substr(1, tok.size() - 2);
            e.type = TemplatePattern::Element::Type::Slot;
            auto eq = body.find("=(");
            auto colon = body.find(':');
            if (eq != std::string::npos && body.back() == ')') {
                e.slot_name = body.substr(0, eq);
                e.slot_kind = SlotKind::Choice;
                for (std::string& opt :
                     split_options(body.substr(eq + 2, body.size() - eq - 3)))
                    e.choices.push_back(lemmatize_word(opt));
            } else if (colon != std::string::npos) {
                e.slot_name = body.substr(0, colon);
                e.slot_kind = slot_kind_from(body.substr(colon + 1));
                if (e.slot_kind == SlotKind::Taxonomy)
                    e.choices = {"kingdom", "phylum", "class", "order", "family", "genus"};
            } else {
                throw std::runtime_error("slot must be <name:kind> or <name=(a|b)>: " + tok);
            }
        } else if (tok.front() == '(') {
            if (tok.back() != ')')
                throw std::runtime_error("unterminated alternation in pattern: " + tok);
            e.type = TemplatePattern::Element::Type::Alternation;
            for (std::string& opt : split_options(tok.substr(1, tok.size() - 2)))
                e.words.push_back(lemmatize_word(opt));
        } else {
            e.type = TemplatePattern::Element::Type::Literal;
            e.words.push_back(lemmatize_word(tok));
        }
        pattern.elements.push_back(std::move(e));
    }
    if (pattern.elements.empty())
        throw std::runtime_error("empty pattern for template " + template_id);
    return pattern;
}

TemplateRegistry TemplateRegistry::load(const std::string& path,
                                        const ConceptRegistry& classes) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open template registry: " + path);
    TemplateRegistry reg;
    reg.classes_ = &classes;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected 'TemplateId<TAB>pattern'");
        reg.add(parse_pattern(line.substr(0, tab), line.substr(tab + 1)));
    }
    return reg;
}

void TemplateRegistry::add(TemplatePattern pattern) {
    patterns_.push_back(std::move(pattern));
}

namespace {

struct Capture {
    const TemplatePattern::Element* elem;
    size_t begin = 0, end = 0; // token range
};

// Backtracking matcher over word tokens (punctuation removed).
class Matcher {
public:
    Matcher(const TemplatePattern& pattern, const std::vector<QToken>& tokens,
            const ConceptRegistry* classes)
        : pattern_(pattern), tokens_(tokens), classes_(classes) {}

    bool match(std::vector<Capture>& captures) {
        captures_.clear();
        bool ok = match_from(0, 0);
        captures = captures_;
        return ok;
    }

private:
    bool match_from(size_t elem_index, size_t tok) {
        if (elem_index == pattern_.elements.size()) return tok == tokens_.size();
        const auto& e = pattern_.elements[elem_index];

        if (e.optional) {
            size_t saved = captures_.size();
            if (try_element(e, elem_index, tok)) return true;
            captures_.resize(saved);
            return match_from(elem_index + 1, tok);
        }
        return try_element(e, elem_index, tok);
    }

    bool try_element(const TemplatePattern::Element& e, size_t elem_index, size_t tok) {
        switch (e.type) {
        case TemplatePattern::Element::Type::Literal:
        case TemplatePattern::Element::Type::Alternation: {
            if (tok >= tokens_.size()) return false;
            const std::string& lemma = tokens_[tok].lemma;
            bool hit = std::find(e.words.begin(), e.words.end(), lemma) != e.words.end();
            if (!hit) return false;
            return match_from(elem_index + 1, tok + 1);
        }
        case TemplatePattern::Element::Type::Slot:
            return try_slot(e, elem_index, tok);
        }
        return false;
    }

    bool try_slot(const TemplatePattern::Element& e, size_t elem_index, size_t tok) {
        if (tok >= tokens_.size()) return false;

        if (!e.choices.empty()) { // Choice and Taxonomy slots match one listed word
            if (std::find(e.choices.begin(), e.choices.end(), tokens_[tok].lemma) ==
                e.choices.end())
                return false;
            return commit(e, elem_index, tok, tok + 1);
        }

        if (e.slot_kind == SlotKind::Concept) {
            bool final_slot = elem_index + 1 == pattern_.elements.size();
            size_t remaining = tokens_.size() - tok;
            if (final_slot) // greedy to the terminal punctuation
                return commit(e, elem_index, tok, tokens_.size());
            for (size_t len = 1; len <= remaining; ++len) { // lazy
                if (commit(e, elem_index, tok, tok + len)) return true;
            }
            return false;
        }

        // Object-like slots: qualifier* head. Head candidates are tried
        // longest-first against the class registry, with a one-word fallback.
        size_t quals = 0;
        while (tok + quals < tokens_.size() &&
               (is_size_qualifier(tokens_[tok + quals].lemma) ||
                is_location_qualifier(tokens_[tok + quals].lemma)))
            ++quals;
        size_t head_start = tok + quals;
        if (head_start >= tokens_.size()) return false;

        std::vector<size_t> head_lengths;
        if (classes_) {
            std::vector<std::string> lemmas;
            for (const QToken& t : tokens_) lemmas.push_back(t.lemma);
            size_t best = classes_->longest_label_match(lemmas, head_start);
            for (size_t len = best; len >= 1; --len) head_lengths.push_back(len);
            if (head_lengths.empty()) head_lengths.push_back(1);
        } else {
            head_lengths.push_back(1);
        }
        for (size_t head_len : head_lengths) {
            if (head_start + head_len > tokens_.size()) continue;
            size_t saved = captures_.size();
            if (commit(e, elem_index, tok, head_start + head_len)) return true;
            captures_.resize(saved);
        }
        return false;
    }

    bool commit(const TemplatePattern::Element& e, size_t elem_index, size_t begin,
                size_t end) {
        captures_.push_back(Capture{&e, begin, end});
        if (match_from(elem_index + 1, end)) return true;
        captures_.pop_back();
        return false;
    }

    const TemplatePattern& pattern_;
    const std::vector<QToken>& tokens_;
    const ConceptRegistry* classes_;
    std::vector<Capture> captures_;
};

} // namespace

SlotPhrase parse_slot_qualifiers(const std::string& name, SlotKind kind,
                                 const std::vector<std::string>& lemmas,
                                 const std::vector<std::string>& raws,
                                 const ConceptRegistry& classes) {
    SlotPhrase slot;
    slot.kind = kind;
    slot.name = name;

    size_t start = 0;
    while (start < lemmas.size() && kArticles.count(lemmas[start])) ++start;

    std::vector<std::string> kept_lemmas(lemmas.begin() + start, lemmas.end());
    std::vector<std::string> kept_raws(raws.begin() + start, raws.end());

    auto join = [](const std::vector<std::string>& v, size_t from) {
        std::string out;
        for (size_t i = from; i < v.size(); ++i) {
            if (!out.empty()) out += ' ';
            out += v[i];
        }
        return out;
    };
    slot.phrase = join(kept_lemmas, 0);
    slot.raw_phrase = join(kept_raws, 0);

    size_t head_from = 0;
    if (kind == SlotKind::Obj || kind == SlotKind::Person || kind == SlotKind::Animal ||
        kind == SlotKind::Food) {
        while (head_from < kept_lemmas.size()) {
            const std::string& w = kept_lemmas[head_from];
            if (is_size_qualifier(w) && !slot.size) {
                slot.size = w;
            } else if (is_location_qualifier(w) && !slot.location) {
                slot.location = w;
            } else {
                break;
            }
            ++head_from;
        }
    }
    slot.head = join(kept_lemmas, head_from);
    if (!slot.head.empty()) {
        auto alias = head_noun_aliases().find(slot.head);
        if (alias != head_noun_aliases().end()) slot.head = alias->second;
        if (classes.has_label(slot.head))
            slot.head_is_superclass = false;
        else
            slot.head_is_superclass =
                slot.head == "object" || classes.is_supercategory(slot.head);
    }
    return slot;
}

std::optional<ParsedQuestion> TemplateRegistry::match(const std::string& question_text) const {
    std::vector<QToken> all_tokens = tokenize_and_lemmatize(question_text);
    std::vector<QToken> words;
    for (const QToken& t : all_tokens)
        if (!t.punct) words.push_back(t);
    if (words.empty()) return std::nullopt;

    for (const TemplatePattern& pattern : patterns_) {
        Matcher m(pattern, words, classes_);
        std::vector<Capture> captures;
        if (!m.match(captures)) continue;

        ParsedQuestion q;
        q.template_id = pattern.template_id;
        q.raw_text = question_text;
        for (const QToken& t : all_tokens) q.lemmas.push_back(t.lemma);

        for (const Capture& c : captures) {
            std::vector<std::string> lemmas, raws;
            for (size_t i = c.begin; i < c.end; ++i) {
                lemmas.push_back(words[i].lemma);
                raws.push_back(words[i].raw);
            }
            SlotKind kind = c.elem->slot_kind;
            SlotPhrase slot = parse_slot_qualifiers(c.elem->slot_name, kind, lemmas, raws,
                                                    classes_ ? *classes_ : ConceptRegistry{});
            q.slots[c.elem->slot_name] = std::move(slot);
        }
        return q;
    }
    return std::nullopt;
}

std::vector<std::string> TemplateRegistry::template_ids() const {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const TemplatePattern& p : patterns_)
        if (seen.insert(p.template_id).second) out.push_back(p.template_id);
    return out;
}

} // namespace ahab
