#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace ahab {

// An RDF term: either an IRI or a literal with an optional language tag.
// Equality is exact: variant, lexical content and language tag must all match.
class Term {
public:
    enum class Kind { Iri, Literal };

    static Term iri(std::string value) {
        if (value.empty())
            throw std::invalid_argument("IRI must be non-empty");
        if (value.find_first_of(" \t\r\n") != std::string::npos)
            throw std::invalid_argument("IRI must not contain whitespace: " + value);
        return Term(Kind::Iri, std::move(value), {});
    }

    static Term literal(std::string lexical, std::string lang = {}) {
        return Term(Kind::Literal, std::move(lexical), std::move(lang));
    }

    Kind kind() const { return kind_; }
    bool is_iri() const { return kind_ == Kind::Iri; }
    bool is_literal() const { return kind_ == Kind::Literal; }

    // IRI string or literal lexical form.
    const std::string& text() const { return text_; }
    const std::string& lang() const { return lang_; }

    bool operator==(const Term& o) const {
        return kind_ == o.kind_ && text_ == o.text_ && lang_ == o.lang_;
    }
    bool operator!=(const Term& o) const { return !(*this == o); }
    bool operator<(const Term& o) const {
        if (kind_ != o.kind_) return kind_ < o.kind_;
        if (text_ != o.text_) return text_ < o.text_;
        return lang_ < o.lang_;
    }

    // N-Triples style rendering: <iri>, "lexical" or "lexical"@lang.
    std::string str() const;

private:
    Term(Kind kind, std::string text, std::string lang)
        : kind_(kind), text_(std::move(text)), lang_(std::move(lang)) {}

    Kind kind_;
    std::string text_;
    std::string lang_;
};

struct Triple {
    Term subject;
    Term predicate;
    Term object;

    Triple(Term s, Term p, Term o);

    bool operator==(const Triple& o) const {
        return subject == o.subject && predicate == o.predicate && object == o.object;
    }
    bool operator<(const Triple& o) const {
        if (!(subject == o.subject)) return subject < o.subject;
        if (!(predicate == o.predicate)) return predicate < o.predicate;
        return object < o.object;
    }

    std::string str() const;
};

struct TermHash {
    size_t operator()(const Term& t) const {
        size_t h = std::hash<std::string>()(t.text());
        h ^= std::hash<std::string>()(t.lang()) + 0x9e3779b9 + (h << 6) + (h >> 2);
        return h * 2 + (t.is_iri() ? 1 : 0);
    }
};

} // namespace ahab
