#include "ahab/term.hpp"

namespace ahab {

std::string Term::str() const {
    if (is_iri()) return "<" + text_ + ">";
    std::string out = "\"";
    for (char c : text_) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    out += '"';
    if (!lang_.empty()) out += "@" + lang_;
    return out;
}

Triple::Triple(Term s, Term p, Term o)
    : subject(std::move(s)), predicate(std::move(p)), object(std::move(o)) {
    if (!subject.is_iri())
        throw std::invalid_argument("triple subject must be an IRI");
    if (!predicate.is_iri())
        throw std::invalid_argument("triple predicate must be an IRI");
}

std::string Triple::str() const {
    return subject.str() + " " + predicate.str() + " " + object.str() + " .";
}

} // namespace ahab
