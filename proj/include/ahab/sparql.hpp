#pragma once

#include "ahab/term.hpp"
#include "ahab/vocab.hpp"

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ahab::sparql {

struct Variable {
    std::string name; // without the leading '?'
    bool operator==(const Variable& o) const { return name == o.name; }
    bool operator<(const Variable& o) const { return name < o.name; }
};

using PatternTerm = std::variant<Variable, Term>; // Variable first: default-constructible

inline bool is_variable(const PatternTerm& t) { return std::holds_alternative<Variable>(t); }

// One step of a property path: a predicate IRI, optionally zero-or-one (`p?`).
struct PathStep {
    Term predicate;
    bool zero_or_one = false;
    bool operator==(const PathStep& o) const {
        return predicate == o.predicate && zero_or_one == o.zero_or_one;
    }
};

struct TriplePattern {
    PatternTerm subject;
    std::vector<PathStep> path; // single mandatory step == plain predicate
    PatternTerm object;
    bool operator==(const TriplePattern& o) const {
        return subject == o.subject && path == o.path && object == o.object;
    }
};

struct PatternGroup;

struct UnionPattern {
    std::vector<PatternGroup> branches;
    bool operator==(const UnionPattern& o) const;
};

struct RegexFilter {
    Variable var;
    std::string regex;
    bool operator==(const RegexFilter& o) const { return var == o.var && regex == o.regex; }
};

using PatternElement = std::variant<TriplePattern, UnionPattern, RegexFilter>;

struct PatternGroup {
    std::vector<PatternElement> elements;
    bool operator==(const PatternGroup& o) const { return elements == o.elements; }
};

inline bool UnionPattern::operator==(const UnionPattern& o) const { return branches == o.branches; }

enum class QueryForm { Select, Ask, CountDistinct };

struct QueryPlan {
    QueryForm form = QueryForm::Select;
    bool distinct = false;               // SELECT only
    std::vector<Variable> projection;    // SELECT: >=1 vars; COUNT: exactly 1; ASK: empty
    PatternGroup where;

    bool operator==(const QueryPlan& o) const {
        return form == o.form && distinct == o.distinct && projection == o.projection &&
               where == o.where;
    }
};

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
          line(line_), column(col_) {}
};

// Parse a query in the supported fragment. Prefixed and bare identifiers
// resolve through `prefixes`; unknown identifiers and unsupported SPARQL
// constructs raise ParseError with position information.
QueryPlan parse_query(const std::string& text, const PrefixTable& prefixes);

// Canonical text form; parse_query(print_query(p)) reproduces p exactly.
std::string print_query(const QueryPlan& plan, const PrefixTable& prefixes);

} // namespace ahab::sparql
