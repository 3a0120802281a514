#include "ahab/sparql.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace ahab::sparql {

namespace {

struct Token {
    enum class Kind { Name, Variable, Iri, Literal, Punct, End };
    Kind kind = Kind::End;
    std::string text;  // Name: identifier; Variable: name without '?';
                       // Iri: raw iri; Literal: lexical form; Punct: one char
    std::string lang;  // Literal language tag
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, current_.line, current_.column);
    }

private:
    static bool name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
               c == ':' || c == '.';
    }

    char at(size_t i) const { return i < text_.size() ? text_[i] : '\0'; }

    void advance() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            if (text_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
            ++pos_;
        }
        current_.line = line_;
        current_.column = col_;
        if (pos_ >= text_.size()) {
            current_.kind = Token::Kind::End;
            current_.text.clear();
            return;
        }
        char c = text_[pos_];
        if (c == '?' && (std::isalnum(static_cast<unsigned char>(at(pos_ + 1))) ||
                         at(pos_ + 1) == '_')) {
            consume();
            std::string name;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_'))
                name += consume();
            current_ = make(Token::Kind::Variable, name);
            return;
        }
        if (std::string("{}().,/?").find(c) != std::string::npos) {
            consume();
            current_ = make(Token::Kind::Punct, std::string(1, c));
            return;
        }
        if (c == '<') {
            consume();
            std::string iri;
            while (pos_ < text_.size() && text_[pos_] != '>') iri += consume();
            if (pos_ >= text_.size())
                throw ParseError("unterminated IRI", current_.line, current_.column);
            consume(); // '>'
            current_ = make(Token::Kind::Iri, iri);
            return;
        }
        if (c == '"') {
            consume();
            std::string lex;
            while (pos_ < text_.size() && text_[pos_] != '"') {
                char d = consume();
                if (d == '\\' && pos_ < text_.size()) {
                    char e = consume();
                    switch (e) {
                    case 'n': lex += '\n'; break;
                    case 't': lex += '\t'; break;
                    case 'r': lex += '\r'; break;
                    default: lex += e;
                    }
                } else {
                    lex += d;
                }
            }
            if (pos_ >= text_.size())
                throw ParseError("unterminated literal", current_.line, current_.column);
            consume(); // '"'
            std::string lang;
            if (pos_ < text_.size() && text_[pos_] == '@') {
                consume();
                while (pos_ < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                        text_[pos_] == '-'))
                    lang += consume();
            }
            Token t = make(Token::Kind::Literal, lex);
            t.lang = lang;
            current_ = t;
            return;
        }
        if (name_char(c)) {
            std::string name;
            while (pos_ < text_.size() && name_char(text_[pos_])) name += consume();
            // Trailing dots are pattern separators, not part of the name.
            while (!name.empty() && name.back() == '.') {
                name.pop_back();
                --pos_;
                --col_;
            }
            if (name.empty()) { // the token was only dots
                consume();
                current_ = make(Token::Kind::Punct, ".");
                return;
            }
            current_ = make(Token::Kind::Name, name);
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }

    char consume() {
        char c = text_[pos_++];
        ++col_;
        return c;
    }

    Token make(Token::Kind kind, std::string text) {
        Token t;
        t.kind = kind;
        t.text = std::move(text);
        t.line = current_.line;
        t.column = current_.column;
        return t;
    }

    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token current_;
};

std::string upper(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    return out;
}

const std::set<std::string> kUnsupported = {
    "OPTIONAL", "ORDER",  "LIMIT",  "OFFSET", "GROUP",    "HAVING", "PREFIX",
    "CONSTRUCT", "DESCRIBE", "INSERT", "DELETE", "MINUS", "BIND",   "VALUES",
    "GRAPH",     "SERVICE",  "EXISTS",
};

class Parser {
public:
    Parser(const std::string& text, const PrefixTable& prefixes)
        : lex_(text), prefixes_(prefixes) {}

    QueryPlan parse() {
        QueryPlan plan;
        Token head = expect_name("query form");
        std::string form = upper(head.text);
        if (form == "ASK") {
            plan.form = QueryForm::Ask;
        } else if (form == "SELECT") {
            parse_select_head(plan);
        } else {
            fail_unsupported(head);
        }
        plan.where = parse_group();
        if (lex_.peek().kind != Token::Kind::End) lex_.fail("trailing input after query");
        validate(plan);
        return plan;
    }

private:
    void parse_select_head(QueryPlan& plan) {
        const Token& t = lex_.peek();
        if (t.kind == Token::Kind::Name && upper(t.text) == "COUNT") {
            lex_.take();
            plan.form = QueryForm::CountDistinct;
            expect_punct("(");
            Token d = expect_name("DISTINCT");
            if (upper(d.text) != "DISTINCT")
                throw ParseError("expected DISTINCT in COUNT(...)", d.line, d.column);
            plan.projection.push_back(expect_variable());
            expect_punct(")");
        } else {
            plan.form = QueryForm::Select;
            if (t.kind == Token::Kind::Name && upper(t.text) == "DISTINCT") {
                lex_.take();
                plan.distinct = true;
            }
            while (lex_.peek().kind == Token::Kind::Variable)
                plan.projection.push_back(expect_variable());
            if (plan.projection.empty())
                lex_.fail("SELECT requires at least one projected variable");
        }
        if (lex_.peek().kind == Token::Kind::Name) {
            Token w = lex_.take();
            if (upper(w.text) != "WHERE") fail_unsupported(w);
        }
    }

    PatternGroup parse_group() {
        expect_punct("{");
        PatternGroup group;
        while (true) {
            const Token& t = lex_.peek();
            if (t.kind == Token::Kind::Punct && t.text == "}") {
                lex_.take();
                break;
            }
            if (t.kind == Token::Kind::End) lex_.fail("unterminated group");
            group.elements.push_back(parse_element());
            if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == ".")
                lex_.take();
        }
        if (group.elements.empty())
            throw ParseError("empty group", lex_.peek().line, lex_.peek().column);
        return group;
    }

    PatternElement parse_element() {
        const Token& t = lex_.peek();
        if (t.kind == Token::Kind::Punct && t.text == "{") {
            UnionPattern u;
            u.branches.push_back(parse_group());
            while (lex_.peek().kind == Token::Kind::Name &&
                   upper(lex_.peek().text) == "UNION") {
                lex_.take();
                u.branches.push_back(parse_group());
            }
            return u;
        }
        if (t.kind == Token::Kind::Name && upper(t.text) == "FILTER") {
            lex_.take();
            return parse_filter();
        }
        if (t.kind == Token::Kind::Name && kUnsupported.count(upper(t.text)))
            fail_unsupported(t);
        return parse_triple_pattern();
    }

    RegexFilter parse_filter() {
        Token fn = expect_name("filter function");
        if (upper(fn.text) != "REGEX")
            throw ParseError("unsupported filter function: " + fn.text, fn.line, fn.column);
        expect_punct("(");
        RegexFilter f;
        f.var = expect_variable();
        expect_punct(",");
        Token lit = lex_.take();
        if (lit.kind != Token::Kind::Literal)
            throw ParseError("regex pattern must be a string literal", lit.line, lit.column);
        f.regex = lit.text;
        expect_punct(")");
        return f;
    }

    TriplePattern parse_triple_pattern() {
        TriplePattern p;
        p.subject = parse_term_position("subject", /*allow_literal=*/false);
        p.path = parse_path();
        p.object = parse_term_position("object", /*allow_literal=*/true);
        return p;
    }

    std::vector<PathStep> parse_path() {
        std::vector<PathStep> path;
        while (true) {
            Token t = lex_.take();
            Term pred = Term::iri("http://invalid/");
            if (t.kind == Token::Kind::Variable)
                throw ParseError("unsupported construct: variable predicate", t.line, t.column);
            if (t.kind == Token::Kind::Iri) {
                pred = Term::iri(t.text);
            } else if (t.kind == Token::Kind::Name) {
                if (kUnsupported.count(upper(t.text))) fail_unsupported(t);
                auto resolved = prefixes_.resolve(t.text);
                if (!resolved)
                    throw ParseError("unknown identifier: " + t.text, t.line, t.column);
                pred = *resolved;
            } else {
                throw ParseError("expected predicate", t.line, t.column);
            }
            PathStep step{pred, false};
            if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "?") {
                lex_.take();
                step.zero_or_one = true;
            }
            path.push_back(step);
            if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "/") {
                lex_.take();
                continue;
            }
            break;
        }
        if (path.size() == 1 && path[0].zero_or_one) {
            // A bare `p?` pattern never occurs in the dialect; reject rather
            // than guess at zero-length-path semantics for a full pattern.
            throw ParseError("unsupported construct: single zero-or-one predicate", 0, 0);
        }
        return path;
    }

    PatternTerm parse_term_position(const std::string& position, bool allow_literal) {
        Token t = lex_.take();
        switch (t.kind) {
        case Token::Kind::Variable:
            return Variable{t.text};
        case Token::Kind::Iri:
            return Term::iri(t.text);
        case Token::Kind::Literal:
            if (!allow_literal)
                throw ParseError("literal not allowed in " + position, t.line, t.column);
            return Term::literal(t.text, t.lang);
        case Token::Kind::Name: {
            if (kUnsupported.count(upper(t.text))) fail_unsupported(t);
            auto resolved = prefixes_.resolve(t.text);
            if (!resolved)
                throw ParseError("unknown identifier: " + t.text, t.line, t.column);
            return *resolved;
        }
        default:
            throw ParseError("expected term in " + position, t.line, t.column);
        }
    }

    void validate(const QueryPlan& plan) {
        std::set<std::string> pattern_vars;
        collect_vars(plan.where, pattern_vars);
        for (const Variable& v : plan.projection) {
            if (!pattern_vars.count(v.name))
                throw ParseError("projected variable ?" + v.name +
                                     " does not occur in any pattern",
                                 1, 1);
        }
        if (plan.form == QueryForm::Ask && !plan.projection.empty())
            throw ParseError("ASK takes no projection", 1, 1);
        if (plan.form == QueryForm::CountDistinct && plan.projection.size() != 1)
            throw ParseError("COUNT takes exactly one variable", 1, 1);
    }

    static void collect_vars(const PatternGroup& g, std::set<std::string>& out) {
        for (const PatternElement& e : g.elements) {
            if (const auto* tp = std::get_if<TriplePattern>(&e)) {
                if (const auto* v = std::get_if<Variable>(&tp->subject)) out.insert(v->name);
                if (const auto* v = std::get_if<Variable>(&tp->object)) out.insert(v->name);
            } else if (const auto* u = std::get_if<UnionPattern>(&e)) {
                for (const PatternGroup& b : u->branches) collect_vars(b, out);
            }
        }
    }

    Token expect_name(const std::string& what) {
        Token t = lex_.take();
        if (t.kind != Token::Kind::Name)
            throw ParseError("expected " + what, t.line, t.column);
        return t;
    }

    Variable expect_variable() {
        Token t = lex_.take();
        if (t.kind != Token::Kind::Variable)
            throw ParseError("expected variable", t.line, t.column);
        return Variable{t.text};
    }

    void expect_punct(const std::string& p) {
        Token t = lex_.take();
        if (t.kind != Token::Kind::Punct || t.text != p)
            throw ParseError("expected '" + p + "'", t.line, t.column);
    }

    [[noreturn]] void fail_unsupported(const Token& t) {
        throw ParseError("unsupported construct: " + t.text, t.line, t.column);
    }

    Lexer lex_;
    const PrefixTable& prefixes_;
};

std::string render_pattern_term(const PatternTerm& t, const PrefixTable& prefixes) {
    if (const auto* v = std::get_if<Variable>(&t)) return "?" + v->name;
    const Term& term = std::get<Term>(t);
    if (term.is_iri()) return prefixes.shorten(term);
    return term.str();
}

void print_group(const PatternGroup& g, const PrefixTable& prefixes, std::ostringstream& out,
                 int indent);

void print_element(const PatternElement& e, const PrefixTable& prefixes,
                   std::ostringstream& out, int indent) {
    std::string pad(indent, ' ');
    if (const auto* tp = std::get_if<TriplePattern>(&e)) {
        out << pad << render_pattern_term(tp->subject, prefixes) << " ";
        for (size_t i = 0; i < tp->path.size(); ++i) {
            if (i) out << "/";
            out << prefixes.shorten(tp->path[i].predicate);
            if (tp->path[i].zero_or_one) out << "?";
        }
        out << " " << render_pattern_term(tp->object, prefixes) << " .\n";
    } else if (const auto* u = std::get_if<UnionPattern>(&e)) {
        out << pad;
        for (size_t i = 0; i < u->branches.size(); ++i) {
            if (i) out << " UNION ";
            print_group(u->branches[i], prefixes, out, indent);
        }
        out << " .\n";
    } else if (const auto* f = std::get_if<RegexFilter>(&e)) {
        out << pad << "FILTER regex(?" << f->var.name << ", "
            << Term::literal(f->regex).str() << ") .\n";
    }
}

void print_group(const PatternGroup& g, const PrefixTable& prefixes, std::ostringstream& out,
                 int indent) {
    out << "{ ";
    bool first = true;
    for (const PatternElement& e : g.elements) {
        std::ostringstream inner;
        print_element(e, prefixes, inner, 0);
        std::string s = inner.str();
        if (!s.empty() && s.back() == '\n') s.pop_back();
        if (!first) out << " ";
        out << s;
        first = false;
    }
    out << " }";
}

} // namespace

QueryPlan parse_query(const std::string& text, const PrefixTable& prefixes) {
    return Parser(text, prefixes).parse();
}

std::string print_query(const QueryPlan& plan, const PrefixTable& prefixes) {
    std::ostringstream out;
    switch (plan.form) {
    case QueryForm::Ask:
        out << "ASK {\n";
        break;
    case QueryForm::CountDistinct:
        out << "SELECT COUNT(DISTINCT ?" << plan.projection[0].name << ") WHERE {\n";
        break;
    case QueryForm::Select:
        out << "SELECT ";
        if (plan.distinct) out << "DISTINCT ";
        for (const Variable& v : plan.projection) out << "?" << v.name << " ";
        out << "WHERE {\n";
        break;
    }
    for (const PatternElement& e : plan.where.elements) {
        std::ostringstream line;
        print_element(e, prefixes, line, 2);
        out << line.str();
    }
    out << "}";
    return out.str();
}

} // namespace ahab::sparql
