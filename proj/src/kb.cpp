#include "ahab/kb.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ahab::kb {

namespace {

// Returns the iri between '<' and '>' starting at pos; advances pos past it.
bool read_iri(const std::string& line, size_t& pos, std::string* out) {
    if (pos >= line.size() || line[pos] != '<') return false;
    size_t close = line.find('>', pos);
    if (close == std::string::npos) return false;
    *out = line.substr(pos + 1, close - pos - 1);
    pos = close + 1;
    return !out->empty();
}

void skip_ws(const std::string& line, size_t& pos) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
}

bool read_literal(const std::string& line, size_t& pos, std::string* lex, std::string* lang) {
    if (pos >= line.size() || line[pos] != '"') return false;
    ++pos;
    lex->clear();
    while (pos < line.size() && line[pos] != '"') {
        char c = line[pos++];
        if (c == '\\' && pos < line.size()) {
            char e = line[pos++];
            switch (e) {
            case 'n': *lex += '\n'; break;
            case 't': *lex += '\t'; break;
            case 'r': *lex += '\r'; break;
            default: *lex += e;
            }
        } else {
            *lex += c;
        }
    }
    if (pos >= line.size()) return false;
    ++pos; // closing quote
    lang->clear();
    if (pos < line.size() && line[pos] == '@') {
        ++pos;
        while (pos < line.size() && (std::isalnum(static_cast<unsigned char>(line[pos])) ||
                                     line[pos] == '-'))
            *lang += line[pos++];
        if (lang->empty()) return false;
    }
    return true;
}

} // namespace

bool parse_snapshot_line(const std::string& line, size_t line_no, Triple* out) {
    size_t pos = 0;
    skip_ws(line, pos);
    if (pos >= line.size() || line[pos] == '#') return false;

    auto fail = [&](const std::string& what) -> bool {
        throw LoadError("line " + std::to_string(line_no) + ": " + what);
    };

    std::string s, p;
    if (!read_iri(line, pos, &s)) return fail("expected subject IRI");
    skip_ws(line, pos);
    if (!read_iri(line, pos, &p)) return fail("expected predicate IRI");
    skip_ws(line, pos);

    Term object = Term::literal("");
    if (pos < line.size() && line[pos] == '<') {
        std::string o;
        if (!read_iri(line, pos, &o)) return fail("expected object IRI");
        object = Term::iri(o);
    } else {
        std::string lex, lang;
        if (!read_literal(line, pos, &lex, &lang)) return fail("expected object IRI or literal");
        object = Term::literal(lex, lang);
    }
    skip_ws(line, pos);
    if (pos >= line.size() || line[pos] != '.') return fail("expected terminating '.'");
    ++pos;
    skip_ws(line, pos);
    if (pos != line.size()) return fail("trailing content after '.'");

    try {
        *out = Triple(Term::iri(s), Term::iri(p), object);
    } catch (const std::invalid_argument& e) {
        return fail(e.what());
    }
    return true;
}

KbSnapshot load_snapshot_stream(std::istream& in, const std::string& name, Graph& graph,
                                bool strict) {
    KbSnapshot snap;
    snap.source_path = name;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        Triple t(Term::iri("http://x/"), Term::iri("http://x/"), Term::literal(""));
        bool has_triple = false;
        try {
            has_triple = parse_snapshot_line(line, line_no, &t);
        } catch (const LoadError& e) {
            if (strict) throw;
            snap.skipped_lines.emplace_back(line_no, e.what());
            continue;
        }
        if (!has_triple) continue;
        graph.insert(t);
        ++snap.triple_count;
        if (t.predicate == vocab::label()) ++snap.labels_indexed;
        if (t.predicate == vocab::wiki_page_redirects()) {
            if (!t.object.is_iri()) {
                std::string msg = "line " + std::to_string(line_no) +
                                  ": redirect object must be an IRI";
                if (strict) throw LoadError(msg);
                snap.skipped_lines.emplace_back(line_no, msg);
                continue;
            }
            ++snap.redirects_indexed;
        }
    }
    return snap;
}

KbSnapshot load_snapshot(const std::string& path, Graph& graph, bool strict) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open snapshot file: " + path);
    return load_snapshot_stream(in, path, graph, strict);
}

void serialize_snapshot(const Graph& graph, std::ostream& out) {
    for (const Triple& t : graph.all_triples_sorted()) out << t.str() << "\n";
}

void serialize_snapshot(const Graph& graph, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw LoadError("cannot write snapshot file: " + path);
    serialize_snapshot(graph, out);
}

std::vector<Term> lookup_by_label(const Graph& graph, const std::string& phrase,
                                  bool case_insensitive) {
    return graph.subjects_by_literal(vocab::label(), phrase,
                                     case_insensitive ? Graph::LiteralMode::FoldCase
                                                      : Graph::LiteralMode::Exact);
}

std::vector<Term> lookup_by_label_normalized(const Graph& graph, const std::string& phrase) {
    return graph.subjects_by_literal(vocab::label(), phrase, Graph::LiteralMode::Normalized);
}

Term resolve_redirect(const Graph& graph, const Term& entity) {
    // Follow the chain to its fixed point. A cycle has no fixed point, so
    // its smallest member serves as the canonical representative; that keeps
    // resolution idempotent no matter where the chain enters the cycle.
    std::vector<Term> path{entity};
    std::set<Term> visited{entity};
    while (true) {
        std::vector<Term> targets = graph.objects(path.back(), vocab::wiki_page_redirects());
        if (targets.empty() || !targets.front().is_iri()) return path.back();
        const Term& next = targets.front();
        if (visited.count(next)) {
            auto cycle_start = std::find(path.begin(), path.end(), next);
            return *std::min_element(cycle_start, path.end());
        }
        visited.insert(next);
        path.push_back(next);
    }
}

RedirectResult resolve_redirects(const Graph& graph, const std::vector<Term>& entities) {
    RedirectResult out;
    std::set<Term> seen;
    for (const Term& e : entities) {
        Term resolved = resolve_redirect(graph, e);
        // Cycle detection for reporting: resolved still has an outgoing edge.
        if (!graph.objects(resolved, vocab::wiki_page_redirects()).empty())
            out.cycle_entities.push_back(e);
        if (seen.insert(resolved).second) out.entities.push_back(resolved);
    }
    std::sort(out.entities.begin(), out.entities.end());
    return out;
}

} // namespace ahab::kb
