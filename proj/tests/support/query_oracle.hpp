#pragma once

// Test-side oracle for the query evaluator: enumerates every assignment of
// the query's variables over the graph's node terms and keeps those that
// satisfy the pattern. Works on a plain triple vector, independent of the
// store's indexes and of the evaluator's join machinery.

#include "ahab/sparql.hpp"
#include "ahab/sparql_eval.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <string>
#include <vector>

namespace ahab::test {

using sparql::PatternGroup;
using sparql::PatternTerm;
using sparql::PathStep;
using sparql::QueryForm;
using sparql::QueryPlan;
using sparql::RegexFilter;
using sparql::TriplePattern;
using sparql::UnionPattern;
using sparql::Variable;

using Assignment = std::map<std::string, Term>;

inline Term subst(const PatternTerm& t, const Assignment& a) {
    if (const auto* v = std::get_if<Variable>(&t)) return a.at(v->name);
    return std::get<Term>(t);
}

inline bool oracle_path_matches(const std::vector<Triple>& triples, const Term& s,
                                const std::vector<PathStep>& path, size_t i, const Term& o) {
    if (i == path.size()) return s == o;
    const PathStep& step = path[i];
    if (step.zero_or_one && oracle_path_matches(triples, s, path, i + 1, o)) return true;
    for (const Triple& t : triples) {
        if (!(t.subject == s) || !(t.predicate == step.predicate)) continue;
        if (oracle_path_matches(triples, t.object, path, i + 1, o)) return true;
    }
    return false;
}

inline bool oracle_satisfies(const std::vector<Triple>& triples, const PatternGroup& group,
                             const Assignment& a);

inline bool oracle_satisfies_element(const std::vector<Triple>& triples,
                                     const sparql::PatternElement& e, const Assignment& a) {
    if (const auto* tp = std::get_if<TriplePattern>(&e))
        return oracle_path_matches(triples, subst(tp->subject, a), tp->path, 0,
                                   subst(tp->object, a));
    if (const auto* u = std::get_if<UnionPattern>(&e)) {
        for (const PatternGroup& b : u->branches)
            if (oracle_satisfies(triples, b, a)) return true;
        return false;
    }
    const auto& f = std::get<RegexFilter>(e);
    std::regex re(f.regex, std::regex::ECMAScript);
    return std::regex_search(a.at(f.var.name).text(), re);
}

inline bool oracle_satisfies(const std::vector<Triple>& triples, const PatternGroup& group,
                             const Assignment& a) {
    for (const sparql::PatternElement& e : group.elements)
        if (!oracle_satisfies_element(triples, e, a)) return false;
    return true;
}

inline void collect_variables(const PatternGroup& g, std::set<std::string>& out) {
    for (const sparql::PatternElement& e : g.elements) {
        if (const auto* tp = std::get_if<TriplePattern>(&e)) {
            if (const auto* v = std::get_if<Variable>(&tp->subject)) out.insert(v->name);
            if (const auto* v = std::get_if<Variable>(&tp->object)) out.insert(v->name);
        } else if (const auto* u = std::get_if<UnionPattern>(&e)) {
            for (const PatternGroup& b : u->branches) collect_variables(b, out);
        } else if (const auto* f = std::get_if<RegexFilter>(&e)) {
            out.insert(f->var.name);
        }
    }
}

// Universe for assignments: every term in subject or object position.
inline std::vector<Term> oracle_node_terms(const std::vector<Triple>& triples) {
    std::set<Term> terms;
    for (const Triple& t : triples) {
        terms.insert(t.subject);
        terms.insert(t.object);
    }
    return {terms.begin(), terms.end()};
}

inline sparql::ResultSet oracle_evaluate(const QueryPlan& plan,
                                         const std::vector<Triple>& triples) {
    std::set<std::string> var_set;
    collect_variables(plan.where, var_set);
    std::vector<std::string> vars(var_set.begin(), var_set.end());
    std::vector<Term> universe = oracle_node_terms(triples);

    sparql::ResultSet out;
    out.form = plan.form;
    std::set<std::vector<Term>> rows;

    std::vector<size_t> idx(vars.size(), 0);
    Assignment a;
    auto run_assignment = [&]() {
        for (size_t i = 0; i < vars.size(); ++i) a.insert_or_assign(vars[i], universe[idx[i]]);
        if (!oracle_satisfies(triples, plan.where, a)) return;
        if (plan.form == QueryForm::Ask) {
            out.truth = true;
            return;
        }
        std::vector<Term> row;
        for (const Variable& v : plan.projection) row.push_back(a.at(v.name));
        rows.insert(std::move(row));
    };

    if (vars.empty()) {
        if (oracle_satisfies(triples, plan.where, a)) {
            if (plan.form == QueryForm::Ask) out.truth = true;
        }
    } else if (!universe.empty()) {
        while (true) {
            run_assignment();
            size_t k = 0;
            while (k < idx.size()) {
                if (++idx[k] < universe.size()) break;
                idx[k] = 0;
                ++k;
            }
            if (k == idx.size()) break;
        }
    }
    out.rows.assign(rows.begin(), rows.end());
    if (plan.form == QueryForm::CountDistinct) {
        out.count = out.rows.size();
        out.rows.clear();
        out.rows.assign(rows.begin(), rows.end());
    }
    return out;
}

// ------------------------------------------------------------------ random
// Random graphs and query texts in the supported fragment. Query texts go
// through the real parser so the generator also exercises it.

struct QueryCorpusConfig {
    int nodes = 12;
    int predicates = 3;
    int triples = 40;
    int literal_percent = 20;
};

inline Term gen_node(std::mt19937& rng, const QueryCorpusConfig& cfg) {
    return Term::iri("http://t/n" + std::to_string(rng() % cfg.nodes));
}

inline Term gen_pred(std::mt19937& rng, const QueryCorpusConfig& cfg) {
    return Term::iri("http://t/p" + std::to_string(rng() % cfg.predicates));
}

inline std::vector<Triple> gen_triples(std::mt19937& rng, const QueryCorpusConfig& cfg,
                                       Graph& graph) {
    std::vector<Triple> out;
    for (int i = 0; i < cfg.triples; ++i) {
        Term s = gen_node(rng, cfg);
        Term p = gen_pred(rng, cfg);
        Term o = (static_cast<int>(rng() % 100) < cfg.literal_percent)
                     ? Term::literal("v" + std::to_string(rng() % 4))
                     : gen_node(rng, cfg);
        Triple t(s, p, o);
        if (graph.insert(t)) out.push_back(t);
    }
    return out;
}

inline std::string render_term_text(std::mt19937& rng, const Term& t) {
    if (t.is_literal()) {
        std::string s = "\"" + t.text() + "\"";
        if (!t.lang().empty()) s += "@" + t.lang();
        return s;
    }
    // Alternate between absolute and prefixed forms.
    if (rng() % 2 && t.text().rfind("http://t/", 0) == 0)
        return "T:" + t.text().substr(9);
    return "<" + t.text() + ">";
}

// A random query over up to three variables. Unions keep the same variable
// set in both branches; filters come after the variable is bound.
inline std::string gen_query_text(std::mt19937& rng, const QueryCorpusConfig& cfg) {
    static const std::vector<std::string> kRegexPool = {
        "^v[0-9]$", "v", "0|1", "^http", "[a-z]+", "n[0-9]+$",
    };
    std::vector<std::string> vars;
    int n_vars = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n_vars; ++i) vars.push_back(std::string(1, static_cast<char>('a' + i)));
    auto var = [&]() { return vars[rng() % vars.size()]; };

    auto term_or_var = [&](bool allow_literal) {
        if (rng() % 2 == 0) return "?" + var();
        if (allow_literal && static_cast<int>(rng() % 100) < cfg.literal_percent)
            return render_term_text(rng, Term::literal("v" + std::to_string(rng() % 4)));
        return render_term_text(rng, gen_node(rng, cfg));
    };
    auto path = [&]() {
        std::string p = render_term_text(rng, gen_pred(rng, cfg));
        int extra = static_cast<int>(rng() % 3);
        for (int i = 0; i < extra; ++i) {
            p += "/" + render_term_text(rng, gen_pred(rng, cfg));
            if (rng() % 2) p += "?";
        }
        return p;
    };
    auto pattern = [&]() { return term_or_var(false) + " " + path() + " " + term_or_var(true); };
    // Union branches bind exactly the shared variable, so every solution of
    // the union binds the same variable set regardless of branch.
    auto union_branch = [&](const std::string& v) {
        bool var_subject = rng() % 2 == 0;
        std::string s = var_subject ? "?" + v : render_term_text(rng, gen_node(rng, cfg));
        std::string o = !var_subject || rng() % 3 == 0
                            ? "?" + v
                            : render_term_text(rng, gen_node(rng, cfg));
        return s + " " + path() + " " + o;
    };

    std::vector<std::string> elements;
    std::set<std::string> bound;
    int n_elems = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n_elems; ++i) {
        if (rng() % 4 == 0) {
            std::string shared = var();
            elements.push_back("{ " + union_branch(shared) + " } UNION { " +
                               union_branch(shared) + " }");
        } else {
            elements.push_back(pattern());
        }
        for (const char* c = elements.back().c_str(); *c; ++c)
            if (*c == '?' && std::isalpha(static_cast<unsigned char>(c[1])))
                bound.insert(std::string(1, c[1]));
    }
    if (!bound.empty() && rng() % 3 == 0)
        elements.push_back("FILTER regex(?" + *bound.begin() + ", \"" +
                           kRegexPool[rng() % kRegexPool.size()] + "\")");

    std::string where = "{ ";
    for (const std::string& e : elements) where += e + " . ";
    where += "}";

    std::vector<std::string> usable(bound.begin(), bound.end());
    if (usable.empty()) return "ASK " + where;
    switch (rng() % 3) {
    case 0: return "ASK " + where;
    case 1: {
        std::string proj;
        size_t take = 1 + rng() % usable.size();
        for (size_t i = 0; i < take; ++i) proj += "?" + usable[i] + " ";
        return "SELECT DISTINCT " + proj + "WHERE " + where;
    }
    default:
        return "SELECT COUNT(DISTINCT ?" + usable[rng() % usable.size()] + ") WHERE " + where;
    }
}

inline PrefixTable corpus_prefixes() {
    PrefixTable t = PrefixTable::standard();
    t.add_prefix("T", "http://t/");
    return t;
}

} // namespace ahab::test
