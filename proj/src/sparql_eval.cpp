#include "ahab/sparql_eval.hpp"

#include <algorithm>
#include <optional>
#include <regex>
#include <set>

namespace ahab::sparql {

namespace {

using Binding = std::map<std::string, Term>;

struct Partial {
    Binding binding;
    std::vector<Triple> witnesses;
};

std::optional<Term> bound_value(const PatternTerm& t, const Binding& b) {
    if (const auto* term = std::get_if<Term>(&t)) return *term;
    auto it = b.find(std::get<Variable>(t).name);
    if (it == b.end()) return std::nullopt;
    return it->second;
}

// All (end term, edges walked) pairs reachable from `start` over `path`.
// Deterministic: ends discovered in sorted edge order, first derivation kept.
void expand_path_forward(const Graph& g, const Term& start,
                         const std::vector<PathStep>& path, size_t step_index,
                         std::vector<Triple>& edges,
                         std::vector<std::pair<Term, std::vector<Triple>>>& out,
                         std::set<Term>& seen) {
    if (step_index == path.size()) {
        if (seen.insert(start).second) out.emplace_back(start, edges);
        return;
    }
    const PathStep& step = path[step_index];
    if (step.zero_or_one)
        expand_path_forward(g, start, path, step_index + 1, edges, out, seen);
    for (const Term& next : g.objects(start, step.predicate)) {
        edges.emplace_back(start, step.predicate, next);
        expand_path_forward(g, next, path, step_index + 1, edges, out, seen);
        edges.pop_back();
    }
}

std::vector<std::pair<Term, std::vector<Triple>>> path_ends(const Graph& g, const Term& start,
                                                            const std::vector<PathStep>& path) {
    std::vector<std::pair<Term, std::vector<Triple>>> out;
    std::vector<Triple> edges;
    std::set<Term> seen;
    expand_path_forward(g, start, path, 0, edges, out, seen);
    return out;
}

std::vector<Partial> apply_pattern(const Graph& g, const TriplePattern& p,
                                   const std::vector<Partial>& input) {
    std::vector<Partial> output;
    for (const Partial& in : input) {
        std::optional<Term> s = bound_value(p.subject, in.binding);
        std::optional<Term> o = bound_value(p.object, in.binding);

        auto bind = [](const PatternTerm& pt, const Term& val, Binding& b) -> bool {
            if (const auto* v = std::get_if<Variable>(&pt)) {
                auto [it, inserted] = b.emplace(v->name, val);
                return inserted || it->second == val;
            }
            return true;
        };
        auto emit = [&](const Term& s_val, const Term& o_val,
                        const std::vector<Triple>& edges) {
            Partial next = in;
            if (!bind(p.subject, s_val, next.binding)) return;
            if (!bind(p.object, o_val, next.binding)) return;
            next.witnesses.insert(next.witnesses.end(), edges.begin(), edges.end());
            output.push_back(std::move(next));
        };

        if (p.path.size() == 1 && !p.path[0].zero_or_one) {
            // Plain predicate: one indexed match call.
            for (const Triple& t :
                 g.match(s, p.path[0].predicate, o))
                emit(t.subject, t.object, {t});
            continue;
        }

        // Property path. Anchor on the subject when bound, otherwise try
        // every node; `?` steps contribute a zero-edge alternative.
        std::vector<Term> starts;
        if (s) starts.push_back(*s);
        else starts = g.node_terms();
        for (const Term& start : starts) {
            for (auto& [end, edges] : path_ends(g, start, p.path)) {
                if (o && !(*o == end)) continue;
                emit(start, end, edges);
            }
        }
    }
    return output;
}

std::string lexical_form(const Term& t) { return t.text(); }

std::vector<Partial> apply_filter(const RegexFilter& f, const std::vector<Partial>& input) {
    std::regex re;
    try {
        re = std::regex(f.regex, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
        throw EvalError("invalid regex \"" + f.regex + "\": " + e.what());
    }
    std::vector<Partial> output;
    for (const Partial& in : input) {
        auto it = in.binding.find(f.var.name);
        if (it == in.binding.end())
            throw EvalError("FILTER variable ?" + f.var.name + " is unbound");
        if (std::regex_search(lexical_form(it->second), re)) output.push_back(in);
    }
    return output;
}

std::vector<Partial> apply_group(const Graph& g, const PatternGroup& group,
                                 std::vector<Partial> partials);

std::vector<Partial> apply_union(const Graph& g, const UnionPattern& u,
                                 const std::vector<Partial>& input) {
    std::vector<Partial> output;
    std::set<Binding> seen;
    for (const PatternGroup& branch : u.branches) {
        for (Partial& p : apply_group(g, branch, input)) {
            if (seen.insert(p.binding).second) output.push_back(std::move(p));
        }
    }
    return output;
}

std::vector<Partial> apply_group(const Graph& g, const PatternGroup& group,
                                 std::vector<Partial> partials) {
    for (const PatternElement& e : group.elements) {
        if (const auto* tp = std::get_if<TriplePattern>(&e))
            partials = apply_pattern(g, *tp, partials);
        else if (const auto* u = std::get_if<UnionPattern>(&e))
            partials = apply_union(g, *u, partials);
        else if (const auto* f = std::get_if<RegexFilter>(&e))
            partials = apply_filter(*f, partials);
        if (partials.empty()) break;
    }
    return partials;
}

ExplainResult run(const QueryPlan& plan, const Graph& graph) {
    std::vector<Partial> partials{Partial{}};
    partials = apply_group(graph, plan.where, std::move(partials));

    ExplainResult out;
    out.result.form = plan.form;

    if (plan.form == QueryForm::Ask) {
        out.result.truth = !partials.empty();
        if (!partials.empty()) {
            // Deterministic representative: smallest binding.
            const Partial* best = &partials.front();
            for (const Partial& p : partials)
                if (p.binding < best->binding) best = &p;
            out.explained.push_back(ExplainedRow{{}, best->witnesses});
        }
        return out;
    }

    std::map<std::vector<Term>, std::vector<Triple>> rows;
    for (const Partial& p : partials) {
        std::vector<Term> row;
        row.reserve(plan.projection.size());
        bool complete = true;
        for (const Variable& v : plan.projection) {
            auto it = p.binding.find(v.name);
            if (it == p.binding.end()) { complete = false; break; }
            row.push_back(it->second);
        }
        if (!complete) continue; // var bound in no branch of a union
        rows.emplace(std::move(row), p.witnesses);
    }
    for (auto& [row, witnesses] : rows) {
        out.result.rows.push_back(row);
        out.explained.push_back(ExplainedRow{row, witnesses});
    }
    if (plan.form == QueryForm::CountDistinct) out.result.count = out.result.rows.size();
    return out;
}

} // namespace

ResultSet evaluate(const QueryPlan& plan, const Graph& graph) {
    return run(plan, graph).result;
}

ExplainResult explain(const QueryPlan& plan, const Graph& graph) {
    return run(plan, graph);
}

} // namespace ahab::sparql
