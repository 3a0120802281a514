#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ahab/graph.hpp"
#include "ahab/vocab.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

using namespace ahab;

namespace {

Term iri(const std::string& s) { return Term::iri("http://t/" + s); }

// Independent oracle: linear scan over every stored triple.
std::vector<Triple> scan_match(const std::vector<Triple>& all, const std::optional<Term>& s,
                               const std::optional<Term>& p, const std::optional<Term>& o) {
    std::vector<Triple> out;
    for (const Triple& t : all) {
        if (s && !(t.subject == *s)) continue;
        if (p && !(t.predicate == *p)) continue;
        if (o && !(t.object == *o)) continue;
        out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Triple> sorted(std::vector<Triple> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// Independent oracle: BFS with a depth cap over subject+broader edges.
std::set<Term> bfs_categories(const std::vector<Triple>& all, const Term& entity, int max_steps,
                              const Term& first, const Term& step) {
    std::set<Term> reached;
    std::vector<std::pair<Term, int>> frontier;
    for (const Triple& t : all)
        if (t.subject == entity && t.predicate == first)
            if (reached.insert(t.object).second) frontier.emplace_back(t.object, 1);
    while (!frontier.empty()) {
        auto [node, depth] = frontier.back();
        frontier.pop_back();
        if (depth >= max_steps) continue;
        for (const Triple& t : all)
            if (t.subject == node && t.predicate == step)
                if (reached.insert(t.object).second) frontier.emplace_back(t.object, depth + 1);
    }
    return reached;
}

} // namespace

TEST_CASE("term invariants") {
    CHECK_THROWS_AS(Term::iri(""), std::invalid_argument);
    CHECK_THROWS_AS(Term::iri("http://x/ y"), std::invalid_argument);
    CHECK(Term::literal("a", "en") == Term::literal("a", "en"));
    CHECK(Term::literal("a", "en") != Term::literal("a"));
    CHECK(Term::literal("a") != Term::iri("a"));
    CHECK(Term::iri("http://x/a").str() == "<http://x/a>");
    CHECK(Term::literal("hi", "en").str() == "\"hi\"@en");
    CHECK_THROWS_AS(Triple(Term::literal("x"), iri("p"), iri("o")), std::invalid_argument);
}

TEST_CASE("insert is idempotent and indexed") {
    Graph g;
    CHECK(g.insert(iri("A"), iri("p"), iri("B")));
    CHECK(g.size() == 1);
    CHECK_FALSE(g.insert(iri("A"), iri("p"), iri("B")));
    CHECK(g.size() == 1);

    g.insert(iri("A"), iri("p"), iri("C"));
    g.insert(iri("B"), iri("q"), iri("C"));
    auto all = g.match(std::nullopt, std::nullopt, std::nullopt);
    CHECK(all.size() == 3);
    CHECK(g.contains(Triple(iri("A"), iri("p"), iri("C"))));
    CHECK_FALSE(g.contains(Triple(iri("A"), iri("q"), iri("C"))));
}

TEST_CASE("wildcard match equals full scan on random graphs") {
    std::mt19937 rng(7);
    for (int round = 0; round < 20; ++round) {
        Graph g;
        std::vector<Triple> all;
        std::uniform_int_distribution<int> node(0, 24), pred(0, 3), literal(0, 5);
        for (int i = 0; i < 500; ++i) {
            Term s = iri("n" + std::to_string(node(rng)));
            Term p = iri("p" + std::to_string(pred(rng)));
            Term o = rng() % 4 == 0 ? Term::literal("v" + std::to_string(literal(rng)))
                                    : iri("n" + std::to_string(node(rng)));
            Triple t(s, p, o);
            if (g.insert(t)) all.push_back(t);
        }
        for (int i = 0; i < 100; ++i) {
            std::optional<Term> s, p, o;
            if (rng() % 2) s = iri("n" + std::to_string(node(rng)));
            if (rng() % 2) p = iri("p" + std::to_string(pred(rng)));
            if (rng() % 2)
                o = rng() % 4 == 0 ? Term::literal("v" + std::to_string(literal(rng)))
                                   : iri("n" + std::to_string(node(rng)));
            CHECK(sorted(g.match(s, p, o)) == scan_match(all, s, p, o));
        }
        CHECK(g.size() == all.size());
    }
}

TEST_CASE("label pattern over literal fixture") {
    Graph g;
    Term label = vocab::label();
    g.insert(vocab::kb_entity("Category:Religion"), label, Term::literal("Religion", "en"));
    g.insert(vocab::kb_entity("Religion"), label, Term::literal("Religion", "en"));
    g.insert(vocab::kb_entity("Science"), label, Term::literal("Science", "en"));

    auto hits = g.match(std::nullopt, label, Term::literal("Religion", "en"));
    REQUIRE(hits.size() == 2);
    std::set<std::string> subjects;
    for (const Triple& t : hits) subjects.insert(t.subject.text());
    CHECK(subjects.count("http://dbpedia.org/resource/Category:Religion"));
    CHECK(subjects.count("http://dbpedia.org/resource/Religion"));
}

TEST_CASE("transitive categories: chain bound") {
    Graph g;
    Term subject = vocab::subject(), broader = vocab::broader();
    g.insert(iri("e"), subject, iri("c1"));
    g.insert(iri("c1"), broader, iri("c2"));
    g.insert(iri("c2"), broader, iri("c3"));
    g.insert(iri("c3"), broader, iri("c4"));

    auto cats = g.transitive_categories(iri("e"), 3, subject, broader);
    CHECK(cats == std::vector<Term>{iri("c1"), iri("c2"), iri("c3")});

    CHECK(g.transitive_categories(iri("isolated"), 3, subject, broader).empty());
}

TEST_CASE("transitive categories equal BFS oracle on random DAGs; monotone in depth") {
    std::mt19937 rng(11);
    Term subject = vocab::subject(), broader = vocab::broader();
    for (int round = 0; round < 10; ++round) {
        Graph g;
        std::vector<Triple> all;
        int n = 1000;
        std::uniform_int_distribution<int> node(0, n - 1);
        for (int i = 0; i < 2500; ++i) {
            int a = node(rng), b = node(rng);
            if (a >= b) continue; // keep it acyclic
            Triple t(iri("c" + std::to_string(a)),
                     (a < 40 && rng() % 2) ? subject : broader, iri("c" + std::to_string(b)));
            if (g.insert(t)) all.push_back(t);
        }
        Term start = iri("c" + std::to_string(node(rng) % 40));
        for (int depth = 1; depth <= 5; ++depth) {
            auto got = g.transitive_categories(start, depth, subject, broader);
            auto want = bfs_categories(all, start, depth, subject, broader);
            CHECK(std::set<Term>(got.begin(), got.end()) == want);
        }
        // Monotonicity in depth.
        std::vector<Term> prev;
        for (int depth = 1; depth <= 5; ++depth) {
            auto cur = g.transitive_categories(start, depth, subject, broader);
            CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
            prev = cur;
        }
    }
}

TEST_CASE("wikilink either direction") {
    Graph g;
    Term wl = vocab::wiki_link();
    CHECK_FALSE(g.linked_either_direction(iri("a"), iri("b"), wl));
    g.insert(iri("a"), wl, iri("b"));
    CHECK(g.linked_either_direction(iri("a"), iri("b"), wl));
    CHECK(g.linked_either_direction(iri("b"), iri("a"), wl));

    std::mt19937 rng(3);
    std::uniform_int_distribution<int> node(0, 19);
    Graph r;
    std::vector<Triple> all;
    for (int i = 0; i < 120; ++i) {
        Triple t(iri("n" + std::to_string(node(rng))), wl, iri("n" + std::to_string(node(rng))));
        if (r.insert(t)) all.push_back(t);
    }
    for (int i = 0; i < 200; ++i) {
        Term a = iri("n" + std::to_string(node(rng)));
        Term b = iri("n" + std::to_string(node(rng)));
        bool want = false;
        for (const Triple& t : all)
            if ((t.subject == a && t.object == b) || (t.subject == b && t.object == a))
                want = true;
        CHECK(r.linked_either_direction(a, b, wl) == want);
    }
}

TEST_CASE("two step path count: examples, oracle and symmetry") {
    Term wl = vocab::wiki_link();
    {
        Graph g;
        g.insert(iri("a"), wl, iri("q"));
        g.insert(iri("b"), wl, iri("r"));
        CHECK(g.two_step_path_count(iri("a"), iri("b"), wl) == 0);
    }
    {
        Graph g;
        g.insert(iri("a"), wl, iri("x"));
        g.insert(iri("x"), wl, iri("b"));
        CHECK(g.two_step_path_count(iri("a"), iri("b"), wl) == 1);
    }
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> node(0, 14);
    Graph g;
    std::vector<Triple> all;
    for (int i = 0; i < 90; ++i) {
        Triple t(iri("n" + std::to_string(node(rng))), wl, iri("n" + std::to_string(node(rng))));
        if (g.insert(t)) all.push_back(t);
    }
    auto neighbors = [&](const Term& x) {
        std::set<Term> out;
        for (const Triple& t : all) {
            if (t.subject == x) out.insert(t.object);
            if (t.object == x) out.insert(t.subject);
        }
        return out;
    };
    for (int i = 0; i < 150; ++i) {
        Term a = iri("n" + std::to_string(node(rng)));
        Term b = iri("n" + std::to_string(node(rng)));
        if (a == b) continue;
        std::set<Term> na = neighbors(a), nb = neighbors(b);
        size_t want = 0;
        for (const Term& x : na)
            if (nb.count(x) && !(x == a) && !(x == b)) ++want;
        CHECK(g.two_step_path_count(a, b, wl) == want);
        CHECK(g.two_step_path_count(a, b, wl) == g.two_step_path_count(b, a, wl));
    }
}

TEST_CASE("literal index modes") {
    Graph g;
    Term label = vocab::label();
    g.insert(iri("A"), label, Term::literal("Flying disc", "en"));
    g.insert(iri("B"), label, Term::literal("flying_disc"));
    g.insert(iri("C"), label, Term::literal("Relig.", "en"));
    g.insert(iri("D"), label, Term::literal("Religion", "fr"));

    CHECK(g.subjects_by_literal(label, "Flying disc", Graph::LiteralMode::Exact) ==
          std::vector<Term>{iri("A")});
    CHECK(g.subjects_by_literal(label, "flying disc", Graph::LiteralMode::Exact).empty());
    CHECK(g.subjects_by_literal(label, "flying disc", Graph::LiteralMode::FoldCase) ==
          std::vector<Term>{iri("A")});
    auto norm = g.subjects_by_literal(label, "FLYING_DISC", Graph::LiteralMode::Normalized);
    CHECK(norm == std::vector<Term>{iri("A"), iri("B")});
    CHECK(g.subjects_by_literal(label, "relig", Graph::LiteralMode::Normalized) ==
          std::vector<Term>{iri("C")});
    // French-tagged labels do not satisfy the default-language lookup.
    CHECK(g.subjects_by_literal(label, "Religion", Graph::LiteralMode::FoldCase).empty());
}
