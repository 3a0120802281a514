#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/query_oracle.hpp"

#include "ahab/sparql.hpp"
#include "ahab/sparql_eval.hpp"

#include <algorithm>
#include <random>

using namespace ahab;
using namespace ahab::sparql;

namespace {

PrefixTable fixture_prefixes() {
    PrefixTable t = PrefixTable::standard();
    t.add_prefix("T", "http://t/");
    t.add_name("Img", Term::iri("http://t/img"));
    t.add_name("Obj", Term::iri("http://t/obj"));
    return t;
}

Term node(const std::string& s) { return Term::iri("http://t/" + s); }

} // namespace

TEST_CASE("parses the two-object name-sharing ASK") {
    QueryPlan plan = parse_query("ASK { KB:obj1 name ?obj_nm. KB:obj2 name ?obj_nm. }",
                                 fixture_prefixes());
    CHECK(plan.form == QueryForm::Ask);
    CHECK(plan.projection.empty());
    REQUIRE(plan.where.elements.size() == 2);
    const auto& p1 = std::get<TriplePattern>(plan.where.elements[0]);
    const auto& p2 = std::get<TriplePattern>(plan.where.elements[1]);
    CHECK(std::get<Term>(p1.subject) == vocab::kb_entity("obj1"));
    CHECK(p1.path.size() == 1);
    CHECK(p1.path[0].predicate == vocab::name());
    CHECK(std::get<Variable>(p1.object).name == "obj_nm");
    CHECK(std::get<Variable>(p2.object).name == "obj_nm");
}

TEST_CASE("parse errors carry position and name the construct") {
    CHECK_THROWS_AS(parse_query("ASK { }", fixture_prefixes()), ParseError);
    CHECK_THROWS_WITH_AS(parse_query("SELECT ?x WHERE { ?x label ?y. OPTIONAL { ?x name ?z. } }",
                                     fixture_prefixes()),
                         doctest::Contains("unsupported construct: OPTIONAL"), ParseError);
    CHECK_THROWS_WITH_AS(parse_query("ASK { ?s ?p ?o. }", fixture_prefixes()),
                         doctest::Contains("variable predicate"), ParseError);
    CHECK_THROWS_WITH_AS(parse_query("SELECT ?y WHERE { ?x label \"a\". }", fixture_prefixes()),
                         doctest::Contains("?y"), ParseError);
    CHECK_THROWS_AS(parse_query("SELECT ?x WHERE { ?x unknown-pred ?y. }", fixture_prefixes()),
                    ParseError);
    // Line/column are tracked.
    try {
        parse_query("ASK {\n  ?x label ?y.\n  OPTIONAL { }\n}", fixture_prefixes());
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
}

TEST_CASE("parses COUNT(DISTINCT ?x) and property paths") {
    QueryPlan plan = parse_query(
        "SELECT COUNT(DISTINCT ?x) WHERE { { Obj WikiLink ?x } UNION { ?x WikiLink Obj }. }",
        fixture_prefixes());
    CHECK(plan.form == QueryForm::CountDistinct);
    REQUIRE(plan.projection.size() == 1);
    CHECK(plan.projection[0].name == "x");
    const auto& u = std::get<UnionPattern>(plan.where.elements[0]);
    CHECK(u.branches.size() == 2);

    QueryPlan path_plan =
        parse_query("ASK { Obj subject/broader?/broader? T:cat. }", fixture_prefixes());
    const auto& tp = std::get<TriplePattern>(path_plan.where.elements[0]);
    REQUIRE(tp.path.size() == 3);
    CHECK(tp.path[0].predicate == vocab::subject());
    CHECK_FALSE(tp.path[0].zero_or_one);
    CHECK(tp.path[1].predicate == vocab::broader());
    CHECK(tp.path[1].zero_or_one);
    CHECK(tp.path[2].zero_or_one);
}

TEST_CASE("print-parse round trip is the identity") {
    PrefixTable prefixes = fixture_prefixes();
    std::vector<std::string> queries = {
        "ASK { KB:obj1 name ?obj_nm. KB:obj2 name ?obj_nm. }",
        "SELECT ?desc WHERE { T:obj comment ?desc. }",
        "SELECT DISTINCT ?obj_color { Obj color ?obj_color. }",
        "SELECT DISTINCT ?cat WHERE { T:a subject/broader?/broader? ?cat. "
        "T:b subject/broader?/broader? ?cat. }",
        "SELECT COUNT(DISTINCT ?x) WHERE { { T:a WikiLink ?x } UNION { ?x WikiLink T:a }. "
        "{ T:b WikiLink ?x } UNION { ?x WikiLink T:b }. }",
        "SELECT DISTINCT ?cat_nm WHERE { T:o subject ?cat. ?cat label ?cat_nm. "
        "FILTER regex(?cat_nm, \"^[0-9]+ introductions$\"). }",
    };
    for (const std::string& q : queries) {
        QueryPlan first = parse_query(q, prefixes);
        std::string printed = print_query(first, prefixes);
        QueryPlan second = parse_query(printed, prefixes);
        CHECK(first == second);
    }
}

TEST_CASE("evaluate: ASK, paths, filters") {
    Graph g;
    Term subj = vocab::subject(), broader = vocab::broader(), label = vocab::label();
    g.insert(node("e"), subj, node("c1"));
    g.insert(node("c1"), broader, node("c2"));
    g.insert(node("c2"), broader, node("c3"));
    g.insert(node("c3"), broader, node("c4"));
    g.insert(node("c1"), label, Term::literal("1952 introductions", "en"));
    g.insert(node("c2"), label, Term::literal("American inventions", "en"));

    PrefixTable prefixes = fixture_prefixes();

    SUBCASE("no-match ASK is false") {
        QueryPlan plan = parse_query("ASK { T:e broader T:c9. }", prefixes);
        CHECK_FALSE(evaluate(plan, g).truth);
    }
    SUBCASE("bounded path expansion binds three categories") {
        QueryPlan plan =
            parse_query("SELECT DISTINCT ?cat WHERE { T:e subject/broader?/broader? ?cat. }",
                        prefixes);
        ResultSet r = evaluate(plan, g);
        REQUIRE(r.rows.size() == 3);
        CHECK(r.rows[0][0] == node("c1"));
        CHECK(r.rows[1][0] == node("c2"));
        CHECK(r.rows[2][0] == node("c3"));
    }
    SUBCASE("regex filter keeps only the year-introduction label") {
        QueryPlan plan = parse_query(
            "SELECT DISTINCT ?nm WHERE { ?c label ?nm. FILTER regex(?nm, \"^[0-9]+ "
            "introductions$\"). }",
            prefixes);
        ResultSet r = evaluate(plan, g);
        REQUIRE(r.rows.size() == 1);
        CHECK(r.rows[0][0].text() == "1952 introductions");
    }
    SUBCASE("unbound filter variable raises") {
        QueryPlan plan = parse_query(
            "SELECT ?nm WHERE { FILTER regex(?nm, \"x\"). ?c label ?nm. }", prefixes);
        CHECK_THROWS_AS(evaluate(plan, g), EvalError);
    }
}

TEST_CASE("union is commutative and path expansion covers its sub-paths") {
    std::mt19937 rng(23);
    test::QueryCorpusConfig cfg;
    for (int round = 0; round < 30; ++round) {
        Graph g;
        std::vector<Triple> triples = test::gen_triples(rng, cfg, g);

        Term p = Term::iri("http://t/p0"), q = Term::iri("http://t/p1");
        Term start = test::gen_node(rng, cfg);

        auto ends_of = [&](std::vector<PathStep> path) {
            QueryPlan plan;
            plan.form = QueryForm::Select;
            plan.distinct = true;
            plan.projection = {Variable{"x"}};
            plan.where.elements.push_back(TriplePattern{start, std::move(path), Variable{"x"}});
            std::set<Term> out;
            for (const auto& row : evaluate(plan, g).rows) out.insert(row[0]);
            return out;
        };
        // p?/q? == p/q ∪ p ∪ q ∪ identity
        std::set<Term> opt = ends_of({{p, true}, {q, true}});
        std::set<Term> strict = ends_of({{p, false}, {q, false}});
        std::set<Term> just_p = ends_of({{p, false}});
        std::set<Term> just_q = ends_of({{q, false}});
        std::set<Term> expected = strict;
        expected.insert(just_p.begin(), just_p.end());
        expected.insert(just_q.begin(), just_q.end());
        expected.insert(start);
        CHECK(opt == expected);
        CHECK(std::includes(opt.begin(), opt.end(), strict.begin(), strict.end()));

        // Union branch order never matters.
        QueryPlan u1, u2;
        for (QueryPlan* plan : {&u1, &u2}) {
            plan->form = QueryForm::Select;
            plan->distinct = true;
            plan->projection = {Variable{"x"}};
        }
        PatternGroup b1, b2;
        b1.elements.push_back(TriplePattern{Variable{"x"}, {{p, false}}, start});
        b2.elements.push_back(TriplePattern{start, {{q, false}}, Variable{"x"}});
        UnionPattern fwd{{b1, b2}}, rev{{b2, b1}};
        u1.where.elements.push_back(fwd);
        u2.where.elements.push_back(rev);
        CHECK(evaluate(u1, g) == evaluate(u2, g));
    }
}

TEST_CASE("evaluator equals the exhaustive-assignment oracle") {
    std::mt19937 rng(101);
    test::QueryCorpusConfig cfg;
    PrefixTable prefixes = test::corpus_prefixes();
    int mismatches = 0;
    for (int round = 0; round < 30; ++round) {
        Graph g;
        std::vector<Triple> triples = test::gen_triples(rng, cfg, g);
        for (int qi = 0; qi < 4; ++qi) {
            std::string text = test::gen_query_text(rng, cfg);
            CAPTURE(text);
            QueryPlan plan = parse_query(text, prefixes);
            ResultSet got = evaluate(plan, g);
            ResultSet want = test::oracle_evaluate(plan, triples);
            if (!(got == want)) ++mismatches;
            CHECK(got == want);
        }
    }
    CHECK(mismatches == 0);
}

TEST_CASE("ASK agrees with SELECT emptiness; join order does not matter") {
    std::mt19937 rng(77);
    test::QueryCorpusConfig cfg;
    PrefixTable prefixes = test::corpus_prefixes();
    for (int round = 0; round < 20; ++round) {
        Graph g;
        test::gen_triples(rng, cfg, g);
        std::string text = test::gen_query_text(rng, cfg);
        QueryPlan plan = parse_query(text, prefixes);

        std::set<std::string> vars;
        test::collect_variables(plan.where, vars);
        if (!vars.empty()) {
            QueryPlan ask = plan;
            ask.form = QueryForm::Ask;
            ask.projection.clear();
            QueryPlan select = plan;
            select.form = QueryForm::Select;
            select.distinct = true;
            select.projection.clear();
            for (const std::string& v : vars) select.projection.push_back(Variable{v});
            CHECK(evaluate(ask, g).truth == !evaluate(select, g).rows.empty());

            // Shuffling conjunctive elements preserves results (filters stay
            // after their variables are bound, so keep them at the end).
            QueryPlan shuffled = select;
            std::stable_partition(shuffled.where.elements.begin(),
                                  shuffled.where.elements.end(), [](const PatternElement& e) {
                                      return !std::holds_alternative<RegexFilter>(e);
                                  });
            auto filters_begin = std::find_if(
                shuffled.where.elements.begin(), shuffled.where.elements.end(),
                [](const PatternElement& e) { return std::holds_alternative<RegexFilter>(e); });
            std::shuffle(shuffled.where.elements.begin(), filters_begin, rng);
            CHECK(evaluate(shuffled, g) == evaluate(select, g));
        }
    }
}

TEST_CASE("explain is consistent with evaluate and its witnesses hold") {
    std::mt19937 rng(55);
    test::QueryCorpusConfig cfg;
    PrefixTable prefixes = test::corpus_prefixes();
    for (int round = 0; round < 20; ++round) {
        Graph g;
        test::gen_triples(rng, cfg, g);
        std::string text = test::gen_query_text(rng, cfg);
        QueryPlan plan = parse_query(text, prefixes);
        ResultSet direct = evaluate(plan, g);
        ExplainResult ex = explain(plan, g);
        CHECK(ex.result == direct);
        std::vector<std::vector<Term>> projected;
        for (const ExplainedRow& row : ex.explained)
            if (plan.form != QueryForm::Ask) projected.push_back(row.row);
        CHECK(projected == direct.rows);
        for (const ExplainedRow& row : ex.explained)
            for (const Triple& w : row.witnesses) CHECK(g.contains(w));
    }

    // Single pattern: the witness is exactly the matched triple.
    Graph g;
    g.insert(node("a"), vocab::name(), Term::literal("giraffe"));
    QueryPlan plan = parse_query("SELECT ?n WHERE { T:a name ?n. }", fixture_prefixes());
    ExplainResult ex = explain(plan, g);
    REQUIRE(ex.explained.size() == 1);
    REQUIRE(ex.explained[0].witnesses.size() == 1);
    CHECK(ex.explained[0].witnesses[0] ==
          Triple(node("a"), vocab::name(), Term::literal("giraffe")));

    // Path query: witnesses list each edge in order.
    Graph chain;
    chain.insert(node("e"), vocab::subject(), node("c1"));
    chain.insert(node("c1"), vocab::broader(), node("c2"));
    QueryPlan path_plan =
        parse_query("ASK { T:e subject/broader?/broader? T:c2. }", fixture_prefixes());
    ExplainResult pex = explain(path_plan, chain);
    REQUIRE(pex.result.truth);
    REQUIRE(pex.explained.size() == 1);
    REQUIRE(pex.explained[0].witnesses.size() == 2);
    CHECK(pex.explained[0].witnesses[0] == Triple(node("e"), vocab::subject(), node("c1")));
    CHECK(pex.explained[0].witnesses[1] == Triple(node("c1"), vocab::broader(), node("c2")));
}
