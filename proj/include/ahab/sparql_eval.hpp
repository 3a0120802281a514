#pragma once

#include "ahab/graph.hpp"
#include "ahab/sparql.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ahab::sparql {

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluation output. `rows` is populated for SELECT (distinct, sorted,
// one column per projected variable); ASK fills `truth`; COUNT fills `count`.
struct ResultSet {
    QueryForm form = QueryForm::Select;
    std::vector<std::vector<Term>> rows;
    bool truth = false;
    size_t count = 0;

    bool operator==(const ResultSet& o) const {
        return form == o.form && rows == o.rows && truth == o.truth && count == o.count;
    }
};

// A result row together with the concrete triples that satisfied each
// pattern on the way to it.
struct ExplainedRow {
    std::vector<Term> row;
    std::vector<Triple> witnesses;
};

struct ExplainResult {
    ResultSet result;
    // For SELECT/COUNT: one entry per distinct row (first derivation kept).
    // For ASK true: a single entry with empty row.
    std::vector<ExplainedRow> explained;
};

ResultSet evaluate(const QueryPlan& plan, const Graph& graph);
ExplainResult explain(const QueryPlan& plan, const Graph& graph);

} // namespace ahab::sparql
