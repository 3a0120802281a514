#pragma once

#include "ahab/graph.hpp"
#include "ahab/vocab.hpp"

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace ahab::kb {

// Load statistics and provenance for a snapshot file.
struct KbSnapshot {
    std::string source_path;
    size_t triple_count = 0;
    size_t labels_indexed = 0;
    size_t redirects_indexed = 0;
    std::vector<std::pair<size_t, std::string>> skipped_lines; // (line no, reason)
    PrefixTable prefixes = PrefixTable::standard();
};

struct LoadError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Snapshot line format: `<iri> <iri> <iri> .` or `<iri> <iri> "lexical"@lang .`
// with `#` comments and blank lines. In strict mode a malformed line aborts
// the load; otherwise it is skipped and recorded.
KbSnapshot load_snapshot(const std::string& path, Graph& graph, bool strict = false);
KbSnapshot load_snapshot_stream(std::istream& in, const std::string& name, Graph& graph,
                                bool strict);

// Parse one snapshot line. Returns false for blank/comment lines.
bool parse_snapshot_line(const std::string& line, size_t line_no, Triple* out);

void serialize_snapshot(const Graph& graph, std::ostream& out);
void serialize_snapshot(const Graph& graph, const std::string& path);

// Subjects whose label literal matches `phrase`. Exact byte comparison by
// default; `case_insensitive` folds ASCII case. Only `@en` and untagged
// labels participate.
std::vector<Term> lookup_by_label(const Graph& graph, const std::string& phrase,
                                  bool case_insensitive = false);

// Widest built-in tolerance: case plus space/underscore/trailing-dot
// normalization.
std::vector<Term> lookup_by_label_normalized(const Graph& graph, const std::string& phrase);

struct RedirectResult {
    std::vector<Term> entities;        // redirect-resolved, deduplicated, sorted
    std::vector<Term> cycle_entities;  // inputs whose chains looped
};

// Follow wikiPageRedirects chains to their fixed point. Cycles stop at the
// last entity before repetition and are reported.
RedirectResult resolve_redirects(const Graph& graph, const std::vector<Term>& entities);
Term resolve_redirect(const Graph& graph, const Term& entity);

} // namespace ahab::kb
