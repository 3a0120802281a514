#pragma once

#include "ahab/term.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace ahab {

// In-memory triple store with three-way indexing.
//
// Terms are interned to dense integer ids; all indexes work on ids and
// materialize Terms only at the API boundary. The store is append-only:
// the pipeline loads once and then reads concurrently, so there is no
// delete and no reader-side locking.
class Graph {
public:
    using TermId = uint32_t;

    Graph() = default;

    // Idempotent insert; returns true when the triple was new.
    bool insert(const Triple& t);
    bool insert(const Term& s, const Term& p, const Term& o) {
        return insert(Triple(s, p, o));
    }

    size_t size() const { return triples_.size(); }
    bool empty() const { return triples_.empty(); }

    // Pattern match; std::nullopt acts as a wildcard in any position.
    // Which index serves the lookup depends on the bound positions, but
    // the result is always exactly what a full scan would produce.
    std::vector<Triple> match(const std::optional<Term>& s,
                              const std::optional<Term>& p,
                              const std::optional<Term>& o) const;

    bool contains(const Triple& t) const;

    // Objects of (s, p, *).
    std::vector<Term> objects(const Term& s, const Term& p) const;
    // Subjects of (*, p, o).
    std::vector<Term> subjects(const Term& p, const Term& o) const;

    // Case-tolerant literal lookup: subjects holding a literal under
    // `predicate` whose lexical form matches `lexical`. Modes:
    //   Exact      — byte equality including language tag filter
    //   FoldCase   — ASCII case-insensitive
    //   Normalized — case-insensitive, '_' and ' ' interchangeable,
    //                trailing '.' ignored
    // If `lang` is non-empty, only literals with that tag or no tag match.
    enum class LiteralMode { Exact, FoldCase, Normalized };
    std::vector<Term> subjects_by_literal(const Term& predicate,
                                          const std::string& lexical,
                                          LiteralMode mode,
                                          const std::string& lang = "en") const;

    // Category entities reachable from `entity` by one `first_pred` edge
    // followed by up to (max_steps - 1) `step_pred` edges. Deterministic
    // (sorted); excludes `entity` itself unless the data loops back to it.
    std::vector<Term> transitive_categories(const Term& entity,
                                            int max_steps,
                                            const Term& first_pred,
                                            const Term& step_pred) const;

    // True iff (a, pred, b) or (b, pred, a) exists.
    bool linked_either_direction(const Term& a, const Term& b, const Term& pred) const;

    // Number of distinct x adjacent (either direction, via `pred`) to both
    // a and b, with x not in {a, b}.
    size_t two_step_path_count(const Term& a, const Term& b, const Term& pred) const;

    // All distinct terms occurring in subject or object position, sorted.
    std::vector<Term> node_terms() const;

    // All triples in deterministic order.
    std::vector<Triple> all_triples_sorted() const;

    bool same_triples(const Graph& other) const;

private:
    std::optional<TermId> find_id(const Term& t) const;
    TermId intern(const Term& t);
    Triple materialize(size_t triple_index) const;

    static std::string fold_case(const std::string& s);
    static std::string normalize_label(const std::string& s);

    struct IdTriple {
        TermId s, p, o;
        bool operator==(const IdTriple& x) const { return s == x.s && p == x.p && o == x.o; }
    };
    struct IdTripleHash {
        size_t operator()(const IdTriple& t) const {
            size_t h = t.s;
            h = h * 1000003u + t.p;
            h = h * 1000003u + t.o;
            return h;
        }
    };

    std::vector<Term> terms_;
    std::unordered_map<Term, TermId, TermHash> term_ids_;

    std::vector<IdTriple> triples_;
    std::unordered_map<IdTriple, size_t, IdTripleHash> triple_set_;

    // Three-way index: each map covers one leading position and nests the
    // second key, so every (bound-position) combination has a serving index.
    std::unordered_map<TermId, std::map<TermId, std::vector<size_t>>> by_s_; // s -> p -> triples
    std::unordered_map<TermId, std::map<TermId, std::vector<size_t>>> by_p_; // p -> o -> triples
    std::unordered_map<TermId, std::map<TermId, std::vector<size_t>>> by_o_; // o -> s -> triples

    struct LiteralEntry {
        TermId subject;
        TermId object; // the literal term
    };
    // (predicate, normalized lexical) -> entries; filtered per mode on lookup.
    std::map<std::pair<TermId, std::string>, std::vector<LiteralEntry>> literal_index_;
};

} // namespace ahab
