#pragma once

#include "ahab/graph.hpp"
#include "ahab/image_graph.hpp"
#include "ahab/linker.hpp"
#include "ahab/sparql_eval.hpp"
#include "ahab/templates.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ahab {

struct EngineConfig {
    long alpha = 50;                 // weight of the f1 term
    long relatedness_threshold = 50; // IsImgRelate requires total > threshold
    int transitive_depth = 3;        // subject + (depth-1) broader steps
};

struct ReasonStep {
    enum class Kind { Visual, KbEdge, Score, Aggregation };
    Kind kind = Kind::KbEdge;
    std::string sentence;
    std::vector<Triple> witnesses;
};

struct ReasonTrace {
    std::vector<ReasonStep> steps;
    bool empty() const { return steps.empty(); }
};

std::vector<std::string> render_reason(const ReasonTrace& trace);

// f = alpha * f1 + f2 correlation between two KB entities.
struct CorrelationScore {
    int f1 = 0;
    long f2 = 0;
    long alpha = 50;
    long total = 0;
    std::string f1_source; // wikilink | hyponymy | hyponymy-reverse | name-match
    std::vector<Triple> witnesses;
};

struct HyponymyResult {
    bool holds = false;
    bool name_match = false;      // matched by identical labels, no KB hop
    std::vector<Triple> chain;    // subject/broader edges when path-derived
};

enum class PayloadType { Boolean, Count, Text, NameList, EntityRef, ImageRef };

enum class AnswerStatus {
    Ok,
    UnresolvedObject,  // "no such object found"
    UnresolvedConcept, // "concept not in knowledge base"
    NotRecorded,       // "not recorded in knowledge base"
    NoTemplate,
    MissingImage,
};

struct Answer {
    std::string template_id;
    AnswerStatus status = AnswerStatus::Ok;
    PayloadType payload = PayloadType::Text;

    bool bool_value = false;
    long count_value = 0;
    std::string text_value;
    std::vector<std::string> names;
    std::string entity_iri;
    std::string entity_display;
    std::string image_ref;

    std::string answer_text; // rendered, templated per payload
    std::vector<std::string> executed_queries;
    ReasonTrace trace;

    bool ok() const { return status == AnswerStatus::Ok; }
};

std::string status_message(AnswerStatus status);

// Executes the per-template answer plan over the combined KB + image graph.
// Pure reader over an immutable graph; safe for concurrent questions.
class AnswerEngine {
public:
    AnswerEngine(const Graph& graph, const ConceptRegistry& classes, EngineConfig config = {});

    void add_image(ImageContext context);
    const ImageContext* image(const std::string& image_id) const;
    std::vector<std::string> image_ids() const;

    Answer answer(const ParsedQuestion& question, const std::vector<std::string>& image_ids) const;

    // Building blocks, exposed for direct testing.
    HyponymyResult hyponymy_check(const Term& entity, const Term& target,
                                  std::vector<std::string>* query_log = nullptr) const;
    CorrelationScore correlation_score(const Term& a, const Term& b,
                                       std::vector<std::string>* query_log = nullptr) const;

    const EngineConfig& config() const { return config_; }
    const Graph& graph() const { return graph_; }

private:
    struct ResolvedRef {
        std::optional<Term> object;   // image object node
        std::optional<Term> entity;   // KB entity
        std::string display;
        int object_id = -1;
        double area = 0;
        AnswerStatus status = AnswerStatus::Ok;
        ObjectResolution object_resolution;
        ConceptResolution concept_resolution;
    };

    // One detected/classified visual concept with its KB link.
    struct VisualConcept {
        Term node = Term::iri("http://ahab.local/data/unset");
        std::string name;
        std::string kind; // object | attribute | scene
        std::optional<Term> kb;
    };

    Answer dispatch(const ParsedQuestion& q, const std::vector<const ImageContext*>& images) const;

    Answer answer_is_there_any(const ImageContext& img, const ParsedQuestion& q) const;
    Answer answer_is_img_relate(const ImageContext& img, const ParsedQuestion& q) const;
    Answer answer_what_is(const ImageContext& img, const ParsedQuestion& q) const;
    Answer answer_img_scene(const ImageContext& img, const ParsedQuestion& q) const;
    Answer answer_color_of(const ImageContext& img, const ParsedQuestion& q) const;
    Answer answer_how_many(const ImageContext& img, const ParsedQuestion& q) const;
    Answer answer_obj_action(const ImageContext& img, const ParsedQuestion& q) const;
    Answer answer_is_same_thing(const ImageContext& img, const ParsedQuestion& q) const;
    Answer answer_most_rel_obj(const ImageContext& img, const ParsedQuestion& q) const;
    Answer answer_list_obj(const ImageContext& img, const ParsedQuestion& q) const;
    Answer answer_is_the_a(const ImageContext& img, const ParsedQuestion& q) const;
    Answer answer_sport_equip(const ImageContext& img, const ParsedQuestion& q) const;
    Answer answer_animal_class(const ImageContext& img, const ParsedQuestion& q) const;
    Answer answer_loc_intro(const ImageContext& img, const ParsedQuestion& q) const;
    Answer answer_year_intro(const ImageContext& img, const ParsedQuestion& q) const;
    Answer answer_food_ingredient(const ImageContext& img, const ParsedQuestion& q) const;
    Answer answer_largest_obj(const ImageContext& img, const ParsedQuestion& q) const;
    Answer answer_are_all_the(const ImageContext& img, const ParsedQuestion& q) const;
    Answer answer_comm_prop(const ImageContext& img, const ParsedQuestion& q) const;
    Answer answer_animal_relative(const ImageContext& img, const ParsedQuestion& q) const;
    Answer answer_animal_same(const ImageContext& img, const ParsedQuestion& q) const;
    Answer answer_first_intro(const ImageContext& img, const ParsedQuestion& q) const;
    Answer answer_list_same_year(const ImageContext& img, const ParsedQuestion& q) const;
    Answer answer_two_image_common(const ImageContext& a, const ImageContext& b,
                                   const ParsedQuestion& q) const;
    Answer answer_most_related_image(const std::vector<const ImageContext*>& images,
                                     const ParsedQuestion& q) const;

    // Helpers.
    sparql::ExplainResult run_plan(const sparql::QueryPlan& plan,
                                   std::vector<std::string>* log) const;
    sparql::QueryPlan hyponymy_plan(const Term& entity, const Term& target) const;
    std::vector<sparql::PathStep> transitive_path() const;

    ResolvedRef resolve_object_first(const ImageContext& img, const SlotPhrase& slot) const;
    ResolvedRef resolve_concept_first(const ImageContext* img, const SlotPhrase& slot) const;
    ResolvedRef resolved_from_objects(const ImageContext& img, const ObjectResolution& r) const;

    std::vector<VisualConcept> visual_concepts(const ImageContext& img) const;
    bool object_passes(const ImageContext& img, const Term& object_node,
                       const ConceptResolution& target, HyponymyResult* how,
                       std::vector<std::string>* log) const;

    std::vector<std::string> entity_labels(const Term& entity) const;
    std::string entity_display_name(const Term& entity) const;
    std::string object_class_label(const ImageContext& img, const Term& object_node) const;
    int object_id_of(const ImageContext& img, const Term& object_node) const;
    double object_area(const ImageContext& img, const Term& object_node) const;

    // Introduction-year lookup via the "<year> introductions" category label.
    std::optional<long> introduction_year(const Term& entity,
                                          std::vector<std::string>* log,
                                          std::vector<Triple>* witnesses) const;

    Answer make_error(const ParsedQuestion& q, AnswerStatus status) const;
    static void finalize(Answer& a);

    const Graph& graph_;
    const ConceptRegistry& classes_;
    EngineConfig config_;
    PrefixTable prefixes_;
    std::map<std::string, ImageContext> images_;
};

} // namespace ahab
