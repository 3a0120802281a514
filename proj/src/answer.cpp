#include "ahab/answer.hpp"

#include "ahab/kb.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

namespace ahab {

using sparql::PatternGroup;
using sparql::PatternTerm;
using sparql::QueryForm;
using sparql::QueryPlan;
using sparql::RegexFilter;
using sparql::TriplePattern;
using sparql::UnionPattern;
using sparql::Variable;

namespace {

std::string fold(const std::string& s) {
    std::string out;
    for (unsigned char c : s) out += static_cast<char>(std::tolower(c));
    return out;
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

TriplePattern plain(PatternTerm s, const Term& p, PatternTerm o) {
    return TriplePattern{std::move(s), {sparql::PathStep{p, false}}, std::move(o)};
}

std::string join_names(const std::vector<std::string>& names) {
    std::string out;
    for (const std::string& n : names) {
        if (!out.empty()) out += ", ";
        out += n;
    }
    return out;
}

std::string capitalize(const std::string& s) {
    std::string out = s;
    if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    return out;
}

} // namespace

std::string status_message(AnswerStatus status) {
    switch (status) {
    case AnswerStatus::Ok: return "ok";
    case AnswerStatus::UnresolvedObject: return "no such object found";
    case AnswerStatus::UnresolvedConcept: return "concept not in knowledge base";
    case AnswerStatus::NotRecorded: return "not recorded in knowledge base";
    case AnswerStatus::NoTemplate: return "question does not match any template";
    case AnswerStatus::MissingImage: return "image not loaded";
    }
    return "error";
}

std::vector<std::string> render_reason(const ReasonTrace& trace) {
    std::vector<std::string> lines;
    for (const ReasonStep& s : trace.steps) lines.push_back(s.sentence);
    return lines;
}

AnswerEngine::AnswerEngine(const Graph& graph, const ConceptRegistry& classes,
                           EngineConfig config)
    : graph_(graph), classes_(classes), config_(config),
      prefixes_(PrefixTable::standard()) {}

void AnswerEngine::add_image(ImageContext context) {
    images_.insert_or_assign(context.annotation.image_id, std::move(context));
}

const ImageContext* AnswerEngine::image(const std::string& image_id) const {
    auto it = images_.find(image_id);
    return it == images_.end() ? nullptr : &it->second;
}

std::vector<std::string> AnswerEngine::image_ids() const {
    std::vector<std::string> out;
    for (const auto& [id, _] : images_) out.push_back(id);
    return out;
}

// ---------------------------------------------------------------- helpers

sparql::ExplainResult AnswerEngine::run_plan(const QueryPlan& plan,
                                             std::vector<std::string>* log) const {
    std::string text = sparql::print_query(plan, prefixes_);
    if (log) log->push_back(text);
    return sparql::explain(plan, graph_);
}

std::vector<sparql::PathStep> AnswerEngine::transitive_path() const {
    std::vector<sparql::PathStep> path{sparql::PathStep{vocab::subject(), false}};
    for (int i = 1; i < config_.transitive_depth; ++i)
        path.push_back(sparql::PathStep{vocab::broader(), true});
    return path;
}

QueryPlan AnswerEngine::hyponymy_plan(const Term& entity, const Term& target) const {
    QueryPlan plan;
    plan.form = QueryForm::Ask;
    plan.where.elements.push_back(TriplePattern{entity, transitive_path(), target});
    return plan;
}

std::vector<std::string> AnswerEngine::entity_labels(const Term& entity) const {
    std::vector<std::string> out;
    for (const Term& l : graph_.objects(entity, vocab::label()))
        if (l.is_literal() && (l.lang().empty() || l.lang() == "en")) out.push_back(l.text());
    return out;
}

std::string AnswerEngine::entity_display_name(const Term& entity) const {
    std::vector<std::string> labels = entity_labels(entity);
    if (!labels.empty()) return labels.front();
    return vocab::display_name(entity);
}

std::string AnswerEngine::object_class_label(const ImageContext& img,
                                             const Term& object_node) const {
    for (const auto& [id, node] : img.handle.object_by_id) {
        if (node == object_node) {
            const DetectedObject* obj = img.annotation.find_object(id);
            if (obj) return obj->class_label;
        }
    }
    return vocab::display_name(object_node);
}

int AnswerEngine::object_id_of(const ImageContext& img, const Term& object_node) const {
    for (const auto& [id, node] : img.handle.object_by_id)
        if (node == object_node) return id;
    return -1;
}

double AnswerEngine::object_area(const ImageContext& img, const Term& object_node) const {
    const DetectedObject* obj = img.annotation.find_object(object_id_of(img, object_node));
    return obj ? obj->bbox.area() : 0.0;
}

namespace {

std::string edge_sentence(const Triple& t, const Graph&,
                          const std::function<std::string(const Term&)>& show) {
    const std::string& p = t.predicate.text();
    std::string a = show(t.subject);
    std::string b = show(t.object);
    if (t.predicate == vocab::subject()) return a + " is in category " + b + ".";
    if (t.predicate == vocab::broader()) return a + " has broader category " + b + ".";
    if (t.predicate == vocab::wiki_link()) return a + " is wiki-linked with " + b + ".";
    if (t.predicate == vocab::ingredient()) return a + " has ingredient " + b + ".";
    if (t.predicate == vocab::same_concept())
        return "visual concept " + a + " maps to KB entity " + b + ".";
    if (t.predicate == vocab::wiki_page_redirects()) return a + " redirects to " + b + ".";
    for (const auto& [word, pred] : vocab::taxonomy_ranks_specific_first())
        if (t.predicate == pred) return a + " has " + word + " " + b + ".";
    return a + " " + vocab::display_name(t.predicate) + " " + b + ".";
}

} // namespace

// ----------------------------------------------------------- core checks

HyponymyResult AnswerEngine::hyponymy_check(const Term& entity, const Term& target,
                                            std::vector<std::string>* query_log) const {
    HyponymyResult res;
    if (entity == target) {
        res.holds = true;
        res.name_match = true;
        return res;
    }
    std::vector<std::string> la = entity_labels(entity);
    std::vector<std::string> lb = entity_labels(target);
    for (const std::string& a : la)
        for (const std::string& b : lb)
            if (fold(a) == fold(b)) {
                res.holds = true;
                res.name_match = true;
                return res;
            }

    sparql::ExplainResult r = run_plan(hyponymy_plan(entity, target), query_log);
    res.holds = r.result.truth;
    if (res.holds && !r.explained.empty()) res.chain = r.explained.front().witnesses;
    return res;
}

CorrelationScore AnswerEngine::correlation_score(const Term& a, const Term& b,
                                                 std::vector<std::string>* query_log) const {
    CorrelationScore score;
    score.alpha = config_.alpha;

    // ASK logged as the union of the direct-link and both hyponymy routes.
    {
        QueryPlan ask;
        ask.form = QueryForm::Ask;
        UnionPattern u;
        PatternGroup g1, g2, g3, g4;
        g1.elements.push_back(plain(a, vocab::wiki_link(), b));
        g2.elements.push_back(plain(b, vocab::wiki_link(), a));
        g3.elements.push_back(TriplePattern{a, transitive_path(), b});
        g4.elements.push_back(TriplePattern{b, transitive_path(), a});
        u.branches = {g1, g2, g3, g4};
        ask.where.elements.push_back(u);
        if (query_log) query_log->push_back(sparql::print_query(ask, prefixes_));
    }

    bool wl = graph_.linked_either_direction(a, b, vocab::wiki_link());
    if (wl) {
        score.f1 = 1;
        score.f1_source = "wikilink";
        if (graph_.contains(Triple(a, vocab::wiki_link(), b)))
            score.witnesses.push_back(Triple(a, vocab::wiki_link(), b));
        else
            score.witnesses.push_back(Triple(b, vocab::wiki_link(), a));
    } else {
        HyponymyResult hy = hyponymy_check(a, b, nullptr);
        if (hy.holds) {
            score.f1 = 1;
            score.f1_source = hy.name_match ? "name-match" : "hyponymy";
            score.witnesses = hy.chain;
        } else {
            HyponymyResult rev = hyponymy_check(b, a, nullptr);
            if (rev.holds) {
                score.f1 = 1;
                score.f1_source = rev.name_match ? "name-match" : "hyponymy-reverse";
                score.witnesses = rev.chain;
            }
        }
    }

    // COUNT of shared WikiLink neighbors, logged in the two-block union form.
    {
        QueryPlan count;
        count.form = QueryForm::CountDistinct;
        count.projection = {Variable{"x"}};
        UnionPattern u1, u2;
        PatternGroup a1, a2, b1, b2;
        a1.elements.push_back(plain(a, vocab::wiki_link(), Variable{"x"}));
        a2.elements.push_back(plain(Variable{"x"}, vocab::wiki_link(), a));
        b1.elements.push_back(plain(b, vocab::wiki_link(), Variable{"x"}));
        b2.elements.push_back(plain(Variable{"x"}, vocab::wiki_link(), b));
        u1.branches = {a1, a2};
        u2.branches = {b1, b2};
        count.where.elements.push_back(u1);
        count.where.elements.push_back(u2);
        if (query_log) query_log->push_back(sparql::print_query(count, prefixes_));
    }
    score.f2 = static_cast<long>(graph_.two_step_path_count(a, b, vocab::wiki_link()));

    score.total = score.alpha * score.f1 + score.f2;
    return score;
}

// -------------------------------------------------------------- resolve

AnswerEngine::ResolvedRef AnswerEngine::resolved_from_objects(const ImageContext& img,
                                                              const ObjectResolution& r) const {
    ResolvedRef ref;
    ref.object_resolution = r;
    if (r.empty()) {
        ref.status = AnswerStatus::UnresolvedObject;
        return ref;
    }
    ref.object = r.primary();
    ref.object_id = r.object_ids.front();
    ref.area = object_area(img, *ref.object);
    ref.display = object_class_label(img, *ref.object);
    ref.entity = kb_link_of(graph_, *ref.object);
    return ref;
}

AnswerEngine::ResolvedRef AnswerEngine::resolve_object_first(const ImageContext& img,
                                                             const SlotPhrase& slot) const {
    ObjectResolution objres = resolve_object_slot(img, slot, classes_);
    if (!objres.empty()) return resolved_from_objects(img, objres);

    ResolvedRef ref;
    ref.object_resolution = objres;
    ConceptResolution con = resolve_concept_slot(graph_, slot);
    ref.concept_resolution = con;
    if (con.resolved()) {
        ref.entity = con.entity;
        ref.display = entity_display_name(*con.entity);
        return ref;
    }
    ref.status = AnswerStatus::UnresolvedObject;
    return ref;
}

AnswerEngine::ResolvedRef AnswerEngine::resolve_concept_first(const ImageContext* img,
                                                              const SlotPhrase& slot) const {
    ResolvedRef ref;
    // Qualified phrases ("right animal") are image references, not concepts.
    bool image_reference = slot.size || slot.location || slot.head == "object";
    if (!image_reference) {
        ConceptResolution con = resolve_concept_slot(graph_, slot);
        ref.concept_resolution = con;
        if (con.resolved()) {
            ref.entity = con.entity;
            ref.display = entity_display_name(*con.entity);
            return ref;
        }
    }
    if (img) {
        ObjectResolution objres = resolve_object_slot(*img, slot, classes_);
        if (!objres.empty()) return resolved_from_objects(*img, objres);
    }
    ref.status = AnswerStatus::UnresolvedConcept;
    return ref;
}

std::vector<AnswerEngine::VisualConcept> AnswerEngine::visual_concepts(
    const ImageContext& img) const {
    std::vector<VisualConcept> out;
    std::set<std::string> seen;
    auto add = [&](const Term& node, const std::string& name, const std::string& kind) {
        if (!seen.insert(node.text()).second) return;
        VisualConcept vc;
        vc.node = node;
        vc.name = name;
        vc.kind = kind;
        vc.kb = kb_link_of(graph_, node);
        out.push_back(std::move(vc));
    };
    for (const DetectedObject& obj : img.annotation.objects)
        add(object_category_iri(obj.class_label), obj.class_label, "object");
    for (const ScoredLabel& att : img.annotation.attributes)
        add(attribute_category_iri(att.label), att.label, "attribute");
    for (const ScoredLabel& scn : img.annotation.scenes)
        add(scene_category_iri(scn.label), scn.label, "scene");
    return out;
}

bool AnswerEngine::object_passes(const ImageContext& img, const Term& object_node,
                                 const ConceptResolution& target, HyponymyResult* how,
                                 std::vector<std::string>* log) const {
    if (!target.resolved()) return false;
    std::optional<Term> link = kb_link_of(graph_, object_node);
    if (link) {
        HyponymyResult hy = hyponymy_check(*link, *target.entity, log);
        if (how) *how = hy;
        if (hy.holds) return true;
    }
    // No KB hop needed when the concept name is the object's class name.
    std::string cls = fold(lemmatize_phrase(object_class_label(img, object_node)));
    for (const std::string& label : entity_labels(*target.entity)) {
        if (fold(lemmatize_phrase(label)) == cls) {
            if (how) {
                how->holds = true;
                how->name_match = true;
                how->chain.clear();
            }
            return true;
        }
    }
    if (fold(target.phrase) == cls) {
        if (how) {
            how->holds = true;
            how->name_match = true;
            how->chain.clear();
        }
        return true;
    }
    return false;
}

std::optional<long> AnswerEngine::introduction_year(const Term& entity,
                                                    std::vector<std::string>* log,
                                                    std::vector<Triple>* witnesses) const {
    QueryPlan plan;
    plan.form = QueryForm::Select;
    plan.distinct = true;
    plan.projection = {Variable{"cat_nm"}};
    plan.where.elements.push_back(plain(entity, vocab::subject(), Variable{"cat"}));
    plan.where.elements.push_back(plain(Variable{"cat"}, vocab::label(), Variable{"cat_nm"}));
    plan.where.elements.push_back(RegexFilter{Variable{"cat_nm"}, "^[0-9]+ introductions$"});
    sparql::ExplainResult r = run_plan(plan, log);
    if (r.result.rows.empty()) return std::nullopt;
    const std::string& label = r.explained.front().row.front().text();
    if (witnesses) *witnesses = r.explained.front().witnesses;
    return std::stol(label.substr(0, label.find(' ')));
}

Answer AnswerEngine::make_error(const ParsedQuestion& q, AnswerStatus status) const {
    Answer a;
    a.template_id = q.template_id;
    a.status = status;
    finalize(a);
    return a;
}

void AnswerEngine::finalize(Answer& a) {
    if (a.status != AnswerStatus::Ok) {
        a.answer_text = status_message(a.status);
        return;
    }
    switch (a.payload) {
    case PayloadType::Boolean: a.answer_text = a.bool_value ? "Yes." : "No."; break;
    case PayloadType::Count: a.answer_text = std::to_string(a.count_value); break;
    case PayloadType::Text: a.answer_text = a.text_value; break;
    case PayloadType::NameList:
        a.answer_text = a.names.empty() ? a.text_value : join_names(a.names);
        break;
    case PayloadType::EntityRef: a.answer_text = a.entity_display; break;
    case PayloadType::ImageRef: a.answer_text = a.image_ref; break;
    }
}

// ------------------------------------------------------------- dispatch

Answer AnswerEngine::answer(const ParsedQuestion& q,
                            const std::vector<std::string>& image_ids) const {
    std::vector<const ImageContext*> imgs;
    for (const std::string& id : image_ids) {
        const ImageContext* ctx = image(id);
        if (!ctx) {
            Answer a;
            a.template_id = q.template_id;
            a.status = AnswerStatus::MissingImage;
            a.text_value = "image not loaded: " + id;
            finalize(a);
            a.answer_text = a.text_value;
            return a;
        }
        imgs.push_back(ctx);
    }
    return dispatch(q, imgs);
}

Answer AnswerEngine::dispatch(const ParsedQuestion& q,
                              const std::vector<const ImageContext*>& images) const {
    const std::string& id = q.template_id;

    if (id == "MostRelImg") return answer_most_related_image(images, q);
    if (id == "CommProp2Img") {
        if (images.size() < 2) return make_error(q, AnswerStatus::MissingImage);
        return answer_two_image_common(*images[0], *images[1], q);
    }
    if (images.empty()) return make_error(q, AnswerStatus::MissingImage);
    const ImageContext& img = *images.front();

    if (id == "IsThereAny") return answer_is_there_any(img, q);
    if (id == "IsImgRelate") return answer_is_img_relate(img, q);
    if (id == "WhatIs") return answer_what_is(img, q);
    if (id == "ImgScene") return answer_img_scene(img, q);
    if (id == "ColorOf") return answer_color_of(img, q);
    if (id == "HowMany") return answer_how_many(img, q);
    if (id == "ObjAction") return answer_obj_action(img, q);
    if (id == "IsSameThing") return answer_is_same_thing(img, q);
    if (id == "MostRelObj") return answer_most_rel_obj(img, q);
    if (id == "ListObj") return answer_list_obj(img, q);
    if (id == "IsTheA") return answer_is_the_a(img, q);
    if (id == "SportEquip") return answer_sport_equip(img, q);
    if (id == "AnimalClass") return answer_animal_class(img, q);
    if (id == "LocIntro") return answer_loc_intro(img, q);
    if (id == "YearIntro") return answer_year_intro(img, q);
    if (id == "FoodIngredient") return answer_food_ingredient(img, q);
    if (id == "LargestObj") return answer_largest_obj(img, q);
    if (id == "AreAllThe") return answer_are_all_the(img, q);
    if (id == "CommProp") return answer_comm_prop(img, q);
    if (id == "AnimalRelative") return answer_animal_relative(img, q);
    if (id == "AnimalSame") return answer_animal_same(img, q);
    if (id == "FirstIntro") return answer_first_intro(img, q);
    if (id == "ListSameYear") return answer_list_same_year(img, q);

    return make_error(q, AnswerStatus::NoTemplate);
}

// ----------------------------------------------------- hyponymy family

Answer AnswerEngine::answer_is_there_any(const ImageContext& img,
                                         const ParsedQuestion& q) const {
    Answer a;
    a.template_id = q.template_id;
    a.payload = PayloadType::Boolean;

    ConceptResolution target = resolve_concept_slot(graph_, q.slots.at("concept"));
    if (!target.resolved()) return make_error(q, AnswerStatus::UnresolvedConcept);

    bool any = false;
    for (const DetectedObject& obj : img.annotation.objects) {
        Term node = img.handle.object_by_id.at(obj.object_id);
        HyponymyResult how;
        if (!object_passes(img, node, target, &how, &a.executed_queries)) continue;
        any = true;
        a.trace.steps.push_back(
            {ReasonStep::Kind::Visual,
             "The image contains a " + obj.class_label + " (object " +
                 std::to_string(obj.object_id) + ").",
             {Triple(img.handle.image_entity, vocab::contain(), node)}});
        if (how.name_match) {
            a.trace.steps.push_back({ReasonStep::Kind::KbEdge,
                                     "Object class " + quote(obj.class_label) +
                                         " matches the concept " + quote(target.phrase) +
                                         " by name.",
                                     {}});
        } else {
            auto show = [&](const Term& t) { return entity_display_name(t); };
            for (const Triple& t : how.chain)
                a.trace.steps.push_back(
                    {ReasonStep::Kind::KbEdge, edge_sentence(t, graph_, show), {t}});
        }
        break; // one witness suffices
    }
    a.bool_value = any;
    if (!any) a.trace.steps.clear(); // no path found: nothing to explain
    finalize(a);
    return a;
}

Answer AnswerEngine::answer_how_many(const ImageContext& img, const ParsedQuestion& q) const {
    Answer a;
    a.template_id = q.template_id;
    a.payload = PayloadType::Count;

    ConceptResolution target = resolve_concept_slot(graph_, q.slots.at("concept"));
    if (!target.resolved()) return make_error(q, AnswerStatus::UnresolvedConcept);

    long count = 0;
    bool used_kb = false;
    ReasonTrace trace;
    for (const DetectedObject& obj : img.annotation.objects) {
        Term node = img.handle.object_by_id.at(obj.object_id);
        HyponymyResult how;
        if (!object_passes(img, node, target, &how, &a.executed_queries)) continue;
        ++count;
        trace.steps.push_back({ReasonStep::Kind::Visual,
                               "Object " + std::to_string(obj.object_id) + " (" +
                                   obj.class_label + ") counts as " + quote(target.phrase) + ".",
                               {Triple(img.handle.image_entity, vocab::contain(), node)}});
        if (!how.name_match) {
            used_kb = true;
            auto show = [&](const Term& t) { return entity_display_name(t); };
            for (const Triple& t : how.chain)
                trace.steps.push_back(
                    {ReasonStep::Kind::KbEdge, edge_sentence(t, graph_, show), {t}});
        }
    }
    a.count_value = count;
    // A purely name-matched count is a visual answer; no reason is coded.
    if (used_kb) {
        trace.steps.push_back({ReasonStep::Kind::Aggregation,
                               std::to_string(count) + " object(s) passed the category check.",
                               {}});
        a.trace = std::move(trace);
    }
    finalize(a);
    return a;
}

Answer AnswerEngine::answer_is_the_a(const ImageContext& img, const ParsedQuestion& q) const {
    Answer a;
    a.template_id = q.template_id;
    a.payload = PayloadType::Boolean;

    ObjectResolution objres = resolve_object_slot(img, q.slots.at("obj"), classes_);
    if (objres.empty()) return make_error(q, AnswerStatus::UnresolvedObject);
    ConceptResolution target = resolve_concept_slot(graph_, q.slots.at("concept"));
    if (!target.resolved()) return make_error(q, AnswerStatus::UnresolvedConcept);

    Term node = objres.primary();
    HyponymyResult how;
    a.bool_value = object_passes(img, node, target, &how, &a.executed_queries);
    int oid = object_id_of(img, node);
    a.trace.steps.push_back({ReasonStep::Kind::Visual,
                             "The question refers to object " + std::to_string(oid) + " (" +
                                 object_class_label(img, node) + ").",
                             {Triple(img.handle.image_entity, vocab::contain(), node)}});
    if (a.bool_value) {
        if (how.name_match) {
            a.trace.steps.push_back({ReasonStep::Kind::KbEdge,
                                     "Its class name matches " + quote(target.phrase) +
                                         " directly.",
                                     {}});
        } else {
            auto show = [&](const Term& t) { return entity_display_name(t); };
            for (const Triple& t : how.chain)
                a.trace.steps.push_back(
                    {ReasonStep::Kind::KbEdge, edge_sentence(t, graph_, show), {t}});
        }
    } else {
        a.trace.steps.push_back({ReasonStep::Kind::Aggregation,
                                 "No category path connects it to " + quote(target.phrase) +
                                     " within " + std::to_string(config_.transitive_depth) +
                                     " steps.",
                                 {}});
    }
    finalize(a);
    return a;
}

Answer AnswerEngine::answer_are_all_the(const ImageContext& img,
                                        const ParsedQuestion& q) const {
    Answer a;
    a.template_id = q.template_id;
    a.payload = PayloadType::Boolean;

    ObjectResolution objres = resolve_object_slot(img, q.slots.at("obj"), classes_);
    ConceptResolution target = resolve_concept_slot(graph_, q.slots.at("concept"));
    if (!target.resolved()) return make_error(q, AnswerStatus::UnresolvedConcept);

    size_t passed = 0;
    for (size_t i = 0; i < objres.objects.size(); ++i) {
        HyponymyResult how;
        if (object_passes(img, objres.objects[i], target, &how, &a.executed_queries)) {
            ++passed;
            if (!how.name_match) {
                auto show = [&](const Term& t) { return entity_display_name(t); };
                for (const Triple& t : how.chain)
                    a.trace.steps.push_back(
                        {ReasonStep::Kind::KbEdge, edge_sentence(t, graph_, show), {t}});
            }
        }
    }
    a.bool_value = passed == objres.objects.size();
    a.trace.steps.push_back({ReasonStep::Kind::Aggregation,
                             std::to_string(passed) + " of " +
                                 std::to_string(objres.objects.size()) + " " +
                                 q.slots.at("obj").head + " object(s) pass the " +
                                 quote(target.phrase) + " check.",
                             {}});
    finalize(a);
    return a;
}

Answer AnswerEngine::answer_largest_obj(const ImageContext& img,
                                        const ParsedQuestion& q) const {
    Answer a;
    a.template_id = q.template_id;
    a.payload = PayloadType::EntityRef;

    ConceptResolution target = resolve_concept_slot(graph_, q.slots.at("concept"));
    if (!target.resolved()) return make_error(q, AnswerStatus::UnresolvedConcept);
    bool want_largest = true;
    auto order = q.slots.find("order");
    if (order != q.slots.end()) want_largest = order->second.phrase != "smallest";

    const DetectedObject* best = nullptr;
    HyponymyResult best_how;
    for (const DetectedObject& obj : img.annotation.objects) {
        Term node = img.handle.object_by_id.at(obj.object_id);
        HyponymyResult how;
        if (!object_passes(img, node, target, &how, &a.executed_queries)) continue;
        bool better = false;
        if (!best) {
            better = true;
        } else if (obj.bbox.area() != best->bbox.area()) {
            better = want_largest ? obj.bbox.area() > best->bbox.area()
                                  : obj.bbox.area() < best->bbox.area();
        } else {
            better = obj.object_id < best->object_id;
        }
        if (better) {
            best = &obj;
            best_how = how;
        }
    }
    if (!best) return make_error(q, AnswerStatus::UnresolvedObject);

    a.entity_iri = object_entity_iri(img.annotation.image_id, best->object_id).text();
    a.entity_display = "the " + best->class_label + " (object " +
                       std::to_string(best->object_id) + ")";
    a.trace.steps.push_back({ReasonStep::Kind::Visual,
                             "Object " + std::to_string(best->object_id) + " (" +
                                 best->class_label + ") has the " +
                                 std::string(want_largest ? "largest" : "smallest") +
                                 " bounding-box area (" +
                                 std::to_string(static_cast<long>(best->bbox.area())) +
                                 " px^2) among matching objects.",
                             {}});
    if (!best_how.name_match) {
        auto show = [&](const Term& t) { return entity_display_name(t); };
        for (const Triple& t : best_how.chain)
            a.trace.steps.push_back(
                {ReasonStep::Kind::KbEdge, edge_sentence(t, graph_, show), {t}});
    }
    finalize(a);
    return a;
}

// ----------------------------------------------------------- relatedness

Answer AnswerEngine::answer_is_img_relate(const ImageContext& img,
                                          const ParsedQuestion& q) const {
    Answer a;
    a.template_id = q.template_id;
    a.payload = PayloadType::Boolean;

    ConceptResolution target = resolve_concept_slot(graph_, q.slots.at("concept"));
    if (!target.resolved()) return make_error(q, AnswerStatus::UnresolvedConcept);

    long best_total = -1;
    CorrelationScore best_score;
    VisualConcept best_vc;
    for (const VisualConcept& vc : visual_concepts(img)) {
        if (!vc.kb) continue;
        CorrelationScore s = correlation_score(*vc.kb, *target.entity, &a.executed_queries);
        if (s.total > best_total) {
            best_total = s.total;
            best_score = s;
            best_vc = vc;
        }
    }
    a.bool_value = best_total > config_.relatedness_threshold;
    if (best_total >= 0) {
        a.trace.steps.push_back({ReasonStep::Kind::Visual,
                                 "The image has " + best_vc.kind + " " + quote(best_vc.name) +
                                     ".",
                                 {}});
        auto show = [&](const Term& t) { return entity_display_name(t); };
        for (const Triple& t : best_score.witnesses)
            a.trace.steps.push_back(
                {ReasonStep::Kind::KbEdge, edge_sentence(t, graph_, show), {t}});
        a.trace.steps.push_back(
            {ReasonStep::Kind::Score,
             "Correlation of " + quote(best_vc.name) + " and " + quote(target.phrase) + ": " +
                 std::to_string(best_score.alpha) + "*" + std::to_string(best_score.f1) + " + " +
                 std::to_string(best_score.f2) + " = " + std::to_string(best_score.total) + ".",
             {}});
        a.trace.steps.push_back(
            {ReasonStep::Kind::Aggregation,
             "The maximum score " + std::to_string(best_total) + " is " +
                 (a.bool_value ? "above " : "not above ") +
                 std::to_string(config_.relatedness_threshold) + ".",
             {}});
    }
    finalize(a);
    return a;
}

Answer AnswerEngine::answer_most_rel_obj(const ImageContext& img,
                                         const ParsedQuestion& q) const {
    Answer a;
    a.template_id = q.template_id;
    a.payload = PayloadType::EntityRef;

    ObjectResolution objres = resolve_object_slot(img, q.slots.at("obj"), classes_);
    if (objres.empty()) return make_error(q, AnswerStatus::UnresolvedObject);
    ConceptResolution target = resolve_concept_slot(graph_, q.slots.at("concept"));
    if (!target.resolved()) return make_error(q, AnswerStatus::UnresolvedConcept);

    struct Scored {
        Term node = Term::iri("http://ahab.local/data/unset");
        int id = -1;
        double area = 0;
        long total = 0;
        CorrelationScore score;
        std::string label;
    };
    std::vector<Scored> scored;
    for (size_t i = 0; i < objres.objects.size(); ++i) {
        Scored s;
        s.node = objres.objects[i];
        s.id = objres.object_ids[i];
        s.area = object_area(img, s.node);
        s.label = object_class_label(img, s.node);
        std::optional<Term> link = kb_link_of(graph_, s.node);
        if (link) {
            s.score = correlation_score(*link, *target.entity, &a.executed_queries);
            s.total = s.score.total;
        } else {
            // Unlinked object: only a direct name match can score.
            std::string cls = fold(lemmatize_phrase(s.label));
            bool name = fold(target.phrase) == cls;
            s.score.alpha = config_.alpha;
            s.score.f1 = name ? 1 : 0;
            s.score.f1_source = name ? "name-match" : "";
            s.score.total = s.score.alpha * s.score.f1;
            s.total = s.score.total;
        }
        scored.push_back(std::move(s));
    }
    const Scored* best = &scored.front();
    for (const Scored& s : scored) {
        if (s.total > best->total ||
            (s.total == best->total &&
             (s.area > best->area || (s.area == best->area && s.id < best->id))))
            best = &s;
    }
    for (const Scored& s : scored) {
        a.trace.steps.push_back(
            {ReasonStep::Kind::Score,
             "Object " + std::to_string(s.id) + " (" + s.label + ") scores " +
                 std::to_string(s.score.alpha) + "*" + std::to_string(s.score.f1) + " + " +
                 std::to_string(s.score.f2) + " = " + std::to_string(s.total) + " against " +
                 quote(target.phrase) + ".",
             s.score.witnesses});
    }
    a.trace.steps.push_back({ReasonStep::Kind::Aggregation,
                             "Object " + std::to_string(best->id) + " has the highest score.",
                             {}});
    a.entity_iri = best->node.text();
    a.entity_display = "the " + best->label + " (object " + std::to_string(best->id) + ")";
    finalize(a);
    return a;
}

// --------------------------------------------------------- visual family

Answer AnswerEngine::answer_what_is(const ImageContext& img, const ParsedQuestion& q) const {
    Answer a;
    a.template_id = q.template_id;
    a.payload = PayloadType::Text;

    ObjectResolution objres = resolve_object_slot(img, q.slots.at("obj"), classes_);
    if (objres.empty()) return make_error(q, AnswerStatus::UnresolvedObject);
    Term node = objres.primary();
    std::optional<Term> link = kb_link_of(graph_, node);
    std::string cls = object_class_label(img, node);
    if (link) {
        QueryPlan plan;
        plan.form = QueryForm::Select;
        plan.projection = {Variable{"desc"}};
        plan.where.elements.push_back(plain(*link, vocab::comment(), Variable{"desc"}));
        sparql::ExplainResult r = run_plan(plan, &a.executed_queries);
        if (!r.result.rows.empty()) {
            a.text_value = r.result.rows.front().front().text();
            finalize(a);
            return a;
        }
    }
    a.text_value = "a " + cls;
    finalize(a);
    return a;
}

Answer AnswerEngine::answer_color_of(const ImageContext& img, const ParsedQuestion& q) const {
    Answer a;
    a.template_id = q.template_id;
    a.payload = PayloadType::Text;

    ObjectResolution objres = resolve_object_slot(img, q.slots.at("obj"), classes_);
    if (objres.empty()) return make_error(q, AnswerStatus::UnresolvedObject);
    QueryPlan plan;
    plan.form = QueryForm::Select;
    plan.distinct = true;
    plan.projection = {Variable{"obj_color"}};
    plan.where.elements.push_back(plain(objres.primary(), vocab::color(), Variable{"obj_color"}));
    sparql::ExplainResult r = run_plan(plan, &a.executed_queries);
    a.text_value = r.result.rows.empty() ? "color unknown" : r.result.rows.front().front().text();
    finalize(a);
    return a;
}

Answer AnswerEngine::answer_is_same_thing(const ImageContext& img,
                                          const ParsedQuestion& q) const {
    Answer a;
    a.template_id = q.template_id;
    a.payload = PayloadType::Boolean;

    ObjectResolution r1 = resolve_object_slot(img, q.slots.at("obj1"), classes_);
    ObjectResolution r2 = resolve_object_slot(img, q.slots.at("obj2"), classes_);
    if (r1.empty() || r2.empty()) return make_error(q, AnswerStatus::UnresolvedObject);

    QueryPlan plan;
    plan.form = QueryForm::Ask;
    plan.where.elements.push_back(plain(r1.primary(), vocab::name(), Variable{"obj_nm"}));
    plan.where.elements.push_back(plain(r2.primary(), vocab::name(), Variable{"obj_nm"}));
    sparql::ExplainResult r = run_plan(plan, &a.executed_queries);
    a.bool_value = r.result.truth;
    finalize(a);
    return a;
}

Answer AnswerEngine::answer_list_obj(const ImageContext& img, const ParsedQuestion& q) const {
    Answer a;
    a.template_id = q.template_id;
    a.payload = PayloadType::NameList;

    QueryPlan plan;
    plan.form = QueryForm::Select;
    plan.distinct = true;
    plan.projection = {Variable{"obj_nm"}};
    plan.where.elements.push_back(
        plain(img.handle.image_entity, vocab::contain(), Variable{"obj"}));
    plan.where.elements.push_back(plain(Variable{"obj"}, vocab::name(), Variable{"obj_nm"}));
    sparql::ExplainResult r = run_plan(plan, &a.executed_queries);
    std::set<std::string> names;
    for (const auto& row : r.result.rows) {
        const Term& value = row.front();
        if (value.is_literal()) {
            names.insert(value.text());
            continue;
        }
        for (const Term& n : graph_.objects(value, vocab::name()))
            if (n.is_literal()) names.insert(n.text());
    }
    a.names.assign(names.begin(), names.end());
    if (a.names.empty()) a.text_value = "no objects detected";
    finalize(a);
    return a;
}

Answer AnswerEngine::answer_img_scene(const ImageContext& img, const ParsedQuestion& q) const {
    Answer a;
    a.template_id = q.template_id;
    a.payload = PayloadType::NameList;

    // Attributes first: they are trained on in-domain data.
    QueryPlan att;
    att.form = QueryForm::Select;
    att.distinct = true;
    att.projection = {Variable{"att_nm"}};
    att.where.elements.push_back(plain(img.handle.image_entity, vocab::img_att(), Variable{"att"}));
    att.where.elements.push_back(
        plain(Variable{"att"}, vocab::supercat_name(), Term::literal("scene")));
    att.where.elements.push_back(plain(Variable{"att"}, vocab::name(), Variable{"att_nm"}));
    sparql::ExplainResult r = run_plan(att, &a.executed_queries);

    std::set<std::string> found;
    for (const auto& row : r.result.rows) found.insert(row.front().text());
    if (found.empty()) {
        QueryPlan scn;
        scn.form = QueryForm::Select;
        scn.distinct = true;
        scn.projection = {Variable{"scn_nm"}};
        scn.where.elements.push_back(
            plain(img.handle.image_entity, vocab::img_scn(), Variable{"scn"}));
        scn.where.elements.push_back(plain(Variable{"scn"}, vocab::name(), Variable{"scn_nm"}));
        sparql::ExplainResult r2 = run_plan(scn, &a.executed_queries);
        for (const auto& row : r2.result.rows) found.insert(row.front().text());
    }
    // Order by annotation score, then name.
    for (const ScoredLabel& s : img.annotation.attributes)
        if (found.count(s.label)) { a.names.push_back(s.label); found.erase(s.label); }
    for (const ScoredLabel& s : img.annotation.scenes)
        if (found.count(s.label)) { a.names.push_back(s.label); found.erase(s.label); }
    a.names.insert(a.names.end(), found.begin(), found.end());
    if (a.names.empty()) a.text_value = "no scene information";
    finalize(a);
    return a;
}

Answer AnswerEngine::answer_obj_action(const ImageContext& img, const ParsedQuestion& q) const {
    Answer a;
    a.template_id = q.template_id;
    a.payload = PayloadType::NameList;

    auto actor = q.slots.find("actor");
    if (actor != q.slots.end() && !actor->second.head.empty()) {
        ObjectResolution r = resolve_object_slot(img, actor->second, classes_);
        if (r.empty()) return make_error(q, AnswerStatus::UnresolvedObject);
    }

    QueryPlan plan;
    plan.form = QueryForm::Select;
    plan.distinct = true;
    plan.projection = {Variable{"att_name"}};
    plan.where.elements.push_back(plain(img.handle.image_entity, vocab::img_att(), Variable{"att"}));
    plan.where.elements.push_back(
        plain(Variable{"att"}, vocab::supercat_name(), Term::literal("action")));
    plan.where.elements.push_back(plain(Variable{"att"}, vocab::name(), Variable{"att_name"}));
    sparql::ExplainResult r = run_plan(plan, &a.executed_queries);
    std::set<std::string> found;
    for (const auto& row : r.result.rows) found.insert(row.front().text());
    for (const ScoredLabel& s : img.annotation.attributes)
        if (found.count(s.label)) { a.names.push_back(s.label); found.erase(s.label); }
    a.names.insert(a.names.end(), found.begin(), found.end());
    if (a.names.empty()) a.text_value = "no action detected";
    finalize(a);
    return a;
}

// ------------------------------------------------------------ KB family

Answer AnswerEngine::answer_comm_prop(const ImageContext& img, const ParsedQuestion& q) const {
    Answer a;
    a.template_id = q.template_id;
    a.payload = PayloadType::NameList;

    ResolvedRef first = resolve_object_first(img, q.slots.at("obj1"));
    if (first.status != AnswerStatus::Ok) return make_error(q, first.status);
    if (!first.entity) return make_error(q, AnswerStatus::NotRecorded);
    ResolvedRef second = resolve_concept_first(&img, q.slots.at("concept2"));
    if (second.status != AnswerStatus::Ok) return make_error(q, second.status);
    if (!second.entity) return make_error(q, AnswerStatus::NotRecorded);

    QueryPlan plan;
    plan.form = QueryForm::Select;
    plan.distinct = true;
    plan.projection = {Variable{"cat"}};
    plan.where.elements.push_back(TriplePattern{*first.entity, transitive_path(), Variable{"cat"}});
    plan.where.elements.push_back(
        TriplePattern{*second.entity, transitive_path(), Variable{"cat"}});
    sparql::ExplainResult r = run_plan(plan, &a.executed_queries);

    a.trace.steps.push_back({ReasonStep::Kind::Visual,
                             quote(q.slots.at("obj1").phrase) + " resolves to " + first.display +
                                 "; " + quote(q.slots.at("concept2").phrase) + " resolves to " +
                                 second.display + ".",
                             {}});
    auto show = [&](const Term& t) { return entity_display_name(t); };
    for (const sparql::ExplainedRow& row : r.explained) {
        const Term& cat = row.row.front();
        a.names.push_back(entity_display_name(cat));
        for (const Triple& t : row.witnesses)
            a.trace.steps.push_back({ReasonStep::Kind::KbEdge, edge_sentence(t, graph_, show), {t}});
    }
    std::sort(a.names.begin(), a.names.end());
    a.names.erase(std::unique(a.names.begin(), a.names.end()), a.names.end());
    if (a.names.empty()) {
        a.text_value = "no common properties found";
        a.trace.steps.push_back(
            {ReasonStep::Kind::Aggregation, "No shared category within the step bound.", {}});
    }
    finalize(a);
    return a;
}

Answer AnswerEngine::answer_sport_equip(const ImageContext& img,
                                        const ParsedQuestion& q) const {
    Answer a;
    a.template_id = q.template_id;
    a.payload = PayloadType::NameList;

    std::optional<std::string> sport;
    for (const ScoredLabel& att : img.annotation.attributes)
        if (att.supercategory == "sport") { sport = att.label; break; }

    std::set<std::string> names;
    auto show = [&](const Term& t) { return entity_display_name(t); };

    if (sport) {
        QueryPlan plan;
        plan.form = QueryForm::Select;
        plan.distinct = true;
        plan.projection = {Variable{"equip"}};
        plan.where.elements.push_back(plain(Variable{"equip"}, vocab::subject(), Variable{"cat"}));
        plan.where.elements.push_back(plain(Variable{"cat"}, vocab::label(), Variable{"cat_nm"}));
        plan.where.elements.push_back(
            RegexFilter{Variable{"cat_nm"}, "^" + capitalize(*sport) + " equipment$"});
        sparql::ExplainResult r = run_plan(plan, &a.executed_queries);
        a.trace.steps.push_back({ReasonStep::Kind::Visual,
                                 "The image has sport attribute " + quote(*sport) + ".",
                                 {}});
        for (const sparql::ExplainedRow& row : r.explained) {
            names.insert(entity_display_name(row.row.front()));
            for (const Triple& t : row.witnesses)
                a.trace.steps.push_back(
                    {ReasonStep::Kind::KbEdge, edge_sentence(t, graph_, show), {t}});
        }
    }

    if (names.empty()) {
        // No sport attribute (or no such category): look for equipment
        // sharing a sports-equipment category with a detected object.
        QueryPlan plan;
        plan.form = QueryForm::Select;
        plan.distinct = true;
        plan.projection = {Variable{"equip"}};
        plan.where.elements.push_back(
            plain(img.handle.image_entity, vocab::contain(), Variable{"obj"}));
        plan.where.elements.push_back(plain(Variable{"obj"}, vocab::name(), Variable{"objcat"}));
        plan.where.elements.push_back(
            plain(Variable{"objcat"}, vocab::same_concept(), Variable{"objkb"}));
        plan.where.elements.push_back(plain(Variable{"objkb"}, vocab::subject(), Variable{"cat"}));
        plan.where.elements.push_back(plain(Variable{"equip"}, vocab::subject(), Variable{"cat"}));
        plan.where.elements.push_back(
            TriplePattern{Variable{"cat"},
                          {sparql::PathStep{vocab::broader(), false},
                           sparql::PathStep{vocab::broader(), true}},
                          vocab::kb_category("Sports_equipment")});
        sparql::ExplainResult r = run_plan(plan, &a.executed_queries);
        for (const sparql::ExplainedRow& row : r.explained) {
            names.insert(entity_display_name(row.row.front()));
            for (const Triple& t : row.witnesses)
                a.trace.steps.push_back(
                    {ReasonStep::Kind::KbEdge, edge_sentence(t, graph_, show), {t}});
        }
    }

    a.names.assign(names.begin(), names.end());
    if (a.names.empty()) {
        a.text_value = "no equipment found";
        a.trace.steps.clear();
    }
    finalize(a);
    return a;
}

Answer AnswerEngine::answer_loc_intro(const ImageContext& img, const ParsedQuestion& q) const {
    Answer a;
    a.template_id = q.template_id;
    a.payload = PayloadType::Text;

    ResolvedRef ref = resolve_object_first(img, q.slots.at("obj"));
    if (ref.status != AnswerStatus::Ok) return make_error(q, ref.status);
    if (!ref.entity) return make_error(q, AnswerStatus::NotRecorded);

    QueryPlan plan;
    plan.form = QueryForm::Select;
    plan.distinct = true;
    plan.projection = {Variable{"cat_nm"}};
    plan.where.elements.push_back(plain(*ref.entity, vocab::subject(), Variable{"cat"}));
    plan.where.elements.push_back(plain(Variable{"cat"}, vocab::label(), Variable{"cat_nm"}));
    plan.where.elements.push_back(RegexFilter{Variable{"cat_nm"}, "^[a-z|A-z]+ inventions$"});
    sparql::ExplainResult r = run_plan(plan, &a.executed_queries);
    if (r.result.rows.empty()) return make_error(q, AnswerStatus::NotRecorded);

    const std::string& label = r.explained.front().row.front().text();
    a.text_value = label.substr(0, label.rfind(" inventions"));
    auto show = [&](const Term& t) { return entity_display_name(t); };
    a.trace.steps.push_back({ReasonStep::Kind::Visual,
                             quote(q.slots.at("obj").phrase) + " resolves to " + ref.display + ".",
                             {}});
    for (const Triple& t : r.explained.front().witnesses)
        a.trace.steps.push_back({ReasonStep::Kind::KbEdge, edge_sentence(t, graph_, show), {t}});
    finalize(a);
    return a;
}

Answer AnswerEngine::answer_year_intro(const ImageContext& img, const ParsedQuestion& q) const {
    Answer a;
    a.template_id = q.template_id;
    a.payload = PayloadType::Text;

    ResolvedRef ref = resolve_object_first(img, q.slots.at("obj"));
    if (ref.status != AnswerStatus::Ok) return make_error(q, ref.status);
    if (!ref.entity) return make_error(q, AnswerStatus::NotRecorded);

    std::vector<Triple> witnesses;
    std::optional<long> year = introduction_year(*ref.entity, &a.executed_queries, &witnesses);
    if (!year) return make_error(q, AnswerStatus::NotRecorded);
    a.text_value = std::to_string(*year);
    auto show = [&](const Term& t) { return entity_display_name(t); };
    a.trace.steps.push_back({ReasonStep::Kind::Visual,
                             quote(q.slots.at("obj").phrase) + " resolves to " + ref.display + ".",
                             {}});
    for (const Triple& t : witnesses)
        a.trace.steps.push_back({ReasonStep::Kind::KbEdge, edge_sentence(t, graph_, show), {t}});
    finalize(a);
    return a;
}

Answer AnswerEngine::answer_first_intro(const ImageContext& img,
                                        const ParsedQuestion& q) const {
    Answer a;
    a.template_id = q.template_id;
    a.payload = PayloadType::Text;

    ResolvedRef first = resolve_object_first(img, q.slots.at("obj1"));
    if (first.status != AnswerStatus::Ok) return make_error(q, first.status);
    ResolvedRef second = resolve_concept_first(&img, q.slots.at("concept2"));
    if (second.status != AnswerStatus::Ok) return make_error(q, second.status);
    if (!first.entity || !second.entity) return make_error(q, AnswerStatus::NotRecorded);

    std::vector<Triple> w1, w2;
    std::optional<long> y1 = introduction_year(*first.entity, &a.executed_queries, &w1);
    std::optional<long> y2 = introduction_year(*second.entity, &a.executed_queries, &w2);
    if (!y1 || !y2) return make_error(q, AnswerStatus::NotRecorded);

    if (*y1 == *y2) {
        a.text_value = "same year (" + std::to_string(*y1) + ")";
    } else if (*y1 < *y2) {
        a.text_value = "the " + first.display + " (" + std::to_string(*y1) + ")";
    } else {
        a.text_value = "the " + second.display + " (" + std::to_string(*y2) + ")";
    }
    auto show = [&](const Term& t) { return entity_display_name(t); };
    for (const Triple& t : w1)
        a.trace.steps.push_back({ReasonStep::Kind::KbEdge, edge_sentence(t, graph_, show), {t}});
    for (const Triple& t : w2)
        a.trace.steps.push_back({ReasonStep::Kind::KbEdge, edge_sentence(t, graph_, show), {t}});
    a.trace.steps.push_back({ReasonStep::Kind::Aggregation,
                             first.display + " was introduced in " + std::to_string(*y1) +
                                 "; " + second.display + " in " + std::to_string(*y2) + ".",
                             {}});
    finalize(a);
    return a;
}

Answer AnswerEngine::answer_list_same_year(const ImageContext& img,
                                           const ParsedQuestion& q) const {
    Answer a;
    a.template_id = q.template_id;
    a.payload = PayloadType::NameList;

    ResolvedRef ref = resolve_object_first(img, q.slots.at("obj"));
    if (ref.status != AnswerStatus::Ok) return make_error(q, ref.status);
    if (!ref.entity) return make_error(q, AnswerStatus::NotRecorded);

    QueryPlan plan;
    plan.form = QueryForm::Select;
    plan.distinct = true;
    plan.projection = {Variable{"thing_nm"}};
    plan.where.elements.push_back(plain(Variable{"thing"}, vocab::subject(), Variable{"cat"}));
    plan.where.elements.push_back(plain(Variable{"thing"}, vocab::label(), Variable{"thing_nm"}));
    plan.where.elements.push_back(plain(*ref.entity, vocab::subject(), Variable{"cat"}));
    plan.where.elements.push_back(plain(Variable{"cat"}, vocab::label(), Variable{"cat_nm"}));
    plan.where.elements.push_back(RegexFilter{Variable{"cat_nm"}, "^[0-9]+ introductions$"});
    sparql::ExplainResult r = run_plan(plan, &a.executed_queries);
    if (r.result.rows.empty()) return make_error(q, AnswerStatus::NotRecorded);

    std::set<std::string> own;
    for (const std::string& l : entity_labels(*ref.entity)) own.insert(fold(l));
    std::set<std::string> names;
    auto show = [&](const Term& t) { return entity_display_name(t); };
    for (const sparql::ExplainedRow& row : r.explained) {
        std::string name = row.row.front().text();
        if (own.count(fold(name))) continue; // the queried entity itself
        names.insert(name);
        for (const Triple& t : row.witnesses)
            a.trace.steps.push_back({ReasonStep::Kind::KbEdge, edge_sentence(t, graph_, show), {t}});
    }
    a.names.assign(names.begin(), names.end());
    if (a.names.empty()) {
        a.text_value = "nothing else introduced that year";
        a.trace.steps.clear();
    }
    finalize(a);
    return a;
}

Answer AnswerEngine::answer_food_ingredient(const ImageContext& img,
                                            const ParsedQuestion& q) const {
    Answer a;
    a.template_id = q.template_id;
    a.payload = PayloadType::NameList;

    ResolvedRef ref = resolve_object_first(img, q.slots.at("food"));
    if (ref.status != AnswerStatus::Ok) return make_error(q, ref.status);
    if (!ref.entity) return make_error(q, AnswerStatus::NotRecorded);

    QueryPlan plan;
    plan.form = QueryForm::Select;
    plan.distinct = true;
    plan.projection = {Variable{"Ingrd_nm"}};
    plan.where.elements.push_back(plain(*ref.entity, vocab::ingredient(), Variable{"Ingrd"}));
    plan.where.elements.push_back(plain(Variable{"Ingrd"}, vocab::label(), Variable{"Ingrd_nm"}));
    sparql::ExplainResult r = run_plan(plan, &a.executed_queries);
    if (r.result.rows.empty()) return make_error(q, AnswerStatus::NotRecorded);

    auto show = [&](const Term& t) { return entity_display_name(t); };
    a.trace.steps.push_back({ReasonStep::Kind::Visual,
                             quote(q.slots.at("food").phrase) + " resolves to " + ref.display +
                                 ".",
                             {}});
    std::set<std::string> names;
    for (const sparql::ExplainedRow& row : r.explained) {
        names.insert(row.row.front().text());
        for (const Triple& t : row.witnesses)
            a.trace.steps.push_back({ReasonStep::Kind::KbEdge, edge_sentence(t, graph_, show), {t}});
    }
    a.names.assign(names.begin(), names.end());
    finalize(a);
    return a;
}

Answer AnswerEngine::answer_animal_class(const ImageContext& img,
                                         const ParsedQuestion& q) const {
    Answer a;
    a.template_id = q.template_id;
    a.payload = PayloadType::Text;

    ResolvedRef ref = resolve_object_first(img, q.slots.at("animal"));
    if (ref.status != AnswerStatus::Ok) return make_error(q, ref.status);
    if (!ref.entity) return make_error(q, AnswerStatus::NotRecorded);
    std::optional<Term> rank = resolve_taxonomy_slot(q.slots.at("taxonomy"));
    if (!rank) return make_error(q, AnswerStatus::NotRecorded);

    QueryPlan plan;
    plan.form = QueryForm::Select;
    plan.distinct = true;
    plan.projection = {Variable{"class_nm"}};
    plan.where.elements.push_back(plain(*ref.entity, *rank, Variable{"class"}));
    plan.where.elements.push_back(plain(Variable{"class"}, vocab::label(), Variable{"class_nm"}));
    sparql::ExplainResult r = run_plan(plan, &a.executed_queries);
    if (r.result.rows.empty()) return make_error(q, AnswerStatus::NotRecorded);

    a.text_value = r.result.rows.front().front().text();
    auto show = [&](const Term& t) { return entity_display_name(t); };
    a.trace.steps.push_back({ReasonStep::Kind::Visual,
                             quote(q.slots.at("animal").phrase) + " resolves to " + ref.display +
                                 ".",
                             {}});
    for (const Triple& t : r.explained.front().witnesses)
        a.trace.steps.push_back({ReasonStep::Kind::KbEdge, edge_sentence(t, graph_, show), {t}});
    finalize(a);
    return a;
}

Answer AnswerEngine::answer_animal_relative(const ImageContext& img,
                                            const ParsedQuestion& q) const {
    Answer a;
    a.template_id = q.template_id;
    a.payload = PayloadType::NameList;

    ResolvedRef ref = resolve_object_first(img, q.slots.at("animal"));
    if (ref.status != AnswerStatus::Ok) return make_error(q, ref.status);
    if (!ref.entity) return make_error(q, AnswerStatus::NotRecorded);

    // Use the most specific populated rank; "close relatives" via kingdom
    // would be meaninglessly broad.
    for (const auto& [word, pred] : vocab::taxonomy_ranks_specific_first()) {
        if (graph_.objects(*ref.entity, pred).empty()) continue;
        QueryPlan plan;
        plan.form = QueryForm::Select;
        plan.distinct = true;
        plan.projection = {Variable{"relative_nm"}};
        plan.where.elements.push_back(plain(*ref.entity, pred, Variable{"class"}));
        plan.where.elements.push_back(plain(Variable{"relative"}, pred, Variable{"class"}));
        plan.where.elements.push_back(
            plain(Variable{"relative"}, vocab::label(), Variable{"relative_nm"}));
        sparql::ExplainResult r = run_plan(plan, &a.executed_queries);

        std::set<std::string> own;
        for (const std::string& l : entity_labels(*ref.entity)) own.insert(fold(l));
        std::set<std::string> names;
        auto show = [&](const Term& t) { return entity_display_name(t); };
        a.trace.steps.push_back({ReasonStep::Kind::Visual,
                                 quote(q.slots.at("animal").phrase) + " resolves to " +
                                     ref.display + "; most specific recorded rank is " + word +
                                     ".",
                                 {}});
        for (const sparql::ExplainedRow& row : r.explained) {
            std::string name = row.row.front().text();
            if (own.count(fold(name))) continue;
            names.insert(name);
            for (const Triple& t : row.witnesses)
                a.trace.steps.push_back(
                    {ReasonStep::Kind::KbEdge, edge_sentence(t, graph_, show), {t}});
        }
        a.names.assign(names.begin(), names.end());
        if (a.names.empty()) a.text_value = "no recorded relatives";
        finalize(a);
        return a;
    }
    return make_error(q, AnswerStatus::NotRecorded);
}

Answer AnswerEngine::answer_animal_same(const ImageContext& img,
                                        const ParsedQuestion& q) const {
    Answer a;
    a.template_id = q.template_id;
    a.payload = PayloadType::Boolean;

    ResolvedRef first = resolve_object_first(img, q.slots.at("animal1"));
    if (first.status != AnswerStatus::Ok) return make_error(q, first.status);
    ResolvedRef second = resolve_object_first(img, q.slots.at("animal2"));
    if (second.status != AnswerStatus::Ok) return make_error(q, second.status);
    if (!first.entity || !second.entity) return make_error(q, AnswerStatus::NotRecorded);
    std::optional<Term> rank = resolve_taxonomy_slot(q.slots.at("taxonomy"));
    if (!rank) return make_error(q, AnswerStatus::NotRecorded);

    if (graph_.objects(*first.entity, *rank).empty() ||
        graph_.objects(*second.entity, *rank).empty())
        return make_error(q, AnswerStatus::NotRecorded);

    QueryPlan plan;
    plan.form = QueryForm::Ask;
    plan.where.elements.push_back(plain(*first.entity, *rank, Variable{"class"}));
    plan.where.elements.push_back(plain(*second.entity, *rank, Variable{"class"}));
    sparql::ExplainResult r = run_plan(plan, &a.executed_queries);
    a.bool_value = r.result.truth;

    auto show = [&](const Term& t) { return entity_display_name(t); };
    if (r.result.truth) {
        for (const Triple& t : r.explained.front().witnesses)
            a.trace.steps.push_back({ReasonStep::Kind::KbEdge, edge_sentence(t, graph_, show), {t}});
    } else {
        for (const Term& v : graph_.objects(*first.entity, *rank))
            a.trace.steps.push_back({ReasonStep::Kind::KbEdge,
                                     edge_sentence(Triple(*first.entity, *rank, v), graph_, show),
                                     {Triple(*first.entity, *rank, v)}});
        for (const Term& v : graph_.objects(*second.entity, *rank))
            a.trace.steps.push_back({ReasonStep::Kind::KbEdge,
                                     edge_sentence(Triple(*second.entity, *rank, v), graph_, show),
                                     {Triple(*second.entity, *rank, v)}});
    }
    finalize(a);
    return a;
}

// ------------------------------------------------------------ two-image

Answer AnswerEngine::answer_two_image_common(const ImageContext& img1, const ImageContext& img2,
                                             const ParsedQuestion& q) const {
    Answer a;
    a.template_id = q.template_id;
    a.payload = PayloadType::NameList;

    auto closure = [&](const ImageContext& img,
                       std::map<Term, std::pair<std::string, std::vector<Triple>>>& reached) {
        for (const VisualConcept& vc : visual_concepts(img)) {
            if (!vc.kb) continue;
            QueryPlan plan;
            plan.form = QueryForm::Select;
            plan.distinct = true;
            plan.projection = {Variable{"cat"}};
            plan.where.elements.push_back(
                TriplePattern{*vc.kb, transitive_path(), Variable{"cat"}});
            sparql::ExplainResult r = run_plan(plan, &a.executed_queries);
            for (const sparql::ExplainedRow& row : r.explained) {
                const Term& cat = row.row.front();
                if (!reached.count(cat)) reached[cat] = {vc.name, row.witnesses};
            }
        }
    };
    std::map<Term, std::pair<std::string, std::vector<Triple>>> c1, c2;
    closure(img1, c1);
    closure(img2, c2);

    auto show = [&](const Term& t) { return entity_display_name(t); };
    std::set<std::string> names;
    for (const auto& [cat, from1] : c1) {
        auto it = c2.find(cat);
        if (it == c2.end()) continue;
        std::string label = entity_display_name(cat);
        names.insert(label);
        a.trace.steps.push_back({ReasonStep::Kind::Visual,
                                 "Both images reach category " + quote(label) + ": via " +
                                     quote(from1.first) + " and " + quote(it->second.first) + ".",
                                 {}});
        for (const Triple& t : from1.second)
            a.trace.steps.push_back({ReasonStep::Kind::KbEdge, edge_sentence(t, graph_, show), {t}});
        for (const Triple& t : it->second.second)
            a.trace.steps.push_back({ReasonStep::Kind::KbEdge, edge_sentence(t, graph_, show), {t}});
    }
    a.names.assign(names.begin(), names.end());
    if (a.names.empty()) {
        a.text_value = "no common properties found";
        a.trace.steps.clear();
    }
    finalize(a);
    return a;
}

Answer AnswerEngine::answer_most_related_image(const std::vector<const ImageContext*>& images,
                                               const ParsedQuestion& q) const {
    Answer a;
    a.template_id = q.template_id;
    a.payload = PayloadType::ImageRef;
    if (images.size() < 2) return make_error(q, AnswerStatus::MissingImage);

    ConceptResolution target = resolve_concept_slot(graph_, q.slots.at("concept"));
    if (!target.resolved()) return make_error(q, AnswerStatus::UnresolvedConcept);

    const ImageContext* best_img = nullptr;
    double best_mean = -1;
    for (const ImageContext* img : images) {
        std::vector<std::pair<long, std::string>> totals; // (score, concept name)
        for (const VisualConcept& vc : visual_concepts(*img)) {
            if (!vc.kb) continue;
            CorrelationScore s = correlation_score(*vc.kb, *target.entity, &a.executed_queries);
            totals.emplace_back(s.total, vc.name);
        }
        std::stable_sort(totals.begin(), totals.end(),
                         [](const auto& x, const auto& y) { return x.first > y.first; });
        size_t take = std::min<size_t>(3, totals.size());
        double mean = 0;
        for (size_t i = 0; i < take; ++i) mean += static_cast<double>(totals[i].first);
        if (take > 0) mean /= static_cast<double>(take);

        std::ostringstream line;
        line << "Image " << img->annotation.image_id << ": top concepts";
        for (size_t i = 0; i < take; ++i)
            line << " " << quote(totals[i].second) << " (" << totals[i].first << ")";
        line << "; mean of top " << take << " = " << mean << ".";
        a.trace.steps.push_back({ReasonStep::Kind::Score, line.str(), {}});

        if (mean > best_mean) { // strict: ties keep the earlier image
            best_mean = mean;
            best_img = img;
        }
    }
    a.image_ref = best_img->annotation.image_id;
    a.trace.steps.push_back({ReasonStep::Kind::Aggregation,
                             "Image " + a.image_ref + " has the highest mean score.",
                             {}});
    finalize(a);
    return a;
}

} // namespace ahab
