#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ahab/kb.hpp"
#include "ahab/linker.hpp"

using namespace ahab;

namespace {

struct Env {
    ConceptRegistry classes = ConceptRegistry::load(AHAB_DATA_DIR "/classes.tsv");
    Graph graph;
    ImageContext savanna;

    Env() {
        kb::load_snapshot(AHAB_DATA_DIR "/mini_kb.nt", graph);
        ImageAnnotation ann;
        ann.image_id = "img_savanna_1";
        ann.width = 640;
        ann.height = 480;
        DetectedObject zebra;
        zebra.object_id = 1;
        zebra.class_label = "zebra";
        zebra.superclass = "animal";
        zebra.bbox = {40, 200, 160, 120};
        zebra.score = 0.94;
        DetectedObject giraffe;
        giraffe.object_id = 2;
        giraffe.class_label = "giraffe";
        giraffe.superclass = "animal";
        giraffe.bbox = {400, 80, 200, 320};
        giraffe.score = 0.91;
        ann.objects = {zebra, giraffe};
        savanna.handle = build_image_graph(graph, ann);
        savanna.annotation = ann;
        link_concepts(graph, savanna.handle);
    }
};

Env& env() {
    static Env e;
    return e;
}

SlotPhrase slot_of(const std::string& phrase, SlotKind kind = SlotKind::Obj) {
    std::vector<std::string> lemmas, raws;
    std::istringstream in(phrase);
    std::string w;
    while (in >> w) {
        raws.push_back(w);
        lemmas.push_back(lemmatize_word(w));
    }
    return parse_slot_qualifiers("slot", kind, lemmas, raws, env().classes);
}

} // namespace

TEST_CASE("'right animal' picks the giraffe object") {
    ObjectResolution r = resolve_object_slot(env().savanna, slot_of("right animal"),
                                             env().classes);
    REQUIRE(r.objects.size() == 1);
    CHECK(r.objects[0] == object_entity_iri("img_savanna_1", 2));
    CHECK_FALSE(r.ambiguous);

    // Every resolved object is contained in the image.
    for (const Term& o : r.objects)
        CHECK(env().graph.contains(
            Triple(env().savanna.handle.image_entity, vocab::contain(), o)));
}

TEST_CASE("'left animal' picks the zebra; plain 'animal' ranks by area") {
    ObjectResolution left =
        resolve_object_slot(env().savanna, slot_of("left animal"), env().classes);
    REQUIRE(left.objects.size() == 1);
    CHECK(left.objects[0] == object_entity_iri("img_savanna_1", 1));

    ObjectResolution both = resolve_object_slot(env().savanna, slot_of("animal"), env().classes);
    REQUIRE(both.objects.size() == 2);
    CHECK(both.ambiguous);
    // Area ordering: the giraffe (64000) ahead of the zebra (19200).
    CHECK(both.objects[0] == object_entity_iri("img_savanna_1", 2));
    CHECK(both.object_ids == std::vector<int>{2, 1});
}

TEST_CASE("size qualifier keeps the extreme-area candidate") {
    ObjectResolution large =
        resolve_object_slot(env().savanna, slot_of("large animal"), env().classes);
    REQUIRE(large.objects.size() == 1);
    CHECK(large.object_ids[0] == 2);
    ObjectResolution small =
        resolve_object_slot(env().savanna, slot_of("small animal"), env().classes);
    REQUIRE(small.objects.size() == 1);
    CHECK(small.object_ids[0] == 1);
}

TEST_CASE("head noun misses yield an empty resolution") {
    ObjectResolution r = resolve_object_slot(env().savanna, slot_of("dog"), env().classes);
    CHECK(r.empty());
}

TEST_CASE("'object' matches everything; specific class narrows") {
    ObjectResolution all = resolve_object_slot(env().savanna, slot_of("object"), env().classes);
    CHECK(all.objects.size() == 2);
    ObjectResolution zebra = resolve_object_slot(env().savanna, slot_of("zebra"), env().classes);
    REQUIRE(zebra.objects.size() == 1);
    CHECK(zebra.object_ids[0] == 1);
}

TEST_CASE("location thirds partition every bbox") {
    for (double cx : {0.0, 100.0, 213.0, 214.0, 320.0, 426.0, 427.0, 639.0}) {
        BBox box{cx - 5, 100, 10, 10};
        int hits = 0;
        Third h = horizontal_third(box, 640);
        hits += h == Third::Low;
        hits += h == Third::Mid;
        hits += h == Third::High;
        CHECK(hits == 1);
    }
    // Center requires the middle third on both axes.
    BBox center{315, 235, 10, 10};
    CHECK(horizontal_third(center, 640) == Third::Mid);
    CHECK(vertical_third(center, 480) == Third::Mid);
}

TEST_CASE("concept resolution: direct, redirected, unknown") {
    ConceptResolution zebra = resolve_concept_slot(env().graph, slot_of("zebra", SlotKind::Concept));
    REQUIRE(zebra.resolved());
    CHECK(*zebra.entity == vocab::kb_entity("Zebra"));

    ConceptResolution relig =
        resolve_concept_phrase(env().graph, "Relig.", "relig");
    REQUIRE(relig.resolved());
    CHECK(*relig.entity == vocab::kb_entity("Religion"));
    CHECK_FALSE(relig.redirect_chain.empty());

    ConceptResolution frisbee =
        resolve_concept_slot(env().graph, slot_of("frisbee", SlotKind::Concept));
    REQUIRE(frisbee.resolved());
    CHECK(*frisbee.entity == vocab::kb_entity("Flying_disc"));

    ConceptResolution nothing =
        resolve_concept_slot(env().graph, slot_of("xqzzt", SlotKind::Concept));
    CHECK_FALSE(nothing.resolved());

    // Resolution output never has an outgoing redirect edge.
    for (const ConceptResolution* r : {&zebra, &relig, &frisbee})
        CHECK(env().graph.objects(*r->entity, vocab::wiki_page_redirects()).empty());
}

TEST_CASE("plain entities outrank category entities with the same label") {
    ConceptResolution religion =
        resolve_concept_slot(env().graph, slot_of("religion", SlotKind::Concept));
    REQUIRE(religion.resolved());
    CHECK(*religion.entity == vocab::kb_entity("Religion"));
    CHECK(religion.ambiguity_note.has_value());
}

TEST_CASE("taxonomy ranks map to six distinct predicates") {
    std::set<Term> preds;
    for (const std::string& rank :
         {"kingdom", "phylum", "class", "order", "family", "genus"}) {
        SlotPhrase slot = slot_of(rank, SlotKind::Taxonomy);
        std::optional<Term> pred = resolve_taxonomy_slot(slot);
        REQUIRE(pred.has_value());
        preds.insert(*pred);
    }
    CHECK(preds.size() == 6);
    CHECK_FALSE(resolve_taxonomy_slot(slot_of("species", SlotKind::Taxonomy)).has_value());
}

TEST_CASE("resolution is deterministic") {
    for (int i = 0; i < 3; ++i) {
        ObjectResolution a =
            resolve_object_slot(env().savanna, slot_of("animal"), env().classes);
        ObjectResolution b =
            resolve_object_slot(env().savanna, slot_of("animal"), env().classes);
        CHECK(a.object_ids == b.object_ids);
        ConceptResolution c1 = resolve_concept_slot(env().graph, slot_of("zebra", SlotKind::Concept));
        ConceptResolution c2 = resolve_concept_slot(env().graph, slot_of("zebra", SlotKind::Concept));
        CHECK(*c1.entity == *c2.entity);
    }
}
