#include "ahab/linker.hpp"

#include "ahab/kb.hpp"

#include <algorithm>

namespace ahab {

Third horizontal_third(const BBox& box, int image_width) {
    double cx = box.center_x();
    if (cx < image_width / 3.0) return Third::Low;
    if (cx >= 2.0 * image_width / 3.0) return Third::High;
    return Third::Mid;
}

Third vertical_third(const BBox& box, int image_height) {
    double cy = box.center_y();
    if (cy < image_height / 3.0) return Third::Low;
    if (cy >= 2.0 * image_height / 3.0) return Third::High;
    return Third::Mid;
}

namespace {

bool head_matches(const DetectedObject& obj, const SlotPhrase& slot,
                  const ConceptRegistry& classes) {
    if (slot.head.empty() || slot.head == "object") return true;
    std::string class_lemma = lemmatize_phrase(obj.class_label);
    if (!slot.head_is_superclass) return class_lemma == slot.head;
    std::string supercat = classes.supercategory_of(obj.class_label).value_or(obj.superclass);
    if (supercat.empty()) supercat = obj.superclass;
    return lemmatize_phrase(supercat) == slot.head;
}

bool location_matches(const DetectedObject& obj, const std::string& where,
                      const ImageAnnotation& ann) {
    Third h = horizontal_third(obj.bbox, ann.width);
    Third v = vertical_third(obj.bbox, ann.height);
    if (where == "left") return h == Third::Low;
    if (where == "right") return h == Third::High;
    if (where == "top") return v == Third::Low;
    if (where == "bottom") return v == Third::High;
    if (where == "center") return h == Third::Mid && v == Third::Mid;
    return true;
}

} // namespace

ObjectResolution resolve_object_slot(const ImageContext& image, const SlotPhrase& slot,
                                     const ConceptRegistry& classes) {
    ObjectResolution res;
    std::vector<const DetectedObject*> candidates;
    for (const DetectedObject& obj : image.annotation.objects)
        if (head_matches(obj, slot, classes)) candidates.push_back(&obj);
    res.notes.push_back("head '" + slot.head + "' matched " +
                        std::to_string(candidates.size()) + " object(s)");

    if (slot.location) {
        std::vector<const DetectedObject*> kept;
        for (const DetectedObject* obj : candidates)
            if (location_matches(*obj, *slot.location, image.annotation)) kept.push_back(obj);
        res.notes.push_back("location '" + *slot.location + "' kept " +
                            std::to_string(kept.size()));
        candidates = std::move(kept);
    }

    if (slot.size && !candidates.empty()) {
        auto area = [](const DetectedObject* o) { return o->bbox.area(); };
        double pivot = area(candidates.front());
        for (const DetectedObject* o : candidates) {
            double a = area(o);
            if (*slot.size == "large" ? a > pivot : a < pivot) pivot = a;
        }
        std::vector<const DetectedObject*> kept;
        for (const DetectedObject* o : candidates)
            if (area(o) == pivot) kept.push_back(o);
        res.notes.push_back("size '" + *slot.size + "' kept " + std::to_string(kept.size()));
        candidates = std::move(kept);
    }

    std::sort(candidates.begin(), candidates.end(),
              [](const DetectedObject* a, const DetectedObject* b) {
                  if (a->bbox.area() != b->bbox.area()) return a->bbox.area() > b->bbox.area();
                  return a->object_id < b->object_id;
              });
    for (const DetectedObject* obj : candidates) {
        auto it = image.handle.object_by_id.find(obj->object_id);
        if (it == image.handle.object_by_id.end()) continue;
        res.objects.push_back(it->second);
        res.object_ids.push_back(obj->object_id);
    }
    res.ambiguous = res.objects.size() > 1;
    return res;
}

ConceptResolution resolve_concept_phrase(const Graph& kb, const std::string& raw_phrase,
                                         const std::string& lemma_phrase) {
    ConceptResolution res;
    res.phrase = lemma_phrase.empty() ? raw_phrase : lemma_phrase;

    std::vector<Term> found;
    auto collect = [&](std::vector<Term> v) {
        for (Term& t : v)
            if (std::find(found.begin(), found.end(), t) == found.end())
                found.push_back(std::move(t));
    };
    // Tiers: exact, case-insensitive, fully normalized; surface form first.
    for (int tier = 0; tier < 3 && found.empty(); ++tier) {
        for (const std::string& phrase : {raw_phrase, lemma_phrase}) {
            if (phrase.empty()) continue;
            switch (tier) {
            case 0: collect(kb::lookup_by_label(kb, phrase, false)); break;
            case 1: collect(kb::lookup_by_label(kb, phrase, true)); break;
            case 2: collect(kb::lookup_by_label_normalized(kb, phrase)); break;
            }
        }
    }
    if (found.empty()) return res;

    std::vector<Term> resolved;
    for (const Term& f : found) {
        Term target = kb::resolve_redirect(kb, f);
        if (!(target == f)) res.redirect_chain.push_back(f);
        if (std::find(resolved.begin(), resolved.end(), target) == resolved.end())
            resolved.push_back(target);
    }
    std::sort(resolved.begin(), resolved.end(), [](const Term& a, const Term& b) {
        bool ca = vocab::is_category(a), cb = vocab::is_category(b);
        if (ca != cb) return !ca; // non-category entities first
        return a.text() < b.text();
    });
    res.entity = resolved.front();
    if (resolved.size() > 1) {
        std::string note = "candidates:";
        for (const Term& t : resolved) note += " " + t.text();
        res.ambiguity_note = note;
    }
    return res;
}

ConceptResolution resolve_concept_slot(const Graph& kb, const SlotPhrase& slot) {
    return resolve_concept_phrase(kb, slot.raw_phrase, slot.phrase);
}

std::optional<Term> resolve_taxonomy_slot(const SlotPhrase& slot) {
    return vocab::taxonomy_rank_predicate(slot.phrase.empty() ? slot.head : slot.phrase);
}

} // namespace ahab
