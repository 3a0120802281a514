#pragma once

#include "ahab/annotation.hpp"
#include "ahab/graph.hpp"
#include "ahab/vocab.hpp"

#include <map>
#include <string>
#include <vector>

namespace ahab {

// Handle onto the triples materialized for one image. Object nodes are
// per-detection; category nodes (one per object class / attribute / scene
// label) are shared across images and carry the name literal and the
// same-concept link into the KB.
struct ImageGraphHandle {
    std::string image_id;
    Term image_entity = Term::iri("http://ahab.local/data/img/unset");
    std::vector<Term> object_entities;        // annotation order
    std::map<int, Term> object_by_id;
    std::vector<Term> category_nodes;         // obj/att/scn category nodes, in emit order
};

// Deterministic entity IRIs.
Term image_entity_iri(const std::string& image_id);
Term object_entity_iri(const std::string& image_id, int object_id);
Term object_category_iri(const std::string& class_label);
Term attribute_category_iri(const std::string& label);
Term scene_category_iri(const std::string& label);

// Materializes the image-side triples into `graph`.
ImageGraphHandle build_image_graph(Graph& graph, const ImageAnnotation& ann);

struct LinkReport {
    size_t link_count = 0;
    std::vector<std::string> unlinked; // category names with no KB match
};

// Links every category node of `handle` to its KB entity (label lookup plus
// redirect resolution) via same-concept. Categories without a match are
// reported, not failed.
LinkReport link_concepts(Graph& graph, const ImageGraphHandle& handle);

// The KB entity an image-side node maps to: for object nodes, follows
// name -> category -> same-concept; for category nodes, same-concept
// directly. Empty when unlinked.
std::optional<Term> kb_link_of(const Graph& graph, const Term& node);

// Annotation + graph handle for one loaded image.
struct ImageContext {
    ImageAnnotation annotation;
    ImageGraphHandle handle;
};

} // namespace ahab
