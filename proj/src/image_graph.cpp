#include "ahab/image_graph.hpp"

#include "ahab/kb.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace ahab {

namespace {

std::string slug(const std::string& label) {
    std::string out;
    for (unsigned char c : label) {
        if (std::isspace(c)) out += '_';
        else out += static_cast<char>(std::tolower(c));
    }
    return out;
}

// Non-category entities outrank category entities; ties break on IRI text.
std::optional<Term> pick_kb_entity(const Graph& graph, const std::string& name) {
    std::vector<Term> found = kb::lookup_by_label(graph, name, /*case_insensitive=*/true);
    if (found.empty()) found = kb::lookup_by_label_normalized(graph, name);
    if (found.empty()) return std::nullopt;
    kb::RedirectResult resolved = kb::resolve_redirects(graph, found);
    std::vector<Term> candidates = resolved.entities;
    std::sort(candidates.begin(), candidates.end(), [](const Term& a, const Term& b) {
        bool ca = vocab::is_category(a), cb = vocab::is_category(b);
        if (ca != cb) return !ca;
        return a.text() < b.text();
    });
    return candidates.front();
}

} // namespace

Term image_entity_iri(const std::string& image_id) {
    return Term::iri(vocab::DATA_NS + "img/" + slug(image_id));
}

Term object_entity_iri(const std::string& image_id, int object_id) {
    return Term::iri(vocab::DATA_NS + "img/" + slug(image_id) + "/obj" +
                     std::to_string(object_id));
}

Term object_category_iri(const std::string& class_label) {
    return Term::iri(vocab::DATA_NS + "cat/obj/" + slug(class_label));
}

Term attribute_category_iri(const std::string& label) {
    return Term::iri(vocab::DATA_NS + "cat/att/" + slug(label));
}

Term scene_category_iri(const std::string& label) {
    return Term::iri(vocab::DATA_NS + "cat/scn/" + slug(label));
}

ImageGraphHandle build_image_graph(Graph& graph, const ImageAnnotation& ann) {
    ImageGraphHandle handle;
    handle.image_id = ann.image_id;
    handle.image_entity = image_entity_iri(ann.image_id);

    auto add_category = [&](const Term& node) {
        if (std::find(handle.category_nodes.begin(), handle.category_nodes.end(), node) ==
            handle.category_nodes.end())
            handle.category_nodes.push_back(node);
    };

    for (const DetectedObject& obj : ann.objects) {
        Term entity = object_entity_iri(ann.image_id, obj.object_id);
        Term category = object_category_iri(obj.class_label);
        graph.insert(handle.image_entity, vocab::contain(), entity);
        graph.insert(entity, vocab::name(), category);
        long area = std::lround(obj.bbox.area());
        graph.insert(entity, vocab::size(), Term::literal(std::to_string(area)));
        if (obj.color) graph.insert(entity, vocab::color(), Term::literal(*obj.color));
        graph.insert(category, vocab::name(), Term::literal(obj.class_label));
        if (!obj.superclass.empty())
            graph.insert(category, vocab::supercat_name(), Term::literal(obj.superclass));
        handle.object_entities.push_back(entity);
        handle.object_by_id.emplace(obj.object_id, entity);
        add_category(category);
    }

    for (const ScoredLabel& att : ann.attributes) {
        Term category = attribute_category_iri(att.label);
        graph.insert(handle.image_entity, vocab::img_att(), category);
        graph.insert(category, vocab::name(), Term::literal(att.label));
        graph.insert(category, vocab::supercat_name(), Term::literal(att.supercategory));
        add_category(category);
    }

    for (const ScoredLabel& scn : ann.scenes) {
        Term category = scene_category_iri(scn.label);
        graph.insert(handle.image_entity, vocab::img_scn(), category);
        graph.insert(category, vocab::name(), Term::literal(scn.label));
        graph.insert(category, vocab::supercat_name(), Term::literal("scene"));
        add_category(category);
    }

    return handle;
}

LinkReport link_concepts(Graph& graph, const ImageGraphHandle& handle) {
    LinkReport report;
    for (const Term& node : handle.category_nodes) {
        if (!graph.objects(node, vocab::same_concept()).empty()) {
            ++report.link_count; // already linked when building another image
            continue;
        }
        std::vector<Term> names = graph.objects(node, vocab::name());
        std::string name;
        for (const Term& n : names)
            if (n.is_literal()) name = n.text();
        if (name.empty()) continue;
        std::optional<Term> entity = pick_kb_entity(graph, name);
        if (!entity) {
            report.unlinked.push_back(name);
            continue;
        }
        graph.insert(node, vocab::same_concept(), *entity);
        ++report.link_count;
    }
    return report;
}

std::optional<Term> kb_link_of(const Graph& graph, const Term& node) {
    // Object node: hop through its category first.
    std::vector<Term> names = graph.objects(node, vocab::name());
    for (const Term& n : names) {
        if (!n.is_iri()) continue;
        std::vector<Term> links = graph.objects(n, vocab::same_concept());
        if (!links.empty()) return links.front();
    }
    std::vector<Term> links = graph.objects(node, vocab::same_concept());
    if (!links.empty()) return links.front();
    return std::nullopt;
}

} // namespace ahab
