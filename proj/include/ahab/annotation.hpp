#pragma once

#include "ahab/registry.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ahab {

struct BBox {
    double x = 0, y = 0, w = 0, h = 0;
    double area() const { return w * h; }
    double center_x() const { return x + w / 2; }
    double center_y() const { return y + h / 2; }
};

struct DetectedObject {
    int object_id = 0;
    std::string class_label;
    std::string superclass;
    BBox bbox;
    double score = 0;
    std::optional<std::string> color;
};

struct ScoredLabel {
    std::string label;
    std::string supercategory; // attributes only; one of action/sport/scene/object
    double score = 0;
};

// Detector-output stand-in for one image: objects with boxes, the top
// image attributes and top scene classes.
struct ImageAnnotation {
    std::string image_id;
    int width = 0, height = 0;
    std::vector<DetectedObject> objects;
    std::vector<ScoredLabel> attributes; // at most 10, sorted by score desc
    std::vector<ScoredLabel> scenes;     // at most 3, sorted by score desc

    const DetectedObject* find_object(int object_id) const;
};

struct AnnotationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parse and validate one annotation document (JSON). Attribute/scene lists
// are sorted by score and truncated to the top 10 / top 3. With `strict`,
// object classes must exist in `registry`.
ImageAnnotation load_annotation(const std::string& path, const ConceptRegistry& registry,
                                bool strict = false);
ImageAnnotation parse_annotation(const std::string& json_text, const ConceptRegistry& registry,
                                 bool strict = false);

// All *.json annotations in a directory, keyed by image_id.
std::vector<ImageAnnotation> load_annotation_dir(const std::string& dir,
                                                 const ConceptRegistry& registry,
                                                 bool strict = false);

} // namespace ahab
