#include "ahab/annotation.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace ahab {

namespace {

using nlohmann::json;

void validate_score(double s, const std::string& what) {
    if (s < 0.0 || s > 1.0)
        throw AnnotationError(what + " score out of [0,1]: " + std::to_string(s));
}

std::vector<ScoredLabel> read_scored(const json& arr, const std::string& what, bool wants_supercat,
                                     size_t max_len) {
    std::vector<ScoredLabel> out;
    for (const auto& item : arr) {
        ScoredLabel s;
        s.label = item.at("label").get<std::string>();
        s.score = item.at("score").get<double>();
        validate_score(s.score, what);
        if (wants_supercat) {
            s.supercategory = item.at("supercategory").get<std::string>();
            static const std::set<std::string> allowed = {"action", "sport", "scene", "object"};
            if (!allowed.count(s.supercategory))
                throw AnnotationError("attribute supercategory must be one of "
                                      "action/sport/scene/object: " + s.supercategory);
        }
        out.push_back(std::move(s));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const ScoredLabel& a, const ScoredLabel& b) { return a.score > b.score; });
    if (out.size() > max_len) out.resize(max_len);
    return out;
}

} // namespace

const DetectedObject* ImageAnnotation::find_object(int object_id) const {
    for (const DetectedObject& o : objects)
        if (o.object_id == object_id) return &o;
    return nullptr;
}

ImageAnnotation parse_annotation(const std::string& json_text, const ConceptRegistry& registry,
                                 bool strict) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw AnnotationError(std::string("annotation is not valid JSON: ") + e.what());
    }
    try {
        ImageAnnotation ann;
        ann.image_id = doc.at("image_id").get<std::string>();
        ann.width = doc.at("width").get<int>();
        ann.height = doc.at("height").get<int>();
        if (ann.width <= 0 || ann.height <= 0)
            throw AnnotationError("image dimensions must be positive");

        for (const auto& obj : doc.value("objects", json::array())) {
            DetectedObject d;
            d.object_id = obj.at("id").get<int>();
            d.class_label = obj.at("label").get<std::string>();
            d.superclass = obj.value("supercategory", "");
            const auto& bbox = obj.at("bbox");
            if (!bbox.is_array() || bbox.size() != 4)
                throw AnnotationError("bbox must be [x, y, w, h]");
            d.bbox = BBox{bbox[0].get<double>(), bbox[1].get<double>(), bbox[2].get<double>(),
                          bbox[3].get<double>()};
            if (d.bbox.w <= 0 || d.bbox.h <= 0 || d.bbox.x < 0 || d.bbox.y < 0 ||
                d.bbox.x + d.bbox.w > ann.width || d.bbox.y + d.bbox.h > ann.height)
                throw AnnotationError("object " + std::to_string(d.object_id) +
                                      ": bbox outside image bounds");
            d.score = obj.value("score", 1.0);
            validate_score(d.score, "object");
            if (obj.contains("color") && !obj.at("color").is_null())
                d.color = obj.at("color").get<std::string>();
            if (d.superclass.empty())
                d.superclass = registry.supercategory_of(d.class_label).value_or("");
            if (strict && !registry.has_label(d.class_label))
                throw AnnotationError("unknown object class: " + d.class_label);
            ann.objects.push_back(std::move(d));
        }

        ann.attributes = read_scored(doc.value("attributes", json::array()), "attribute",
                                     /*wants_supercat=*/true, 10);
        ann.scenes = read_scored(doc.value("scenes", json::array()), "scene",
                                 /*wants_supercat=*/false, 3);
        return ann;
    } catch (const json::exception& e) {
        throw AnnotationError(std::string("bad annotation structure: ") + e.what());
    }
}

ImageAnnotation load_annotation(const std::string& path, const ConceptRegistry& registry,
                                bool strict) {
    std::ifstream in(path);
    if (!in) throw AnnotationError("cannot open annotation file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_annotation(buf.str(), registry, strict);
    } catch (const AnnotationError& e) {
        throw AnnotationError(path + ": " + e.what());
    }
}

std::vector<ImageAnnotation> load_annotation_dir(const std::string& dir,
                                                 const ConceptRegistry& registry, bool strict) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<ImageAnnotation> out;
    for (const fs::path& p : files) out.push_back(load_annotation(p.string(), registry, strict));
    return out;
}

} // namespace ahab
