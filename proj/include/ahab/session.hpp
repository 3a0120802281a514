#pragma once

#include "ahab/answer.hpp"
#include "ahab/evalharness.hpp"
#include "ahab/kb.hpp"

#include <memory>
#include <optional>
#include <string>

namespace ahab {

struct SessionConfig {
    std::string kb_path;
    std::string annotations_dir;
    std::string templates_path;
    std::string classes_path;
    std::string attributes_path;
    long alpha = 50;
    long threshold = 50;
    int depth = 3;
    bool strict_parse = false;

    void validate() const; // alpha > 0, depth >= 1, threshold >= 0
};

// Loads the KB snapshot, registries, templates and annotations once, builds
// the combined graph and serves questions over it.
class Session {
public:
    static std::unique_ptr<Session> load(const SessionConfig& config,
                                         std::ostream* log = nullptr);

    struct Outcome {
        std::optional<ParsedQuestion> parsed;
        Answer answer;
    };

    Outcome ask(const std::string& question, const std::vector<std::string>& image_ids) const;

    std::vector<eval::AnswerRecord> run_batch(
        const std::vector<eval::QuestionRecord>& questions) const;

    const Graph& graph() const { return graph_; }
    const AnswerEngine& engine() const { return *engine_; }
    const TemplateRegistry& templates() const { return templates_; }
    const ConceptRegistry& classes() const { return classes_; }
    const kb::KbSnapshot& snapshot() const { return snapshot_; }
    const LinkReport& link_report() const { return links_; }

    Session(const Session&) = delete;
    Session& operator=(const Session&) = delete;

private:
    Session() = default;

    Graph graph_;
    ConceptRegistry classes_;
    ConceptRegistry attributes_;
    TemplateRegistry templates_;
    kb::KbSnapshot snapshot_;
    LinkReport links_;
    std::unique_ptr<AnswerEngine> engine_;
};

} // namespace ahab
