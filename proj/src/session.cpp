#include "ahab/session.hpp"

#include <ostream>
#include <stdexcept>

namespace ahab {

void SessionConfig::validate() const {
    if (alpha <= 0) throw std::invalid_argument("alpha must be positive");
    if (depth < 1) throw std::invalid_argument("depth must be at least 1");
    if (threshold < 0) throw std::invalid_argument("threshold must be non-negative");
    if (kb_path.empty()) throw std::invalid_argument("kb path is required");
}

std::unique_ptr<Session> Session::load(const SessionConfig& config, std::ostream* log) {
    config.validate();
    std::unique_ptr<Session> s(new Session());

    s->snapshot_ = kb::load_snapshot(config.kb_path, s->graph_, config.strict_parse);
    if (log)
        *log << "loaded KB snapshot: " << s->snapshot_.triple_count << " triples, "
             << s->snapshot_.labels_indexed << " labels, " << s->snapshot_.redirects_indexed
             << " redirects" << (s->snapshot_.skipped_lines.empty()
                                     ? std::string()
                                     : " (" + std::to_string(s->snapshot_.skipped_lines.size()) +
                                           " lines skipped)")
             << "\n";

    s->classes_ = ConceptRegistry::load(config.classes_path);
    s->attributes_ = ConceptRegistry::load(config.attributes_path);
    s->templates_ = TemplateRegistry::load(config.templates_path, s->classes_);

    EngineConfig ec;
    ec.alpha = config.alpha;
    ec.relatedness_threshold = config.threshold;
    ec.transitive_depth = config.depth;
    s->engine_ = std::make_unique<AnswerEngine>(s->graph_, s->classes_, ec);

    if (!config.annotations_dir.empty()) {
        for (ImageAnnotation& ann :
             load_annotation_dir(config.annotations_dir, s->classes_, config.strict_parse)) {
            ImageContext ctx;
            ctx.handle = build_image_graph(s->graph_, ann);
            ctx.annotation = std::move(ann);
            LinkReport r = link_concepts(s->graph_, ctx.handle);
            s->links_.link_count += r.link_count;
            for (std::string& u : r.unlinked) s->links_.unlinked.push_back(std::move(u));
            s->engine_->add_image(std::move(ctx));
        }
        if (log)
            *log << "annotations: " << s->engine_->image_ids().size() << " image(s), "
                 << s->links_.link_count << " same-concept links, " << s->links_.unlinked.size()
                 << " unlinked categories\n";
    }
    return s;
}

Session::Outcome Session::ask(const std::string& question,
                              const std::vector<std::string>& image_ids) const {
    Outcome out;
    std::optional<ParsedQuestion> parsed = templates_.match(question);
    if (!parsed) {
        out.answer.status = AnswerStatus::NoTemplate;
        out.answer.answer_text = status_message(AnswerStatus::NoTemplate);
        return out;
    }
    out.parsed = parsed;
    out.answer = engine_->answer(*parsed, image_ids);
    return out;
}

std::vector<eval::AnswerRecord> Session::run_batch(
    const std::vector<eval::QuestionRecord>& questions) const {
    std::vector<eval::AnswerRecord> out;
    for (const eval::QuestionRecord& q : questions) {
        eval::AnswerRecord rec;
        rec.question_id = q.id;
        Outcome res = ask(q.question, q.image_ids);
        if (res.parsed) rec.template_id = res.parsed->template_id;
        rec.answer = std::move(res.answer);
        rec.reason_lines = render_reason(rec.answer.trace);
        out.push_back(std::move(rec));
    }
    return out;
}

} // namespace ahab
