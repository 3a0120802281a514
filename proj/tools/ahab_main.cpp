#include "ahab/session.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace ahab;

// Exit codes: 0 answered/ok, 2 unrecognized question, 3 structured answer
// failure, 4 input/config error.
constexpr int kExitOk = 0;
constexpr int kExitNoTemplate = 2;
constexpr int kExitAnswerError = 3;
constexpr int kExitBadInput = 4;

struct CommonOpts {
    SessionConfig config;
    bool verbose_queries = false;
};

void add_common_flags(CLI::App* cmd, CommonOpts& opts) {
    // AHAB_CONFIG may point at a JSON file with the same keys as the flags.
    const char* env = std::getenv("AHAB_CONFIG");
    if (env && *env) {
        std::ifstream in(env);
        if (in) {
            nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
            if (!doc.is_discarded()) {
                opts.config.kb_path = doc.value("kb", opts.config.kb_path);
                opts.config.annotations_dir =
                    doc.value("annotations", opts.config.annotations_dir);
                opts.config.templates_path = doc.value("templates", opts.config.templates_path);
                opts.config.classes_path = doc.value("classes", opts.config.classes_path);
                opts.config.attributes_path =
                    doc.value("attributes", opts.config.attributes_path);
                opts.config.alpha = doc.value("alpha", opts.config.alpha);
                opts.config.threshold = doc.value("threshold", opts.config.threshold);
                opts.config.depth = doc.value("depth", opts.config.depth);
            }
        }
    }
    cmd->add_option("--kb", opts.config.kb_path, "KB snapshot file");
    cmd->add_option("--annotations", opts.config.annotations_dir, "annotation directory");
    cmd->add_option("--templates", opts.config.templates_path, "template registry file");
    cmd->add_option("--classes", opts.config.classes_path, "object class registry");
    cmd->add_option("--attributes", opts.config.attributes_path, "attribute registry");
    cmd->add_option("--alpha", opts.config.alpha, "weight of the f1 correlation term");
    cmd->add_option("--threshold", opts.config.threshold, "relatedness threshold");
    cmd->add_option("--depth", opts.config.depth, "transitive category depth");
    cmd->add_flag("--strict-parse", opts.config.strict_parse,
                  "abort on malformed snapshot/annotation input");
    cmd->add_flag("--verbose-queries", opts.verbose_queries, "print executed queries");
}

void apply_defaults(SessionConfig& c) {
    if (c.kb_path.empty()) c.kb_path = "data/mini_kb.nt";
    if (c.annotations_dir.empty()) c.annotations_dir = "data/annotations";
    if (c.templates_path.empty()) c.templates_path = "data/templates.tsv";
    if (c.classes_path.empty()) c.classes_path = "data/classes.tsv";
    if (c.attributes_path.empty()) c.attributes_path = "data/attributes.tsv";
}

void print_answer(std::ostream& out, const Session::Outcome& res, bool verbose) {
    if (res.parsed) out << "template: " << res.parsed->template_id << "\n";
    out << "answer: " << res.answer.answer_text << "\n";
    for (const std::string& line : render_reason(res.answer.trace)) out << "reason: " << line
                                                                        << "\n";
    if (verbose)
        for (const std::string& q : res.answer.executed_queries)
            out << "query:\n" << q << "\n";
}

int answer_exit_code(const Answer& a) {
    if (a.status == AnswerStatus::Ok) return kExitOk;
    if (a.status == AnswerStatus::NoTemplate) return kExitNoTemplate;
    return kExitAnswerError;
}

std::vector<std::string> split_ids(const std::string& csv) {
    std::vector<std::string> out;
    std::istringstream in(csv);
    std::string part;
    while (std::getline(in, part, ','))
        if (!part.empty()) out.push_back(part);
    return out;
}

int cmd_load_check(const CommonOpts& opts) {
    auto session = Session::load(opts.config, &std::cout);
    std::cout << "graph size: " << session->graph().size() << " triples\n";
    std::cout << "templates: " << session->templates().template_ids().size() << " ("
              << session->templates().pattern_count() << " patterns)\n";
    for (const std::string& u : session->link_report().unlinked)
        std::cout << "unlinked category: " << u << "\n";
    std::cout << "ok\n";
    return kExitOk;
}

int cmd_ask(const CommonOpts& opts, const std::string& images_csv,
            const std::string& question) {
    auto session = Session::load(opts.config, nullptr);
    Session::Outcome res = session->ask(question, split_ids(images_csv));
    print_answer(std::cout, res, opts.verbose_queries);
    return answer_exit_code(res.answer);
}

int cmd_repl(const CommonOpts& opts, const std::string& initial_images) {
    auto session = Session::load(opts.config, &std::cout);
    std::vector<std::string> images = split_ids(initial_images);
    std::cout << "images: ";
    for (const std::string& id : session->engine().image_ids()) std::cout << id << " ";
    std::cout << "\n(':image <id>[,<id>]' switches context, ':quit' exits)\n";
    std::string line;
    while (true) {
        std::cout << "ahab> " << std::flush;
        if (!std::getline(std::cin, line)) break;
        if (line.empty()) continue;
        if (line == ":quit" || line == ":q") break;
        if (line.rfind(":image ", 0) == 0) {
            images = split_ids(line.substr(7));
            std::cout << "context set to " << line.substr(7) << "\n";
            continue;
        }
        try {
            Session::Outcome res = session->ask(line, images);
            print_answer(std::cout, res, opts.verbose_queries);
        } catch (const std::exception& e) {
            std::cout << "error: " << e.what() << "\n";
        }
    }
    return kExitOk;
}

int cmd_batch(const CommonOpts& opts, const std::string& questions_path,
              const std::string& out_path) {
    auto session = Session::load(opts.config, &std::cout);
    std::vector<eval::QuestionRecord> questions = eval::load_questions(questions_path);
    std::vector<eval::AnswerRecord> records = session->run_batch(questions);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::cerr << "cannot write " << out_path << "\n";
            return kExitBadInput;
        }
        out = &file;
    }
    size_t errors = 0;
    for (const eval::AnswerRecord& r : records) {
        *out << eval::record_to_json(r) << "\n";
        if (!r.answer.ok()) ++errors;
    }
    std::cout << "answered " << records.size() << " question(s), " << errors
              << " with structured errors\n";
    return kExitOk;
}

int cmd_eval(const CommonOpts& opts, const std::string& questions_path,
             const std::string& out_path, bool interactive, const std::string& examiner,
             const std::string& score_log) {
    auto session = Session::load(opts.config, &std::cout);
    std::vector<eval::QuestionRecord> questions = eval::load_questions(questions_path);
    std::vector<eval::AnswerRecord> records = session->run_batch(questions);

    std::map<std::string, std::string> template_by_question;
    for (const eval::AnswerRecord& r : records) template_by_question[r.question_id] = r.template_id;

    std::vector<eval::ScoreEntry> scores;
    if (interactive) {
        std::string log = score_log.empty() ? "scores.log" : score_log;
        eval::score_interactive(records, questions, std::cin, std::cout, log, examiner);
        scores = eval::load_score_log(log);
    } else {
        bool any_gold = false;
        for (const eval::QuestionRecord& q : questions)
            if (q.gold.type != eval::GoldAnswer::Type::None) any_gold = true;
        if (!any_gold) {
            std::cerr << "no gold answers in " << questions_path
                      << "; use --interactive to score manually\n";
            return kExitBadInput;
        }
        eval::AutoCheckReport check = eval::auto_check_all(records, questions);
        std::map<std::string, bool> pass;
        for (const auto& [qid, ok] : check.per_question) pass[qid] = ok;
        for (const eval::AnswerRecord& r : records) {
            if (!pass.count(r.question_id)) continue;
            scores.push_back({r.question_id, "auto", "answer", pass[r.question_id] ? 5 : 1, "-"});
        }
        std::cout << "auto check: " << check.passed << " passed, " << check.failed
                  << " failed, " << check.missing_gold << " without gold\n";
    }

    eval::EvaluationReport report = eval::aggregate(scores, questions, &template_by_question);
    std::cout << eval::render_report(report);
    if (!out_path.empty()) {
        std::ofstream file(out_path);
        file << eval::report_to_json(report) << "\n";
        std::cout << "report written to " << out_path << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"knowledge-based visual question answering over a KB snapshot"};
    app.require_subcommand(1);

    CommonOpts opts;

    auto* load_check = app.add_subcommand("load-check", "load everything and report stats");
    add_common_flags(load_check, opts);

    auto* ask = app.add_subcommand("ask", "answer one question");
    std::string images_csv, question;
    add_common_flags(ask, opts);
    ask->add_option("--images", images_csv, "comma-separated image id(s)")->required();
    ask->add_option("question", question, "question text")->required();

    auto* repl = app.add_subcommand("repl", "interactive question loop");
    std::string repl_images;
    add_common_flags(repl, opts);
    repl->add_option("--images", repl_images, "initial image context");

    auto* batch = app.add_subcommand("batch", "answer a question file");
    std::string batch_questions, batch_out;
    add_common_flags(batch, opts);
    batch->add_option("--questions", batch_questions, "question file (jsonl)")->required();
    batch->add_option("--out", batch_out, "output answer-record file");

    auto* eval_cmd = app.add_subcommand("eval", "run answers through the scoring protocol");
    std::string eval_questions, eval_out, examiner = "examiner1", score_log;
    bool interactive = false;
    add_common_flags(eval_cmd, opts);
    eval_cmd->add_option("--questions", eval_questions, "question file (jsonl)")->required();
    eval_cmd->add_option("--out", eval_out, "machine-readable report file");
    eval_cmd->add_flag("--interactive", interactive, "score answers by hand (1-5)");
    eval_cmd->add_option("--examiner", examiner, "examiner id for the score log");
    eval_cmd->add_option("--score-log", score_log, "score log path");

    CLI11_PARSE(app, argc, argv);

    try {
        apply_defaults(opts.config);
        if (load_check->parsed()) return cmd_load_check(opts);
        if (ask->parsed()) return cmd_ask(opts, images_csv, question);
        if (repl->parsed()) return cmd_repl(opts, repl_images);
        if (batch->parsed()) return cmd_batch(opts, batch_questions, batch_out);
        if (eval_cmd->parsed())
            return cmd_eval(opts, eval_questions, eval_out, interactive, examiner, score_log);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitOk;
}
