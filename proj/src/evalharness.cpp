#include "ahab/evalharness.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

namespace ahab::eval {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string fold(const std::string& s) {
    std::string out;
    for (unsigned char c : s) out += static_cast<char>(std::tolower(c));
    return out;
}

std::string squeeze(const std::string& s) {
    std::string out;
    bool space = false;
    for (unsigned char c : s) {
        if (std::isspace(c)) {
            space = !out.empty();
            continue;
        }
        if (std::isalnum(c)) {
            if (space) out += ' ';
            out += static_cast<char>(std::tolower(c));
            space = false;
        }
    }
    return out;
}

} // namespace

std::string level_name(KnowledgeLevel level) {
    switch (level) {
    case KnowledgeLevel::Visual: return "visual";
    case KnowledgeLevel::CommonSense: return "common-sense";
    case KnowledgeLevel::KbKnowledge: return "kb-knowledge";
    }
    return "visual";
}

std::optional<KnowledgeLevel> parse_level(const std::string& name) {
    if (name == "visual") return KnowledgeLevel::Visual;
    if (name == "common-sense") return KnowledgeLevel::CommonSense;
    if (name == "kb-knowledge") return KnowledgeLevel::KbKnowledge;
    return std::nullopt;
}

std::vector<QuestionRecord> load_questions(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open question file: " + path);
    std::vector<QuestionRecord> out;
    std::string line;
    size_t line_no = 0;
    std::set<std::string> ids;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        json doc;
        try {
            doc = json::parse(line);
        } catch (const json::parse_error& e) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        QuestionRecord q;
        q.id = doc.at("id").get<std::string>();
        if (!ids.insert(q.id).second)
            throw std::runtime_error(path + ": duplicate question id " + q.id);
        if (doc.contains("images"))
            for (const auto& img : doc.at("images")) q.image_ids.push_back(img.get<std::string>());
        else if (doc.contains("image"))
            q.image_ids.push_back(doc.at("image").get<std::string>());
        if (q.image_ids.empty() || q.image_ids.size() > 2)
            throw std::runtime_error(path + ": question " + q.id + " needs one or two images");
        q.question = doc.at("question").get<std::string>();
        auto level = parse_level(doc.at("level").get<std::string>());
        if (!level)
            throw std::runtime_error(path + ": question " + q.id +
                                     ": level must be visual, common-sense or kb-knowledge");
        q.level = *level;
        q.gold_reason = doc.value("gold_reason", "");
        if (doc.contains("gold")) {
            const json& g = doc.at("gold");
            if (g.contains("bool")) {
                q.gold.type = GoldAnswer::Type::Boolean;
                q.gold.boolean = g.at("bool").get<bool>();
            } else if (g.contains("count")) {
                q.gold.type = GoldAnswer::Type::Count;
                q.gold.count = g.at("count").get<long>();
            } else if (g.contains("text")) {
                q.gold.type = GoldAnswer::Type::Text;
                q.gold.text = g.at("text").get<std::string>();
            } else if (g.contains("names")) {
                q.gold.type = GoldAnswer::Type::NameList;
                for (const auto& n : g.at("names")) q.gold.names.push_back(n.get<std::string>());
                q.gold.exact_set = g.value("exact", false);
            } else if (g.contains("ref")) {
                q.gold.type = GoldAnswer::Type::Ref;
                q.gold.text = g.at("ref").get<std::string>();
            }
        }
        out.push_back(std::move(q));
    }
    return out;
}

const char* CorrectnessScore::tag(int score) {
    switch (score) {
    case 1: return "totally-wrong";
    case 2: return "slightly-wrong";
    case 3: return "borderline";
    case 4: return "ok";
    case 5: return "perfect";
    default: return "invalid";
    }
}

std::vector<ScoreEntry> load_score_log(const std::string& path) {
    std::ifstream in(path);
    std::vector<ScoreEntry> out;
    if (!in) return out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        ScoreEntry e;
        if (row >> e.question_id >> e.examiner >> e.item >> e.score >> e.timestamp)
            out.push_back(std::move(e));
    }
    return out;
}

void append_score(const std::string& path, const ScoreEntry& entry) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open score log: " + path);
    out << entry.question_id << " " << entry.examiner << " " << entry.item << " " << entry.score
        << " " << entry.timestamp << "\n";
}

bool auto_check(const AnswerRecord& record, const GoldAnswer& gold) {
    const Answer& a = record.answer;
    switch (gold.type) {
    case GoldAnswer::Type::None:
        return false;
    case GoldAnswer::Type::Boolean:
        return a.ok() && a.payload == PayloadType::Boolean && a.bool_value == gold.boolean;
    case GoldAnswer::Type::Count:
        return a.ok() && a.payload == PayloadType::Count && a.count_value == gold.count;
    case GoldAnswer::Type::Text: {
        if (!a.ok()) return squeeze(a.answer_text) == squeeze(gold.text);
        return squeeze(a.answer_text).find(squeeze(gold.text)) != std::string::npos;
    }
    case GoldAnswer::Type::NameList: {
        if (!a.ok() || a.payload != PayloadType::NameList) return false;
        std::set<std::string> have, want;
        for (const std::string& n : a.names) have.insert(fold(n));
        for (const std::string& n : gold.names) want.insert(fold(n));
        if (gold.exact_set) return have == want;
        return std::includes(have.begin(), have.end(), want.begin(), want.end());
    }
    case GoldAnswer::Type::Ref: {
        if (!a.ok()) return false;
        std::string want = fold(gold.text);
        return fold(a.entity_display) == want || fold(a.entity_iri) == want ||
               fold(a.image_ref) == want ||
               fold(a.entity_display).find(want) != std::string::npos;
    }
    }
    return false;
}

AutoCheckReport auto_check_all(const std::vector<AnswerRecord>& records,
                               const std::vector<QuestionRecord>& questions) {
    std::map<std::string, const QuestionRecord*> by_id;
    for (const QuestionRecord& q : questions) by_id[q.id] = &q;
    AutoCheckReport report;
    for (const AnswerRecord& r : records) {
        auto it = by_id.find(r.question_id);
        if (it == by_id.end() || it->second->gold.type == GoldAnswer::Type::None) {
            ++report.missing_gold;
            continue;
        }
        bool pass = auto_check(r, it->second->gold);
        if (!it->second->gold_reason.empty() && pass) {
            std::string want = squeeze(it->second->gold_reason);
            std::string have;
            for (const std::string& l : r.reason_lines) have += " " + l;
            pass = squeeze(have).find(want) != std::string::npos;
        }
        report.per_question.emplace_back(r.question_id, pass);
        if (pass) ++report.passed;
        else ++report.failed;
    }
    return report;
}

EvaluationReport aggregate(const std::vector<ScoreEntry>& scores,
                           const std::vector<QuestionRecord>& questions,
                           const std::map<std::string, std::string>* template_by_question) {
    std::map<std::string, const QuestionRecord*> by_id;
    for (const QuestionRecord& q : questions) by_id[q.id] = &q;

    std::map<std::string, std::vector<int>> answer_scores, reason_scores;
    for (const ScoreEntry& e : scores) {
        if (!by_id.count(e.question_id))
            throw std::runtime_error("score for unknown question id: " + e.question_id);
        if (!CorrectnessScore::valid(e.score))
            throw std::runtime_error("score out of range for " + e.question_id);
        (e.item == "reason" ? reason_scores : answer_scores)[e.question_id].push_back(e.score);
    }

    EvaluationReport report;
    double correctness_sum = 0;
    for (const auto& [qid, qscores] : answer_scores) {
        const QuestionRecord* q = by_id.at(qid);
        double mean = 0;
        for (int s : qscores) {
            mean += s;
            report.histogram[static_cast<size_t>(s - 1)]++;
        }
        mean /= static_cast<double>(qscores.size());
        bool correct = mean > 3.0;

        ++report.total_questions;
        if (correct) ++report.total_correct;
        correctness_sum += mean;

        std::string tpl = "unknown";
        if (template_by_question) {
            auto it = template_by_question->find(qid);
            if (it != template_by_question->end()) tpl = it->second;
        }
        TemplateStats& t = report.per_template[tpl];
        ++t.questions;
        if (correct) ++t.correct;
        t.mean_correctness += mean;

        TemplateStats& l = report.per_level[level_name(q->level)];
        ++l.questions;
        if (correct) ++l.correct;
        l.mean_correctness += mean;
    }
    for (auto& [_, t] : report.per_template)
        if (t.questions) t.mean_correctness /= static_cast<double>(t.questions);
    for (auto& [_, t] : report.per_level)
        if (t.questions) t.mean_correctness /= static_cast<double>(t.questions);
    if (report.total_questions)
        report.mean_correctness = correctness_sum / static_cast<double>(report.total_questions);

    if (!reason_scores.empty()) {
        size_t correct = 0;
        for (const auto& [_, rs] : reason_scores) {
            double mean = 0;
            for (int s : rs) mean += s;
            mean /= static_cast<double>(rs.size());
            if (mean > 3.0) ++correct;
        }
        report.reason_accuracy = static_cast<double>(correct) / reason_scores.size();
    }
    return report;
}

std::string render_report(const EvaluationReport& report) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(1);
    out << "Question Type                 N    Accuracy(%)  Correctness(Avg.)\n";
    for (const auto& [tpl, t] : report.per_template) {
        out << std::left << std::setw(28) << tpl << std::right << std::setw(5) << t.questions
            << std::setw(13) << t.accuracy() * 100 << std::setw(19) << std::setprecision(2)
            << t.mean_correctness << std::setprecision(1) << "\n";
    }
    out << std::left << std::setw(28) << "Overall" << std::right << std::setw(5)
        << report.total_questions << std::setw(13) << report.accuracy() * 100 << std::setw(19)
        << std::setprecision(2) << report.mean_correctness << std::setprecision(1) << "\n";
    out << "\nKnowledge level breakdown:\n";
    for (const auto& [level, t] : report.per_level)
        out << "  " << std::left << std::setw(14) << level << std::right << std::setw(5)
            << t.questions << std::setw(13) << t.accuracy() * 100 << "\n";
    out << "\nCorrectness histogram (1..5): ";
    for (size_t i = 0; i < 5; ++i) out << report.histogram[i] << (i + 1 < 5 ? " " : "\n");
    if (report.reason_accuracy)
        out << "Reason accuracy: " << *report.reason_accuracy * 100 << "%\n";
    return out.str();
}

std::string report_to_json(const EvaluationReport& report) {
    ordered_json doc;
    doc["total_questions"] = report.total_questions;
    doc["accuracy"] = report.accuracy();
    doc["mean_correctness"] = report.mean_correctness;
    ordered_json per_template = ordered_json::object();
    for (const auto& [tpl, t] : report.per_template)
        per_template[tpl] = {{"questions", t.questions},
                             {"accuracy", t.accuracy()},
                             {"mean_correctness", t.mean_correctness}};
    doc["per_template"] = per_template;
    ordered_json per_level = ordered_json::object();
    for (const auto& [level, t] : report.per_level)
        per_level[level] = {{"questions", t.questions}, {"accuracy", t.accuracy()}};
    doc["per_level"] = per_level;
    doc["histogram"] = report.histogram;
    if (report.reason_accuracy) doc["reason_accuracy"] = *report.reason_accuracy;
    return doc.dump(2);
}

size_t score_interactive(const std::vector<AnswerRecord>& records,
                         const std::vector<QuestionRecord>& questions, std::istream& in,
                         std::ostream& out, const std::string& log_path,
                         const std::string& examiner) {
    std::map<std::string, const QuestionRecord*> by_id;
    for (const QuestionRecord& q : questions) by_id[q.id] = &q;

    std::set<std::pair<std::string, std::string>> done; // (question, item)
    for (const ScoreEntry& e : load_score_log(log_path))
        if (e.examiner == examiner) done.insert({e.question_id, e.item});

    auto now_stamp = []() {
        auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::ostringstream s;
        s << std::put_time(std::gmtime(&t), "%Y-%m-%dT%H:%M:%SZ");
        return s.str();
    };

    auto prompt_score = [&](const std::string& what) -> std::optional<int> {
        while (true) {
            out << "score " << what << " [1-5]: " << std::flush;
            std::string line;
            if (!std::getline(in, line)) return std::nullopt;
            try {
                int v = std::stoi(line);
                if (CorrectnessScore::valid(v)) return v;
            } catch (...) {
            }
            out << "please enter an integer between 1 and 5\n";
        }
    };

    size_t stored = 0;
    for (const AnswerRecord& r : records) {
        auto qit = by_id.find(r.question_id);
        if (qit == by_id.end()) continue;
        bool need_answer = !done.count({r.question_id, "answer"});
        bool need_reason = !r.reason_lines.empty() && !done.count({r.question_id, "reason"});
        if (!need_answer && !need_reason) continue;

        // Source-blind: only the question and its answer are shown.
        out << "\n[" << r.question_id << "] " << qit->second->question << "\n";
        out << "answer: " << r.answer.answer_text << "\n";
        for (const std::string& line : r.reason_lines) out << "reason: " << line << "\n";

        if (need_answer) {
            std::optional<int> s = prompt_score("answer");
            if (!s) break;
            append_score(log_path, {r.question_id, examiner, "answer", *s, now_stamp()});
            ++stored;
        }
        if (need_reason) {
            std::optional<int> s = prompt_score("reason");
            if (!s) break;
            append_score(log_path, {r.question_id, examiner, "reason", *s, now_stamp()});
            ++stored;
        }
    }
    return stored;
}

std::string record_to_json(const AnswerRecord& record) {
    ordered_json doc;
    doc["id"] = record.question_id;
    doc["template"] = record.template_id;
    doc["status"] = status_message(record.answer.status);
    switch (record.answer.payload) {
    case PayloadType::Boolean: doc["payload"] = {{"bool", record.answer.bool_value}}; break;
    case PayloadType::Count: doc["payload"] = {{"count", record.answer.count_value}}; break;
    case PayloadType::Text: doc["payload"] = {{"text", record.answer.text_value}}; break;
    case PayloadType::NameList: doc["payload"] = {{"names", record.answer.names}}; break;
    case PayloadType::EntityRef:
        doc["payload"] = {{"entity", record.answer.entity_iri},
                          {"display", record.answer.entity_display}};
        break;
    case PayloadType::ImageRef: doc["payload"] = {{"image", record.answer.image_ref}}; break;
    }
    doc["answer"] = record.answer.answer_text;
    doc["reason"] = record.reason_lines;
    doc["queries"] = record.answer.executed_queries;
    return doc.dump();
}

} // namespace ahab::eval
