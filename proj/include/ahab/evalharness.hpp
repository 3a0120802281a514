#pragma once

#include "ahab/answer.hpp"

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ahab::eval {

enum class KnowledgeLevel { Visual, CommonSense, KbKnowledge };

std::string level_name(KnowledgeLevel level);
std::optional<KnowledgeLevel> parse_level(const std::string& name);

// Expected answer for automated checking. NameList matching defaults to
// "gold is a subset of the answer"; `exact_set` demands set equality.
struct GoldAnswer {
    enum class Type { None, Boolean, Count, Text, NameList, Ref };
    Type type = Type::None;
    bool boolean = false;
    long count = 0;
    std::string text;
    std::vector<std::string> names;
    bool exact_set = false;
};

struct QuestionRecord {
    std::string id;
    std::vector<std::string> image_ids; // one or two
    std::string question;
    KnowledgeLevel level = KnowledgeLevel::Visual;
    GoldAnswer gold;
    std::string gold_reason; // optional phrase expected in the reason
};

std::vector<QuestionRecord> load_questions(const std::string& path);

struct AnswerRecord {
    std::string question_id;
    std::string template_id;
    Answer answer;
    std::vector<std::string> reason_lines;
};

// 1..5 correctness rubric.
struct CorrectnessScore {
    int score = 0;
    static const char* tag(int score); // totally-wrong .. perfect
    static bool valid(int score) { return score >= 1 && score <= 5; }
};

struct ScoreEntry {
    std::string question_id;
    std::string examiner;
    std::string item = "answer"; // answer | reason
    int score = 0;
    std::string timestamp;
};

std::vector<ScoreEntry> load_score_log(const std::string& path);
void append_score(const std::string& path, const ScoreEntry& entry);

// Boolean/Count/Ref compare exactly; NameList as case-insensitive sets;
// Text by normalized containment of the gold phrase.
bool auto_check(const AnswerRecord& record, const GoldAnswer& gold);

struct AutoCheckReport {
    size_t passed = 0;
    size_t failed = 0;
    size_t missing_gold = 0;
    std::vector<std::pair<std::string, bool>> per_question; // (id, pass)
};

AutoCheckReport auto_check_all(const std::vector<AnswerRecord>& records,
                               const std::vector<QuestionRecord>& questions);

struct TemplateStats {
    size_t questions = 0;
    size_t correct = 0;
    double mean_correctness = 0;
    double accuracy() const {
        return questions == 0 ? 0.0 : static_cast<double>(correct) / questions;
    }
};

struct EvaluationReport {
    std::map<std::string, TemplateStats> per_template;
    std::map<std::string, TemplateStats> per_level;
    std::array<size_t, 5> histogram = {0, 0, 0, 0, 0}; // scores 1..5
    size_t total_questions = 0;
    size_t total_correct = 0;
    std::optional<double> reason_accuracy; // over reason-scored questions
    double accuracy() const {
        return total_questions == 0 ? 0.0
                                    : static_cast<double>(total_correct) / total_questions;
    }
    double mean_correctness = 0;
};

// Aggregates examiner scores: per-question mean over examiners, correct
// iff mean > 3. Scores for unknown question ids are rejected.
EvaluationReport aggregate(const std::vector<ScoreEntry>& scores,
                           const std::vector<QuestionRecord>& questions,
                           const std::map<std::string, std::string>* template_by_question = nullptr);

std::string render_report(const EvaluationReport& report);
std::string report_to_json(const EvaluationReport& report);

// Interactive 1-5 scoring; answers are shown without their source, out of
// range input re-prompts, already-scored items are skipped (resumable).
size_t score_interactive(const std::vector<AnswerRecord>& records,
                         const std::vector<QuestionRecord>& questions, std::istream& in,
                         std::ostream& out, const std::string& log_path,
                         const std::string& examiner);

std::string record_to_json(const AnswerRecord& record);

} // namespace ahab::eval
