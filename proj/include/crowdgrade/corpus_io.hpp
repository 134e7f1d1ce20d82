#pragma once

#include "crowdgrade/lexicon.hpp"
#include "crowdgrade/thresholds.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace crowdgrade::corpus {

using Warnings = std::vector<std::string>;

struct ReviewRecord {
    std::string work_id;
    std::string reviewer_id;
    std::vector<std::pair<std::string, std::string>> analytic_responses;  // (question_id, answer_id)
    std::string comment;
    std::optional<std::string> submitted_at;

    friend bool operator==(const ReviewRecord&, const ReviewRecord&) = default;
};

enum class ExportFormat { Csv, Json };

// "csv" or "json" (case-insensitive). Throws UnknownFormat.
ExportFormat format_from_string(std::string_view name);
// By file extension. Throws UnknownFormat.
ExportFormat format_from_path(const std::filesystem::path& path);

// Question ids that appear as their own CSV column / JSON key. Answers can
// also arrive packed in a "responses" cell as `Q1=a2;Q2=a1`.
struct ExportSchema {
    std::vector<std::string> question_columns;
};

// Throws MalformedInput naming the 1-based data row, or UnknownFormat.
std::vector<ReviewRecord> parse_review_export(std::istream& in, ExportFormat format, const ExportSchema& schema = {},
                                              Warnings* warnings = nullptr);
std::vector<ReviewRecord> read_review_export(const std::filesystem::path& path, const ExportSchema& schema = {},
                                             Warnings* warnings = nullptr);

// Writes the packed-responses layout; parse_review_export reads it back.
void write_review_export(std::ostream& out, std::span<const ReviewRecord> records, ExportFormat format);

struct Question {
    std::string id;
    grading::Section section = grading::Section::Overall;
    std::string prompt;
    std::map<std::string, double, std::less<>> answers;
};

struct ReviewFormSpec {
    std::vector<Question> questions;
    lexicon::StemSet form_nouns;
    double grade_max = 4.3;

    const Question* find(std::string_view question_id) const;
    // Throws InvalidArgument.
    void validate() const;
};

// JSON document: {"grade_max", "form_nouns": [...], "questions": [{"id",
// "section", "prompt", "answers": {answer_id: value}}]}. Nouns are stemmed.
ReviewFormSpec parse_form(std::istream& in);
ReviewFormSpec load_form(const std::filesystem::path& path);

struct LexiconPaths {
    std::filesystem::path positive;
    std::filesystem::path negative;
    std::filesystem::path negate;
    std::filesystem::path flag;
    std::filesystem::path reset;
};

// One entry per line, `#` comments. Entries are stemmed so they match token
// stems. Duplicate stems: last one wins, with a warning.
lexicon::WeightMap parse_weight_list(std::istream& in, std::string_view source, Warnings* warnings = nullptr);
lexicon::StemSet parse_stem_list(std::istream& in, std::string_view source, Warnings* warnings = nullptr);

// Throws IoError, MalformedInput, WeightOutOfRange, EmptyLexicon,
// LexiconConflict.
lexicon::LexiconSet load_lexicon_set(const LexiconPaths& paths, Warnings* warnings = nullptr);

}  // namespace crowdgrade::corpus
