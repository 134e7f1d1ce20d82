#pragma once

#include "crowdgrade/analytics.hpp"
#include "crowdgrade/aspects.hpp"
#include "crowdgrade/corpus_io.hpp"
#include "crowdgrade/grading.hpp"
#include "crowdgrade/sentiment.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace crowdgrade::course {

// Everything one course run needs. Relative paths in a config file resolve
// against the file's directory.
struct CourseRun {
    std::string course_id;
    std::filesystem::path form_path;
    corpus::ReviewFormSpec form;
    corpus::LexiconPaths lexicon;
    std::optional<std::filesystem::path> tagger_rules;
    grading::ScoringThresholds thresholds;
    sentiment::NegationConfig negation;
    std::filesystem::path input;
    std::filesystem::path output_dir;
    std::size_t aspect_window = 4;
    int min_mentions = 2;
    double min_abs_sentiment = 1.0;
    double alpha = 0.001;

    std::filesystem::path course_dir() const { return output_dir / course_id; }
    // Throws InvalidArgument.
    void validate() const;
};

// Minimal TOML subset: `[section]` headers, `key = value` with quoted
// strings, numbers and booleans, `#` comments. Keys come back as
// "section.key". Throws MalformedInput with the line number.
std::map<std::string, std::string> parse_key_values(std::istream& in, std::string_view source);

// Reads the config and the form it names. Lexicon files are checked later,
// when they are loaded.
CourseRun load_config(const std::filesystem::path& path);

struct ScoredComment {
    std::string ref;  // "c<row index>"
    corpus::ReviewRecord record;
    sentiment::CommentAnalysis analysis;
    std::optional<double> review_analytic;
    sentiment::Annotation annotation;
    std::vector<aspects::AspectMention> mentions;
    double parroting = 0.0;

    nlohmann::ordered_json to_json() const;
};

struct CourseResults {
    std::vector<ScoredComment> comments;
    std::vector<std::string> work_ids;  // first-appearance order
    std::map<std::string, grading::AnalyticGrade> analytic;
    std::vector<grading::WorkAggregate> simple;
    std::vector<grading::WorkAggregate> complex;
    std::vector<aspects::AspectMention> mentions;
    std::vector<aspects::Orphan> orphans;
    corpus::Warnings warnings;

    const std::vector<grading::WorkAggregate>& aggregates(grading::Scheme scheme) const {
        return scheme == grading::Scheme::Simple ? simple : complex;
    }
    std::vector<const ScoredComment*> comments_of(std::string_view work_id) const;
    std::vector<analytics::WorkSample> samples(grading::Scheme scheme) const;
    std::vector<std::string> corpus_stems() const;
};

CourseResults run_course(const CourseRun& run, const text::Tagger& tagger, const lexicon::LexiconSet& lex);
// Loads tagger and lexicon as configured.
CourseResults run_course(const CourseRun& run);

enum class SchemeChoice { Simple, Complex, Both };
// Throws InvalidArgument.
SchemeChoice scheme_choice_from_string(std::string_view name);

// Writes `contents` next to `path` and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

// Files written by cmd_score, relative to the course directory.
inline constexpr const char* kCommentsFile = "comments.jsonl";
inline constexpr const char* kFlagsFile = "flags.jsonl";
inline constexpr const char* kSchemeDeltaFile = "scheme_delta.json";
inline constexpr const char* kCandidatesFile = "aspect_candidates.csv";
inline constexpr const char* kDecisionsFile = "decisions.jsonl";
std::string aggregates_file(grading::Scheme scheme);

// Each command computes everything first and only then writes, so a failure
// leaves no partial output. Return a process exit status; diagnostics go to
// `err`.
int cmd_score(const CourseRun& run, SchemeChoice scheme, std::ostream& err);
int cmd_aspects(const CourseRun& run, int min_mentions, double min_abs_sentiment, std::ostream& err);
int cmd_report(const CourseRun& run, std::ostream& err);

// Report bodies, exposed for the service and tests.
std::string render_aggregates(const std::vector<grading::WorkAggregate>& works, double grade_max);
std::string render_top_keywords(const CourseResults& results);

}  // namespace crowdgrade::course
