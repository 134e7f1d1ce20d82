#pragma once

#include "crowdgrade/corpus_io.hpp"
#include "crowdgrade/decision_log.hpp"
#include "crowdgrade/sentiment.hpp"
#include "crowdgrade/thresholds.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace crowdgrade::grading {

enum class Scheme { Simple, Complex };

std::string_view to_string(Scheme scheme);
// Throws InvalidArgument.
Scheme scheme_from_string(std::string_view name);

struct SectionStats {
    double mean = 0.0;
    double median = 0.0;
};

// One review's analytic answers, averaged per section.
struct ReviewAnalytic {
    std::map<Section, double> section_means;
    std::optional<double> score;  // section-weighted, absent with no answers
};

struct AnalyticGrade {
    std::map<Section, SectionStats> sections;
    std::optional<double> score;
};

// Weights over the analytic sections only, renormalized to sum to 1.
double analytic_weight(const SectionWeights& weights, Section section);

// Throws UnknownAnswer naming the review.
ReviewAnalytic grade_review(const corpus::ReviewRecord& record, const corpus::ReviewFormSpec& form,
                            const SectionWeights& weights);
AnalyticGrade grade_analytic(std::span<const corpus::ReviewRecord> records, const corpus::ReviewFormSpec& form,
                             const SectionWeights& weights);

struct CrowdStats {
    int n_reviews = 0;
    int n_scored = 0;
    int n_default = 0;
    double percent_reliable = 0.0;  // fraction of n_reviews, in [0, 1]
    double mean = 0.0;
    double median = 0.0;
    double stddev = 0.0;  // population form
};

// Weighted mean, plain median and weighted population stddev. Weights must
// be positive. Both schemes route through here.
struct WeightedStats {
    double mean = 0.0;
    double median = 0.0;
    double stddev = 0.0;
};
WeightedStats weighted_stats(std::span<const double> values, std::span<const double> weights);

double median(std::vector<double> values);

// Confidence weight of a comment under the complex scheme; nullopt when the
// comment is excluded.
std::optional<double> complex_weight(const sentiment::CommentScore& score, const ScoringThresholds& t);

// Throw AllDefault when nothing is scorable.
CrowdStats aggregate_simple(std::span<const sentiment::CommentScore> scores);
CrowdStats aggregate_complex(std::span<const sentiment::CommentScore> scores, const ScoringThresholds& t);

struct Composition {
    double final_grade = 0.0;
    double dif = 0.0;  // sentiment minus analytic
};

// final = w_sentiment * sentiment + (1 - w_sentiment) * analytic, clamped
// to [0, grade_max].
Composition compose_final(double analytic_score, double sentiment_score, const SectionWeights& weights,
                          double grade_max);

struct WorkAggregate {
    std::string work_id;
    Scheme scheme = Scheme::Simple;
    int n_reviews = 0;
    int n_scored = 0;
    int n_default = 0;
    double percent_reliable = 0.0;
    std::optional<double> mean;
    std::optional<double> median;
    std::optional<double> stddev;
    std::map<Section, SectionStats> analytic_sections;
    std::optional<double> analytic_score;
    std::optional<double> sentiment_score;
    std::optional<double> final_grade;
    std::optional<double> dif;
    int flags_count = 0;
    bool needs_attention = false;  // every comment defaulted
    bool adjusted = false;

    bool stddev_alert(double grade_max) const { return stddev && *stddev > 0.1 * grade_max; }
    nlohmann::ordered_json to_json(double grade_max) const;
};

// Crowd statistics for one work plus its analytic grade. The sentiment side
// of the final grade uses the mean.
WorkAggregate build_work_aggregate(std::string work_id, Scheme scheme,
                                   std::span<const sentiment::CommentScore> scores, const AnalyticGrade& analytic,
                                   const ScoringThresholds& t);

// Validates, records the old and new grade in the log, then updates the work.
// Throws UnknownWork or InvalidArgument.
const WorkAggregate& apply_instructor_adjustment(std::vector<WorkAggregate>& works, std::string_view work_id,
                                                 double new_score, const std::string& reason, double grade_max,
                                                 audit::DecisionLog& log);

// Re-applies logged grade adjustments in order. Unknown works are skipped.
void replay_adjustments(std::vector<WorkAggregate>& works, const std::vector<audit::Entry>& entries);

}  // namespace crowdgrade::grading
