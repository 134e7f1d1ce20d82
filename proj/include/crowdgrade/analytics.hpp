#pragma once

#include "crowdgrade/grading.hpp"
#include "crowdgrade/lexicon.hpp"
#include "crowdgrade/sentiment.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace crowdgrade::analytics {

// Throws DegenerateInput for length < 3, unequal lengths or a constant vector.
double pearson(std::span<const double> x, std::span<const double> y);

// I_x(a, b) by continued fraction.
double regularized_incomplete_beta(double a, double b, double x);
// Two-tailed P(|T| >= t) for Student's t with `df` degrees of freedom.
double student_t_two_tailed_p(double t, double df);
// t such that the two-tailed p equals alpha; bisection to 1e-9.
double student_t_quantile(double df, double alpha);
// Smallest |r| significant at `alpha` for df = n - 2.
double critical_r(double df, double alpha);

struct CorrelationResult {
    std::string x_name;
    std::string y_name;
    std::optional<double> r;  // absent when not computable
    int n = 0;
    int df = 0;
    double alpha = 0.05;
    double critical_value = 0.0;
    bool significant = false;
    std::string note;
};

// Per-work input: the crowd aggregate plus every comment's metrics.
struct WorkSample {
    grading::WorkAggregate aggregate;
    std::vector<sentiment::CommentScore> comments;
};

// Metric columns, in report order.
const std::vector<std::string>& correlation_metrics();

// Per-work value of a named metric; nullopt when undefined for that work.
std::optional<double> work_metric(const WorkSample& work, std::string_view metric);

// Mean and median against every metric column. Pairs that cannot be computed
// come back with r absent and a note.
std::vector<CorrelationResult> correlation_report(std::span<const WorkSample> works, double alpha = 0.001);

nlohmann::ordered_json to_json(const CorrelationResult& result);
void write_correlation_csv(std::ostream& out, std::span<const CorrelationResult> rows);

enum class Polarity { MostPositive, MostNegative };

struct KeywordCount {
    std::string stem;
    int count = 0;
};

// Picks ceil(p% of scored comments) by score extreme (boundary ties
// included), counts keywords of the matching sign that were not negated, and
// returns the top k stems with ties at the cut.
std::vector<KeywordCount> top_percent_keywords(std::span<const sentiment::CommentScore> scores, double percent,
                                               Polarity polarity, int k);

// "unique(3), creative(3), outstand(3)"
std::string format_keywords(std::span<const KeywordCount> keywords);

struct SchemeDelta {
    std::string work_id;
    std::optional<double> mean;
    std::optional<double> median;
    std::optional<double> stddev;
};

struct SchemeDeltaReport {
    std::vector<SchemeDelta> works;
    double mean_delta = 0.0;
    double median_delta = 0.0;
    double stddev_delta = 0.0;

    nlohmann::ordered_json to_json() const;
};

// simple minus complex per work; averages skip works lacking a side.
// Throws MismatchedWorks.
SchemeDeltaReport scheme_delta_report(std::span<const grading::WorkAggregate> simple,
                                      std::span<const grading::WorkAggregate> complex);

}  // namespace crowdgrade::analytics
