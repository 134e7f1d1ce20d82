#include "crowdgrade/grading.hpp"

#include "crowdgrade/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace crowdgrade::grading {

std::string_view to_string(Section section) {
    switch (section) {
        case Section::Overall: return "Overall";
        case Section::Technical: return "Technical";
        case Section::Personalization: return "Personalization";
        case Section::Sentiment: return "Sentiment";
    }
    return "Overall";
}

std::optional<Section> section_from_string(std::string_view name) {
    for (auto s : kAllSections) {
        const auto canon = to_string(s);
        if (name.size() == canon.size() &&
            std::equal(name.begin(), name.end(), canon.begin(),
                       [](char a, char b) { return std::tolower((unsigned char)a) == std::tolower((unsigned char)b); }))
            return s;
    }
    return std::nullopt;
}

double SectionWeights::operator[](Section s) const {
    switch (s) {
        case Section::Overall: return overall;
        case Section::Technical: return technical;
        case Section::Personalization: return personalization;
        case Section::Sentiment: return sentiment;
    }
    return 0.0;
}

double& SectionWeights::operator[](Section s) {
    switch (s) {
        case Section::Overall: return overall;
        case Section::Technical: return technical;
        case Section::Personalization: return personalization;
        case Section::Sentiment: break;
    }
    return sentiment;
}

void ScoringThresholds::validate() const {
    if (min_keywords < 0 || complex_min_keywords < 0 || reliable_keywords < 0 || neg_low_info_keywords < 0)
        throw InvalidArgument("keyword thresholds must be non-negative");
    if (!(complex_negative_low_info_weight > 0.0 && complex_negative_low_info_weight <= 1.0) ||
        !(complex_positive_low_info_weight > 0.0 && complex_positive_low_info_weight <= 1.0))
        throw InvalidArgument("complex weights must lie in (0, 1]");
    if (!(pos_low_info >= 0.0)) throw InvalidArgument("pos_low_info must be non-negative");
    if (!(grade_max > 0.0)) throw InvalidArgument("grade_max must be positive");
    double sum = 0.0;
    for (auto s : kAllSections) {
        if (!(section_weights[s] >= 0.0)) throw InvalidArgument("section weights must be non-negative");
        sum += section_weights[s];
    }
    if (std::abs(sum - 1.0) > 1e-9) throw InvalidArgument("section weights must sum to 1");
}

std::string_view to_string(Scheme scheme) { return scheme == Scheme::Simple ? "simple" : "complex"; }

Scheme scheme_from_string(std::string_view name) {
    if (name == "simple") return Scheme::Simple;
    if (name == "complex") return Scheme::Complex;
    throw InvalidArgument("unknown scheme '" + std::string(name) + "'");
}

double analytic_weight(const SectionWeights& weights, Section section) {
    if (section == Section::Sentiment) return 0.0;
    double total = 0.0;
    for (auto s : kAnalyticSections) total += weights[s];
    if (total <= 0.0) return 1.0 / static_cast<double>(kAnalyticSections.size());
    return weights[section] / total;
}

namespace {

std::optional<double> weighted_section_score(const std::map<Section, double>& values, const SectionWeights& weights) {
    double num = 0.0, den = 0.0;
    for (const auto& [section, value] : values) {
        const double w = analytic_weight(weights, section);
        num += w * value;
        den += w;
    }
    if (values.empty()) return std::nullopt;
    if (den <= 0.0) {
        double sum = 0.0;
        for (const auto& [section, value] : values) sum += value;
        return sum / static_cast<double>(values.size());
    }
    return num / den;
}

}  // namespace

ReviewAnalytic grade_review(const corpus::ReviewRecord& record, const corpus::ReviewFormSpec& form,
                            const SectionWeights& weights) {
    std::map<Section, std::pair<double, int>> sums;
    for (const auto& [qid, aid] : record.analytic_responses) {
        const auto* q = form.find(qid);
        if (!q) throw UnknownAnswer("review " + record.reviewer_id + " of " + record.work_id + ": unknown question '" + qid + "'");
        const auto it = q->answers.find(aid);
        if (it == q->answers.end())
            throw UnknownAnswer("review " + record.reviewer_id + " of " + record.work_id + ": answer '" + aid +
                                "' is not defined for question '" + qid + "'");
        auto& [sum, n] = sums[q->section];
        sum += it->second;
        ++n;
    }
    ReviewAnalytic out;
    for (const auto& [section, acc] : sums) out.section_means[section] = acc.first / acc.second;
    out.score = weighted_section_score(out.section_means, weights);
    return out;
}

double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const auto n = values.size();
    return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

AnalyticGrade grade_analytic(std::span<const corpus::ReviewRecord> records, const corpus::ReviewFormSpec& form,
                             const SectionWeights& weights) {
    std::map<Section, std::vector<double>> per_section;
    for (const auto& rec : records)
        for (const auto& [section, value] : grade_review(rec, form, weights).section_means)
            per_section[section].push_back(value);

    AnalyticGrade out;
    std::map<Section, double> means;
    for (auto& [section, values] : per_section) {
        const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
        out.sections[section] = SectionStats{mean, median(values)};
        means[section] = mean;
    }
    out.score = weighted_section_score(means, weights);
    return out;
}

WeightedStats weighted_stats(std::span<const double> values, std::span<const double> weights) {
    WeightedStats out;
    if (values.empty()) return out;
    double wsum = 0.0, num = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        wsum += weights[i];
        num += weights[i] * values[i];
    }
    out.mean = num / wsum;
    double var = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = values[i] - out.mean;
        var += weights[i] * d * d;
    }
    out.stddev = std::sqrt(var / wsum);
    out.median = median(std::vector<double>(values.begin(), values.end()));
    return out;
}

std::optional<double> complex_weight(const sentiment::CommentScore& score, const ScoringThresholds& t) {
    if (score.is_default || !score.score || score.keywords < t.complex_min_keywords) return std::nullopt;
    if (score.tone < 0.0 && score.keywords < t.neg_low_info_keywords) return t.complex_negative_low_info_weight;
    if (score.tone >= 0.0 && score.info < t.pos_low_info) return t.complex_positive_low_info_weight;
    return 1.0;
}

namespace {

template <typename WeightOf>
CrowdStats aggregate_with(std::span<const sentiment::CommentScore> scores, WeightOf weight_of) {
    CrowdStats out;
    out.n_reviews = static_cast<int>(scores.size());
    std::vector<double> values, weights;
    int reliable = 0;
    for (const auto& s : scores) {
        if (s.reliable) ++reliable;
        const std::optional<double> w = weight_of(s);
        if (!w) continue;
        values.push_back(*s.score);
        weights.push_back(*w);
    }
    out.n_scored = static_cast<int>(values.size());
    out.n_default = out.n_reviews - out.n_scored;
    out.percent_reliable = out.n_reviews == 0 ? 0.0 : static_cast<double>(reliable) / out.n_reviews;
    if (values.empty()) throw AllDefault("no comment could be scored");
    const auto stats = weighted_stats(values, weights);
    out.mean = stats.mean;
    out.median = stats.median;
    out.stddev = stats.stddev;
    return out;
}

}  // namespace

CrowdStats aggregate_simple(std::span<const sentiment::CommentScore> scores) {
    return aggregate_with(scores, [](const sentiment::CommentScore& s) -> std::optional<double> {
        if (s.is_default || !s.score) return std::nullopt;
        return 1.0;
    });
}

CrowdStats aggregate_complex(std::span<const sentiment::CommentScore> scores, const ScoringThresholds& t) {
    return aggregate_with(scores, [&](const sentiment::CommentScore& s) { return complex_weight(s, t); });
}

Composition compose_final(double analytic_score, double sentiment_score, const SectionWeights& weights,
                          double grade_max) {
    const double w = weights.sentiment;
    Composition out;
    out.final_grade = std::clamp(w * sentiment_score + (1.0 - w) * analytic_score, 0.0, grade_max);
    out.dif = sentiment_score - analytic_score;
    return out;
}

WorkAggregate build_work_aggregate(std::string work_id, Scheme scheme,
                                   std::span<const sentiment::CommentScore> scores, const AnalyticGrade& analytic,
                                   const ScoringThresholds& t) {
    WorkAggregate w;
    w.work_id = std::move(work_id);
    w.scheme = scheme;
    w.analytic_sections = analytic.sections;
    w.analytic_score = analytic.score;
    for (const auto& s : scores) w.flags_count += static_cast<int>(s.flags.size());
    try {
        const auto stats = scheme == Scheme::Simple ? aggregate_simple(scores) : aggregate_complex(scores, t);
        w.n_reviews = stats.n_reviews;
        w.n_scored = stats.n_scored;
        w.n_default = stats.n_default;
        w.percent_reliable = stats.percent_reliable;
        w.mean = stats.mean;
        w.median = stats.median;
        w.stddev = stats.stddev;
        w.sentiment_score = stats.mean;
    } catch (const AllDefault&) {
        w.n_reviews = static_cast<int>(scores.size());
        w.n_default = w.n_reviews;
        const auto reliable = std::count_if(scores.begin(), scores.end(), [](const auto& s) { return s.reliable; });
        w.percent_reliable = w.n_reviews == 0 ? 0.0 : static_cast<double>(reliable) / w.n_reviews;
        w.needs_attention = true;
    }
    if (w.sentiment_score && w.analytic_score) {
        const auto c = compose_final(*w.analytic_score, *w.sentiment_score, t.section_weights, t.grade_max);
        w.final_grade = c.final_grade;
        w.dif = c.dif;
    } else if (w.sentiment_score) {
        w.final_grade = std::clamp(*w.sentiment_score, 0.0, t.grade_max);
    } else if (w.analytic_score) {
        w.final_grade = std::clamp(*w.analytic_score, 0.0, t.grade_max);
    }
    return w;
}

nlohmann::ordered_json WorkAggregate::to_json(double grade_max) const {
    using ojson = nlohmann::ordered_json;
    auto opt = [](const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); };
    ojson sections = ojson::object();
    for (const auto& [section, stats] : analytic_sections)
        sections[std::string(grading::to_string(section))] = {{"mean", stats.mean}, {"median", stats.median}};
    return {{"work_id", work_id},
            {"scheme", std::string(to_string(scheme))},
            {"n_reviews", n_reviews},
            {"n_scored", n_scored},
            {"n_default", n_default},
            {"percent_reliable", percent_reliable},
            {"mean", opt(mean)},
            {"median", opt(median)},
            {"stddev", opt(stddev)},
            {"stddev_alert", stddev_alert(grade_max)},
            {"analytic_sections", std::move(sections)},
            {"analytic_score", opt(analytic_score)},
            {"sentiment_score", opt(sentiment_score)},
            {"final_grade", opt(final_grade)},
            {"dif", opt(dif)},
            {"flags_count", flags_count},
            {"needs_attention", needs_attention},
            {"adjusted", adjusted}};
}

const WorkAggregate& apply_instructor_adjustment(std::vector<WorkAggregate>& works, std::string_view work_id,
                                                 double new_score, const std::string& reason, double grade_max,
                                                 audit::DecisionLog& log) {
    const auto it = std::find_if(works.begin(), works.end(), [&](const WorkAggregate& w) { return w.work_id == work_id; });
    if (it == works.end()) throw UnknownWork("unknown work '" + std::string(work_id) + "'");
    if (!(new_score >= 0.0 && new_score <= grade_max))
        throw InvalidArgument("score must lie in [0, " + std::to_string(grade_max) + "]");
    if (reason.find_first_not_of(" \t\r\n") == std::string::npos) throw InvalidArgument("reason must not be empty");
    log.append(audit::GradeAdjustment{it->work_id, it->final_grade, new_score, reason});
    it->final_grade = new_score;
    it->adjusted = true;
    return *it;
}

void replay_adjustments(std::vector<WorkAggregate>& works, const std::vector<audit::Entry>& entries) {
    for (const auto& adj : audit::entries_of<audit::GradeAdjustment>(entries)) {
        const auto it =
            std::find_if(works.begin(), works.end(), [&](const WorkAggregate& w) { return w.work_id == adj.work_id; });
        if (it == works.end()) continue;
        it->final_grade = adj.new_score;
        it->adjusted = true;
    }
}

}  // namespace crowdgrade::grading
