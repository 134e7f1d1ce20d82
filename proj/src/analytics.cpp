#include "crowdgrade/analytics.hpp"

#include "crowdgrade/aspects.hpp"
#include "crowdgrade/csv.hpp"
#include "crowdgrade/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>

namespace crowdgrade::analytics {

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DegenerateInput("pearson: vectors differ in length");
    if (x.size() < 3) throw DegenerateInput("pearson: need at least 3 points");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw DegenerateInput("pearson: constant vector");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIter = 500;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0 && b > 0.0)) throw InvalidArgument("incomplete beta needs a, b > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_tailed_p(double t, double df) {
    if (!(df > 0.0)) throw InvalidArgument("degrees of freedom must be positive");
    const double t2 = t * t;
    return regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t2));
}

double student_t_quantile(double df, double alpha) {
    if (!(df >= 1.0)) throw InvalidArgument("degrees of freedom must be at least 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
    double lo = 0.0, hi = 1.0;
    while (student_t_two_tailed_p(hi, df) > alpha) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) break;
    }
    // p is decreasing in t.
    while (hi - lo > 1e-9 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        if (student_t_two_tailed_p(mid, df) > alpha) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

double critical_r(double df, double alpha) {
    const double t = student_t_quantile(df, alpha);
    return t / std::sqrt(df + t * t);
}

const std::vector<std::string>& correlation_metrics() {
    static const std::vector<std::string> names{
        "form_score", "stddev",           "negativity", "tone",  "purity",           "neg_keywords",
        "negate_words", "adverbs",        "percent_reliable", "keywords", "words", "words_per_sentence",
    };
    return names;
}

namespace {

template <typename Field>
std::optional<double> comment_mean(const WorkSample& w, Field field) {
    double sum = 0.0;
    int n = 0;
    for (const auto& c : w.comments) {
        const std::optional<double> v = field(c);
        if (!v) continue;
        sum += *v;
        ++n;
    }
    if (n == 0) return std::nullopt;
    return sum / n;
}

}  // namespace

std::optional<double> work_metric(const WorkSample& w, std::string_view metric) {
    using sentiment::CommentScore;
    const auto& a = w.aggregate;
    if (metric == "mean") return a.mean;
    if (metric == "median") return a.median;
    if (metric == "form_score") return a.analytic_score;
    if (metric == "stddev") return a.stddev;
    if (metric == "percent_reliable") return a.percent_reliable;
    if (metric == "negativity") return comment_mean(w, [](const CommentScore& c) -> std::optional<double> { return c.negativity; });
    if (metric == "tone") return comment_mean(w, [](const CommentScore& c) -> std::optional<double> { return c.tone; });
    if (metric == "purity") return comment_mean(w, [](const CommentScore& c) { return c.purity; });
    if (metric == "neg_keywords")
        return comment_mean(w, [](const CommentScore& c) -> std::optional<double> { return c.neg_keywords; });
    if (metric == "negate_words")
        return comment_mean(w, [](const CommentScore& c) -> std::optional<double> { return c.negate_words; });
    if (metric == "adverbs") return comment_mean(w, [](const CommentScore& c) -> std::optional<double> { return c.adverbs; });
    if (metric == "keywords")
        return comment_mean(w, [](const CommentScore& c) -> std::optional<double> { return c.keywords; });
    if (metric == "words") return comment_mean(w, [](const CommentScore& c) -> std::optional<double> { return c.length; });
    if (metric == "words_per_sentence")
        return comment_mean(w, [](const CommentScore& c) -> std::optional<double> { return c.words_per_sentence; });
    throw InvalidArgument("unknown metric '" + std::string(metric) + "'");
}

std::vector<CorrelationResult> correlation_report(std::span<const WorkSample> works, double alpha) {
    std::vector<CorrelationResult> out;
    for (const char* lhs : {"mean", "median"}) {
        for (const auto& rhs : correlation_metrics()) {
            CorrelationResult row;
            row.x_name = lhs;
            row.y_name = rhs;
            row.alpha = alpha;
            std::vector<double> xs, ys;
            for (const auto& w : works) {
                const auto x = work_metric(w, lhs);
                const auto y = work_metric(w, rhs);
                if (!x || !y) continue;
                xs.push_back(*x);
                ys.push_back(*y);
            }
            row.n = static_cast<int>(xs.size());
            row.df = std::max(0, row.n - 2);
            try {
                row.r = pearson(xs, ys);
                row.critical_value = critical_r(row.df, alpha);
                row.significant = std::abs(*row.r) >= row.critical_value;
            } catch (const DegenerateInput& e) {
                row.r.reset();
                row.note = e.what();
            }
            out.push_back(std::move(row));
        }
    }
    return out;
}

nlohmann::ordered_json to_json(const CorrelationResult& r) {
    return {{"x", r.x_name},
            {"y", r.y_name},
            {"r", r.r ? nlohmann::ordered_json(*r.r) : nlohmann::ordered_json(nullptr)},
            {"n", r.n},
            {"df", r.df},
            {"alpha", r.alpha},
            {"critical_value", r.critical_value},
            {"significant", r.significant},
            {"note", r.note}};
}

void write_correlation_csv(std::ostream& out, std::span<const CorrelationResult> rows) {
    out << "x,y,r,n,df,alpha,critical_value,significant,note\n";
    for (const auto& r : rows)
        out << csv::format_row({r.x_name, r.y_name, r.r ? aspects::format_number(*r.r) : "", std::to_string(r.n),
                                std::to_string(r.df), aspects::format_number(r.alpha),
                                aspects::format_number(r.critical_value), r.significant ? "true" : "false", r.note})
            << '\n';
}

std::vector<KeywordCount> top_percent_keywords(std::span<const sentiment::CommentScore> scores, double percent,
                                               Polarity polarity, int k) {
    if (!(percent > 0.0 && percent <= 100.0)) throw InvalidArgument("percent must lie in (0, 100]");
    if (k < 1) throw InvalidArgument("k must be at least 1");

    std::vector<const sentiment::CommentScore*> scored;
    for (const auto& s : scores)
        if (s.score) scored.push_back(&s);
    if (scored.empty()) return {};

    const bool positive = polarity == Polarity::MostPositive;
    std::sort(scored.begin(), scored.end(), [&](const auto* a, const auto* b) {
        return positive ? *a->score > *b->score : *a->score < *b->score;
    });
    const auto take = static_cast<std::size_t>(std::ceil(percent / 100.0 * static_cast<double>(scored.size()) - 1e-9));
    const double boundary = *scored[std::clamp<std::size_t>(take, 1, scored.size()) - 1]->score;

    std::map<std::string, int> counts;
    for (const auto* s : scored) {
        if (positive ? *s->score < boundary : *s->score > boundary) break;
        for (const auto& c : s->contributions) {
            if (c.mechanism != sentiment::Mechanism::Plain) continue;
            if (positive ? c.weight > 0.0 : c.weight < 0.0) ++counts[c.stem];
        }
    }

    std::vector<KeywordCount> ranked;
    for (auto& [stem, n] : counts) ranked.push_back({stem, n});
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.count > b.count; });
    if (ranked.size() > static_cast<std::size_t>(k)) {
        const int cut = ranked[k - 1].count;
        std::size_t keep = k;
        while (keep < ranked.size() && ranked[keep].count == cut) ++keep;
        ranked.resize(keep);
    }
    return ranked;
}

std::string format_keywords(std::span<const KeywordCount> keywords) {
    std::string out;
    for (const auto& kw : keywords) {
        if (!out.empty()) out += ", ";
        out += kw.stem + "(" + std::to_string(kw.count) + ")";
    }
    return out;
}

nlohmann::ordered_json SchemeDeltaReport::to_json() const {
    using ojson = nlohmann::ordered_json;
    auto opt = [](const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); };
    ojson rows = ojson::array();
    for (const auto& w : works)
        rows.push_back({{"work_id", w.work_id}, {"mean", opt(w.mean)}, {"median", opt(w.median)}, {"stddev", opt(w.stddev)}});
    return {{"works", std::move(rows)},
            {"mean_delta", mean_delta},
            {"median_delta", median_delta},
            {"stddev_delta", stddev_delta}};
}

SchemeDeltaReport scheme_delta_report(std::span<const grading::WorkAggregate> simple,
                                      std::span<const grading::WorkAggregate> complex) {
    std::map<std::string_view, const grading::WorkAggregate*> by_id;
    for (const auto& w : complex) by_id[w.work_id] = &w;
    if (by_id.size() != simple.size()) throw MismatchedWorks("schemes cover different works");

    SchemeDeltaReport report;
    double sums[3] = {0, 0, 0};
    int counts[3] = {0, 0, 0};
    auto diff = [](const std::optional<double>& a, const std::optional<double>& b) -> std::optional<double> {
        if (!a || !b) return std::nullopt;
        return *a - *b;
    };
    for (const auto& s : simple) {
        const auto it = by_id.find(s.work_id);
        if (it == by_id.end()) throw MismatchedWorks("work '" + s.work_id + "' missing from the complex scheme");
        const auto& c = *it->second;
        SchemeDelta d{s.work_id, diff(s.mean, c.mean), diff(s.median, c.median), diff(s.stddev, c.stddev)};
        const std::optional<double>* fields[3] = {&d.mean, &d.median, &d.stddev};
        for (int i = 0; i < 3; ++i)
            if (*fields[i]) {
                sums[i] += **fields[i];
                ++counts[i];
            }
        report.works.push_back(std::move(d));
    }
    report.mean_delta = counts[0] ? sums[0] / counts[0] : 0.0;
    report.median_delta = counts[1] ? sums[1] / counts[1] : 0.0;
    report.stddev_delta = counts[2] ? sums[2] / counts[2] : 0.0;
    return report;
}

}  // namespace crowdgrade::analytics
