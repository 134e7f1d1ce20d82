#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crowdgrade/errors.hpp"
#include "crowdgrade/grading.hpp"
#include "test_support.hpp"

#include <random>

using namespace crowdgrade;
using namespace crowdgrade::grading;
using sentiment::CommentScore;

namespace {

CommentScore scored(double score, double tone = 1.0, int keywords = 5, double info = 3.0, bool reliable = true) {
    CommentScore s;
    s.score = score;
    s.tone = tone;
    s.keywords = keywords;
    s.info = info;
    s.is_default = false;
    s.reliable = reliable;
    return s;
}

CommentScore default_comment() { return CommentScore{}; }

corpus::ReviewFormSpec form() {
    corpus::ReviewFormSpec f;
    f.questions = {{"Q1", Section::Overall, "overall", {{"a1", 4.3}, {"a2", 2.0}, {"a3", 4.0}}},
                   {"Q2", Section::Technical, "tech", {{"a1", 4.3}, {"a2", 2.0}, {"a3", 4.0}}},
                   {"Q3", Section::Personalization, "pers", {{"a1", 4.3}, {"a2", 2.0}, {"a3", 4.0}}}};
    return f;
}

corpus::ReviewRecord record(std::string reviewer, std::string answer) {
    return {"w1", std::move(reviewer), {{"Q1", answer}, {"Q2", answer}, {"Q3", answer}}, "", std::nullopt};
}

}  // namespace

TEST_CASE("threshold defaults validate") {
    ScoringThresholds t;
    CHECK_NOTHROW(t.validate());
    t.section_weights.sentiment = 0.5;
    CHECK_THROWS_AS(t.validate(), InvalidArgument);
    t = {};
    t.complex_negative_low_info_weight = 0.0;
    CHECK_THROWS_AS(t.validate(), InvalidArgument);
}

TEST_CASE("section and scheme names") {
    CHECK(section_from_string("technical") == Section::Technical);
    CHECK(!section_from_string("style"));
    CHECK(scheme_from_string("complex") == Scheme::Complex);
    CHECK_THROWS_AS(scheme_from_string("fancy"), InvalidArgument);
}

TEST_CASE("analytic grade of constant answers") {
    const std::vector<corpus::ReviewRecord> recs{record("r1", "a1")};
    const auto g = grade_analytic(recs, form(), {});
    for (auto s : kAnalyticSections) CHECK(g.sections.at(s).mean == doctest::Approx(4.3));
    CHECK(*g.score == doctest::Approx(4.3));
}

TEST_CASE("analytic grade across two reviews") {
    const std::vector<corpus::ReviewRecord> recs{record("r1", "a2"), record("r2", "a3")};
    const auto g = grade_analytic(recs, form(), {});
    CHECK(g.sections.at(Section::Technical).mean == doctest::Approx(3.0));
    CHECK(g.sections.at(Section::Technical).median == doctest::Approx(3.0));
}

TEST_CASE("unknown answers name the review") {
    const std::vector<corpus::ReviewRecord> recs{record("r7", "a9")};
    try {
        grade_analytic(recs, form(), {});
        FAIL("expected UnknownAnswer");
    } catch (const UnknownAnswer& e) {
        CHECK(std::string(e.what()).find("r7") != std::string::npos);
    }
}

TEST_CASE("simple aggregate statistics") {
    const std::vector<CommentScore> three{scored(2.0), scored(3.0), scored(4.0), default_comment()};
    const auto s = aggregate_simple(three);
    CHECK(s.mean == doctest::Approx(3.0));
    CHECK(s.median == doctest::Approx(3.0));
    CHECK(s.stddev == doctest::Approx(std::sqrt(2.0 / 3.0)));
    CHECK(s.stddev == doctest::Approx(0.8165).epsilon(1e-4));
    CHECK(s.n_scored == 3);
    CHECK(s.n_default == 1);
    CHECK(s.n_reviews == 4);

    const std::vector<CommentScore> one{scored(3.2)};
    const auto single = aggregate_simple(one);
    CHECK(single.mean == doctest::Approx(3.2));
    CHECK(single.median == doctest::Approx(3.2));
    CHECK(single.stddev == 0.0);

    const std::vector<CommentScore> none{default_comment(), default_comment()};
    CHECK_THROWS_AS(aggregate_simple(none), AllDefault);
}

TEST_CASE("complex weighting") {
    ScoringThresholds t;
    t.complex_min_keywords = 2;
    const std::vector<CommentScore> pair{scored(4.0), scored(0.0, -1.0, 2, 1.0, false)};
    CHECK(aggregate_complex(pair, t).mean == doctest::Approx(3.2));

    // With the default threshold of 3 the two-keyword comment is excluded.
    const auto d = aggregate_complex(pair, ScoringThresholds{});
    CHECK(d.mean == doctest::Approx(4.0));
    CHECK(d.n_default == 1);

    CHECK(*complex_weight(scored(3.0, 0.5, 3, 1.0), {}) == 0.75);
    CHECK(*complex_weight(scored(3.0, 0.5, 5, 2.0), {}) == 1.0);
    CHECK(*complex_weight(scored(1.0, -0.5, 3, 2.5), {}) == 0.25);
    CHECK(*complex_weight(scored(1.0, -0.5, 4, 2.5), {}) == 1.0);
    CHECK_FALSE(complex_weight(default_comment(), {}));
}

TEST_CASE("one low-information negative counts a quarter") {
    ScoringThresholds t;
    std::vector<CommentScore> many;
    for (int i = 0; i < 9; ++i) many.push_back(scored(3.0 + 0.1 * i));
    many.push_back(scored(0.5, -1.0, 3, 1.0, false));
    double num = 0, den = 0;
    for (int i = 0; i < 9; ++i) num += 3.0 + 0.1 * i, den += 1.0;
    num += 0.25 * 0.5, den += 0.25;
    CHECK(aggregate_complex(many, t).mean == doctest::Approx(num / den).epsilon(1e-12));
}

TEST_CASE("schemes agree when every comment clears the thresholds") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> score(0.0, 4.3);
    for (int iter = 0; iter < 500; ++iter) {
        std::vector<CommentScore> xs;
        for (int k = 1 + rng() % 20; k > 0; --k) xs.push_back(scored(score(rng), 0.5 + (rng() % 5), 4 + rng() % 5, 2.0 + (rng() % 4)));
        const auto a = aggregate_simple(xs);
        const auto b = aggregate_complex(xs, {});
        CHECK(a.mean == b.mean);
        CHECK(a.median == b.median);
        CHECK(a.stddev == b.stddev);
    }
}

TEST_CASE("crowd stability") {
    std::mt19937 rng(32);
    std::uniform_real_distribution<double> score(0.0, 4.3);
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<CommentScore> xs;
        for (int k = 0; k < 30; ++k) xs.push_back(scored(score(rng)));
        const auto base = aggregate_simple(xs);

        auto doubled = xs;
        doubled.insert(doubled.end(), xs.begin(), xs.end());
        const auto d = aggregate_simple(doubled);
        CHECK(d.mean == doctest::Approx(base.mean).epsilon(1e-12));
        CHECK(d.median == doctest::Approx(base.median).epsilon(1e-12));

        auto attacked = xs;
        attacked.push_back(scored(0.0));
        CHECK(base.mean - aggregate_simple(attacked).mean <= 4.3 / 30 + 1e-12);

        auto with_default = xs;
        with_default.insert(with_default.begin() + rng() % xs.size(), default_comment());
        const auto w = aggregate_simple(with_default);
        CHECK(w.mean == base.mean);
        CHECK(w.median == base.median);
        CHECK(w.stddev == base.stddev);

        CHECK(base.median >= 0.0);
        double lo = 5, hi = -1;
        for (const auto& c : xs) lo = std::min(lo, *c.score), hi = std::max(hi, *c.score);
        CHECK((lo <= base.median && base.median <= hi));
    }
}

TEST_CASE("weighted stats") {
    const std::vector<double> v{1.0, 3.0};
    const std::vector<double> w{1.0, 3.0};
    const auto s = weighted_stats(v, w);
    CHECK(s.mean == doctest::Approx(2.5));
    CHECK(s.median == doctest::Approx(2.0));
    CHECK(s.stddev == doctest::Approx(std::sqrt((1.0 * 2.25 + 3.0 * 0.25) / 4.0)));
    CHECK(median({5.0, 1.0, 3.0}) == 3.0);
}

TEST_CASE("composition") {
    SectionWeights half{0.5 / 3, 0.5 / 3, 0.5 / 3, 0.5};
    const auto c = compose_final(3.3, 3.0, half, 4.3);
    CHECK(c.final_grade == doctest::Approx(3.15));
    CHECK(c.dif == doctest::Approx(-0.3));

    SectionWeights none{1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0};
    CHECK(compose_final(2.7, 4.0, none, 4.3).final_grade == doctest::Approx(2.7));
    const auto same = compose_final(3.1, 3.1, {}, 4.3);
    CHECK(same.final_grade == doctest::Approx(3.1));
    CHECK(same.dif == 0.0);
}

TEST_CASE("work aggregate") {
    const std::vector<corpus::ReviewRecord> recs{record("r1", "a2"), record("r2", "a3")};
    const auto analytic = grade_analytic(recs, form(), {});
    const std::vector<CommentScore> scores{scored(2.0), scored(4.0), default_comment()};
    const auto w = build_work_aggregate("w1", Scheme::Simple, scores, analytic, {});
    CHECK(w.n_scored + w.n_default == w.n_reviews);
    CHECK(*w.sentiment_score == doctest::Approx(3.0));
    CHECK(*w.final_grade == doctest::Approx(3.0));
    CHECK(*w.dif == doctest::Approx(0.0));
    CHECK(w.stddev_alert(4.3));
    const auto j = w.to_json(4.3);
    CHECK(j["scheme"] == "simple");
    CHECK(j["stddev_alert"] == true);
    CHECK(j["analytic_sections"]["Technical"]["mean"] == doctest::Approx(3.0));

    const std::vector<CommentScore> defaults{default_comment()};
    const auto empty = build_work_aggregate("w2", Scheme::Simple, defaults, analytic, {});
    CHECK(empty.needs_attention);
    CHECK_FALSE(empty.mean);
    CHECK(*empty.final_grade == doctest::Approx(3.0));
}

TEST_CASE("instructor adjustment") {
    const std::vector<CommentScore> scores{scored(2.1)};
    std::vector<WorkAggregate> works{build_work_aggregate("w1", Scheme::Simple, scores, {}, {})};
    audit::DecisionLog log;
    REQUIRE(*works[0].final_grade == doctest::Approx(2.1));

    const auto& w = apply_instructor_adjustment(works, "w1", 3.0, "reading off the slides penalty inappropriate", 4.3, log);
    CHECK(*w.final_grade == 3.0);
    CHECK(w.adjusted);
    REQUIRE(log.size() == 1);
    const auto g = std::get<audit::GradeAdjustment>(log.snapshot()[0].payload);
    CHECK(*g.old_score == doctest::Approx(2.1));
    CHECK(g.new_score == 3.0);

    apply_instructor_adjustment(works, "w1", 3.0, "same again", 4.3, log);
    CHECK(log.size() == 2);
    CHECK(*works[0].final_grade == 3.0);

    CHECK_THROWS_AS(apply_instructor_adjustment(works, "w1", 9.9, "x", 4.3, log), InvalidArgument);
    CHECK_THROWS_AS(apply_instructor_adjustment(works, "w1", 2.0, "  ", 4.3, log), InvalidArgument);
    CHECK_THROWS_AS(apply_instructor_adjustment(works, "w9", 2.0, "x", 4.3, log), UnknownWork);
    CHECK(log.size() == 2);

    std::vector<WorkAggregate> fresh{build_work_aggregate("w1", Scheme::Simple, scores, {}, {})};
    replay_adjustments(fresh, log.snapshot());
    CHECK(*fresh[0].final_grade == 3.0);
    CHECK(fresh[0].adjusted);
}
