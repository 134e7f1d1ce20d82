#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crowdgrade/aspects.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <random>
#include <sstream>

using namespace crowdgrade;
using namespace crowdgrade::aspects;

namespace {

Extraction extract(const std::string& text, std::size_t window = 4, const std::string& ref = "c1") {
    const auto a = testsupport::analyze(text);
    return extract_aspects(text, a.tokens, a.score.contributions, window, ref);
}

corpus::ReviewFormSpec form_with(std::initializer_list<const char*> nouns) {
    corpus::ReviewFormSpec f;
    for (const char* n : nouns) f.form_nouns.insert(n);
    return f;
}

const std::vector<std::string> kGoldenCorpus{
    "The presentation is lucid and provided examples.",
    "Presentations were dry and short.",
    "Clear slides.",
    "The slides were dry.",
    "Useful diagram.",
    "The diagram was clear.",
};

std::vector<AspectMention> golden_mentions() {
    std::vector<AspectMention> all;
    for (std::size_t i = 0; i < kGoldenCorpus.size(); ++i) {
        auto ex = extract(kGoldenCorpus[i], 4, "c" + std::to_string(i + 1));
        all.insert(all.end(), ex.mentions.begin(), ex.mentions.end());
    }
    return all;
}

}  // namespace

TEST_CASE("adjective paired with nearby nouns") {
    const auto ex = extract("the presentation is lucid and provided examples");
    REQUIRE(ex.mentions.size() == 2);
    const auto& m = ex.mentions[0];
    CHECK(m.noun_stem == "presentation");
    CHECK(m.adjective_stem == "lucid");
    CHECK(m.adjective_weight == doctest::Approx(0.7));
    CHECK(m.adjective_pos == text::Pos::JJ);
    CHECK(m.context == "the presentation is lucid and provided examples");
    CHECK(m.review_ref == "c1");
    CHECK(ex.mentions[1].noun_stem == "example");
}

TEST_CASE("competing sentiments on one noun") {
    const auto ex = extract("presentations were informative but dry");
    REQUIRE(ex.mentions.size() == 2);
    CHECK(ex.mentions[0].noun_stem == "presentation");
    CHECK(ex.mentions[0].adjective_weight > 0);
    CHECK(ex.mentions[1].noun_stem == "presentation");
    CHECK(ex.mentions[1].adjective_weight < 0);
}

TEST_CASE("orphans and sentence limits") {
    const auto ex = extract("Really lucid!");
    CHECK(ex.mentions.empty());
    REQUIRE(ex.orphans.size() == 1);
    CHECK(ex.orphans[0].adjective_stem == "lucid");

    // The noun sits in the previous sentence.
    CHECK(extract("Slides. Lucid!").mentions.empty());
    // Outside the window.
    CHECK(extract("slides and the other things we saw were lucid", 2).mentions.empty());
}

TEST_CASE("negated-away adjectives are skipped") {
    const auto ex = extract("the slides were not terrible");
    CHECK(ex.mentions.empty());
    const auto flipped = extract("the slides were not clear");
    REQUIRE(flipped.mentions.size() == 1);
    CHECK(flipped.mentions[0].adjective_weight == doctest::Approx(-0.6));
}

TEST_CASE("mention invariants hold across a varied corpus") {
    const std::vector<std::string> texts{"The lucid talk had clear slides and a useful demo.",
                                         "Dry examples, hard topic, but a great speaker!",
                                         "Not clear; the diagram was missing.", "Boring. Very boring talk."};
    for (const auto& t : texts) {
        const auto a = testsupport::analyze(t);
        for (const auto& m : extract_aspects(t, a.tokens, a.score.contributions, 4, "x").mentions) {
            CHECK(text::is_adjective(m.adjective_pos));
            CHECK(m.adjective_weight != 0.0);
            CHECK(std::abs(m.adjective_weight) <= 1.0);
            CHECK(t.find(m.context) != std::string::npos);
        }
    }
}

TEST_CASE("candidate thresholds and parroting") {
    const auto mentions = golden_mentions();
    const auto form = form_with({"presentation", "slide", "delivery"});
    const auto cands = propose_candidates(mentions, 2, 1.0, form);
    REQUIRE(cands.size() == 3);
    CHECK(cands[0].noun_stem == "presentation");
    CHECK(cands[0].occurrences == 3);
    CHECK(cands[0].total_absolute_sentiment == doctest::Approx(1.6));
    CHECK(cands[0].net_sentiment == doctest::Approx(-0.2));
    CHECK(cands[0].is_parrot_source);
    CHECK(cands[1].noun_stem == "diagram");
    CHECK_FALSE(cands[1].is_parrot_source);
    CHECK(cands[2].noun_stem == "slide");
    for (const auto& c : cands) {
        CHECK(c.occurrences >= 2);
        CHECK(c.status == Status::Proposed);
        CHECK(c.sample_contexts.size() <= kMaxSampleContexts);
    }

    // "example" shows up once and is dropped.
    CHECK(std::none_of(cands.begin(), cands.end(), [](const auto& c) { return c.noun_stem == "example"; }));
    // Absolute-sentiment threshold applies on its own.
    CHECK(propose_candidates(mentions, 2, 1.5, form).size() == 1);
}

TEST_CASE("parroting score") {
    const auto form = form_with({"slide", "presentation"});
    CHECK(parroting_score({}, form) == 0.0);
    const auto all = extract("Clear slides, lucid presentation.");
    CHECK(parroting_score(all.mentions, form) == 1.0);
    std::vector<AspectMention> four(4);
    four[0].noun_stem = "slide";
    four[1].noun_stem = "diagram";
    four[2].noun_stem = "presentation";
    four[3].noun_stem = "demo";
    CHECK(parroting_score(four, form) == 0.5);
}

TEST_CASE("candidates do not depend on mention order") {
    auto mentions = golden_mentions();
    const auto form = form_with({"presentation"});
    std::ostringstream ref;
    write_candidate_csv(ref, propose_candidates(mentions, 1, 0.1, form));
    std::mt19937 rng(41);
    for (int i = 0; i < 200; ++i) {
        std::shuffle(mentions.begin(), mentions.end(), rng);
        std::ostringstream out;
        write_candidate_csv(out, propose_candidates(mentions, 1, 0.1, form));
        CHECK(out.str() == ref.str());
    }
}

TEST_CASE("candidate csv matches the golden file") {
    const auto form = form_with({"presentation", "slide", "delivery", "topic"});
    std::ostringstream out;
    write_candidate_csv(out, propose_candidates(golden_mentions(), 2, 1.0, form));
    CHECK(out.str() == testsupport::read_text(testsupport::test_dir() / "golden/aspect_candidates.csv"));
}

TEST_CASE("number rendering") {
    CHECK(format_number(0.1 + 0.2) == "0.3");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(1e-9) == "0");
    CHECK(format_number(2.0) == "2");
}
