#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crowdgrade/errors.hpp"
#include "crowdgrade/lexicon.hpp"
#include "test_support.hpp"

#include <random>

using namespace crowdgrade;
using namespace crowdgrade::lexicon;

static LexiconSet small() {
    return LexiconSet::build({{"lucid", 0.7}, {"clear", 0.6}}, {{"dry", 0.5}, {"miss", 0.5}, {"copy", 0.8}},
                             {"not", "miss"}, {"copy"}, {});
}

TEST_CASE("reset words are neutral") {
    const auto r = classify_stem("however", small());
    CHECK(r.reset);
    CHECK(r.resolved == Polarity::Neutral);
}

TEST_CASE("negate and negative overlap") {
    const auto r = classify_stem("miss", testsupport::seed_lexicon());
    CHECK(r.negate);
    REQUIRE(r.negative);
    CHECK(*r.negative == doctest::Approx(0.5));
    CHECK(r.resolved == Polarity::Negative);
}

TEST_CASE("flag word keeps its negative role") {
    const auto r = classify_stem("copy", small());
    CHECK(r.flag);
    CHECK(r.negative);
    CHECK(r.resolved == Polarity::Negative);
}

TEST_CASE("unknown word") {
    const auto r = classify_stem("table", small());
    CHECK_FALSE(r.positive);
    CHECK_FALSE(r.negative);
    CHECK_FALSE(r.negate);
    CHECK_FALSE(r.flag);
    CHECK_FALSE(r.reset);
    CHECK(r.resolved == Polarity::Neutral);
}

TEST_CASE("lookup is case-insensitive") { CHECK(classify_stem("LUCID", small()).positive); }

TEST_CASE("reset punctuation is always present") {
    for (const char* p : {".", ";", "but", "although", "however", "nevertheless"}) CHECK(classify_stem(p, small()).reset);
}

TEST_CASE("build rejects invalid lexicons") {
    CHECK_THROWS_AS(LexiconSet::build({}, {{"dry", 0.5}}, {}, {}, {}), EmptyLexicon);
    CHECK_THROWS_AS(LexiconSet::build({{"a", 0.5}}, {}, {}, {}, {}), EmptyLexicon);
    CHECK_THROWS_AS(LexiconSet::build({{"a", 1.5}}, {{"b", 0.5}}, {}, {}, {}), WeightOutOfRange);
    CHECK_THROWS_AS(LexiconSet::build({{"a", 0.5}}, {{"a", 0.5}}, {}, {}, {}), LexiconConflict);
    CHECK_THROWS_AS(LexiconSet::build({{"but", 0.5}}, {{"b", 0.5}}, {}, {}, {}), LexiconConflict);
    CHECK_THROWS_AS(LexiconSet::build({{"a", 0.5}}, {{"b", 0.5}}, {}, {}, {"b"}), LexiconConflict);
    CHECK_THROWS_AS(LexiconSet::build({{"a", 0.5}}, {{"b", 0.5}}, {"a"}, {}, {}), LexiconConflict);
}

TEST_CASE("no token resolves both ways, reset implies neutral") {
    std::mt19937 rng(9);
    const std::vector<std::string> pool{"a", "b", "c", "d", "e", "f", "g", "h", "i", "j"};
    int built = 0;
    for (int iter = 0; iter < 2000; ++iter) {
        WeightMap pos, neg;
        StemSet negate, flag, reset;
        for (const auto& s : pool) {
            switch (rng() % 6) {
                case 0: pos[s] = (rng() % 11) / 10.0; break;
                case 1: neg[s] = (rng() % 11) / 10.0; break;
                case 2: negate.insert(s); break;
                case 3: flag.insert(s); break;
                case 4: reset.insert(s); break;
                default: break;
            }
            if (rng() % 5 == 0) negate.insert(s);
            if (rng() % 5 == 0) flag.insert(s);
        }
        try {
            const auto lex = LexiconSet::build(pos, neg, negate, flag, reset);
            ++built;
            for (const auto& s : pool) {
                const auto r = classify_stem(s, lex);
                CHECK_FALSE((r.positive && r.negative));
                if (r.reset) CHECK(r.resolved == Polarity::Neutral);
                CHECK(classify_stem(s, lex).resolved == r.resolved);
            }
        } catch (const Error&) {
        }
    }
    CHECK(built > 100);
}

TEST_CASE("lexicon usage") {
    const auto lex = small();
    const auto empty = lexicon_usage({}, lex);
    CHECK(empty.pos_dict_used == 0.0);
    CHECK(empty.neg_dict_used == 0.0);
    const auto all_neg = lexicon_usage({"dry", "miss", "copy", "dry", "table"}, lex);
    CHECK(all_neg.neg_dict_used == 1.0);
    CHECK(all_neg.pos_dict_used == 0.0);
    CHECK(lexicon_usage({"lucid", "lucid"}, lex).pos_dict_used == 0.5);
}

TEST_CASE("usage fraction with a 250-stem lexicon") {
    WeightMap pos;
    std::vector<std::string> corpus;
    for (int i = 0; i < 250; ++i) {
        pos["p" + std::to_string(i)] = 0.5;
        if (i < 50) corpus.push_back("p" + std::to_string(i));
    }
    const auto lex = LexiconSet::build(pos, {{"dry", 0.5}}, {}, {}, {});
    CHECK(lexicon_usage(corpus, lex).pos_dict_used == doctest::Approx(0.20));
}
