#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crowdgrade/text_pipeline.hpp"
#include "test_support.hpp"

#include <random>
#include <thread>

using namespace crowdgrade;
using namespace crowdgrade::text;

static std::vector<std::string> surfaces(std::string_view s) {
    std::vector<std::string> out;
    for (const auto& t : segment_and_tokenize(s)) out.push_back(t.text);
    return out;
}

static std::vector<std::size_t> sentences(std::string_view s) {
    std::vector<std::size_t> out;
    for (const auto& t : segment_and_tokenize(s)) out.push_back(t.sentence_index);
    return out;
}

TEST_CASE("empty input") { CHECK(segment_and_tokenize("").empty()); }

TEST_CASE("single terminator split") {
    CHECK(surfaces("Great talk. Loved it") == std::vector<std::string>{"Great", "talk", ".", "Loved", "it"});
    CHECK(sentences("Great talk. Loved it") == std::vector<std::size_t>{0, 0, 0, 1, 1});
}

TEST_CASE("contractions split off") {
    CHECK(surfaces("it wasn't clear") == std::vector<std::string>{"it", "was", "n't", "clear"});
    CHECK(surfaces("they're done, it's fine") ==
          std::vector<std::string>{"they", "'re", "done", ",", "it", "'s", "fine"});
    CHECK(surfaces("I cannot") == std::vector<std::string>{"I", "can", "not"});
    CHECK(surfaces("didn\xE2\x80\x99t") == std::vector<std::string>{"did", "n\xE2\x80\x99t"});
}

TEST_CASE("sentence terminators and abbreviations") {
    CHECK(sentences("Good; bad! ok? fine") == std::vector<std::size_t>{0, 0, 1, 1, 2, 2, 3});
    CHECK(sentences("Use e.g. charts here") == std::vector<std::size_t>{0, 0, 0, 0});
    CHECK(sentences("v1.5 is out") == std::vector<std::size_t>{0, 0, 0});
}

TEST_CASE("words keep internal hyphens and decimals") {
    CHECK(surfaces("well-organized 3.5 slides") == std::vector<std::string>{"well-organized", "3.5", "slides"});
}

TEST_CASE("offset fidelity on random text") {
    std::mt19937 rng(3);
    const std::vector<std::string> pieces{"good",   "wasn't", ".",  ",", ";",   " ",    "  ", "\n", "e.g.", "(x)",
                                          "\"hi\"", "\xE2\x80\x94",      "…",  "3.5", "it's", "A-B", "!",  "?",  "café", "'"};
    for (int iter = 0; iter < 2000; ++iter) {
        std::string text;
        for (int k = rng() % 12; k > 0; --k) text += pieces[rng() % pieces.size()];
        const auto toks = segment_and_tokenize(text);
        std::size_t cursor = 0, last_sentence = 0;
        for (const auto& t : toks) {
            REQUIRE(t.span.start >= cursor);
            REQUIRE(t.span.end <= text.size());
            CHECK(text.substr(t.span.start, t.span.size()) == t.text);
            // Everything skipped between tokens is whitespace.
            for (std::size_t i = cursor; i < t.span.start; ++i) CHECK(std::isspace((unsigned char)text[i]) != 0);
            CHECK(t.sentence_index >= last_sentence);
            cursor = t.span.end;
            last_sentence = t.sentence_index;
        }
    }
}

TEST_CASE("stems the visible examples") {
    CHECK(stem("outstanding") == "outstand");
    CHECK(stem("boring") == "bor");
    CHECK(stem("driest") != stem("dry"));
    CHECK(stem("Presentations") == "presentation");
    CHECK(stem("examples") == "example");
    CHECK(stem("missing") == "miss");
    CHECK(stem("studies") == "study");
    CHECK(stem("classes") == "class");
    CHECK(stem("running") == "run");
    CHECK(stem("needed") == "need");
    CHECK(stem("n't") == "n't");
}

TEST_CASE("stem is idempotent and lowercase") {
    std::mt19937 rng(5);
    const std::string letters = "abcdefghilmnoprstuyeeaiss";
    const std::vector<std::string> suffixes{"", "s", "es", "ies", "ing", "ed", "ied", "ness", "ly", "est", "er"};
    for (int iter = 0; iter < 20000; ++iter) {
        std::string w;
        for (int k = 1 + rng() % 8; k > 0; --k) w += letters[rng() % letters.size()];
        w += suffixes[rng() % suffixes.size()];
        if (rng() % 4 == 0) w[0] = static_cast<char>(std::toupper(w[0]));
        const auto s = stem(w);
        CHECK_MESSAGE(stem(s) == s, w);
        CHECK(!s.empty());
        for (char c : s) CHECK(!std::isupper((unsigned char)c));
    }
}

TEST_CASE("tagging is deterministic across threads") {
    const std::string text = "The presentation is lucid and provided examples. It wasn't clear; the slides were dry.";
    const auto& tagger = testsupport::rule_tagger();
    const auto reference = analyze(text, tagger);
    std::vector<std::thread> threads;
    std::vector<bool> same(8, false);
    for (int i = 0; i < 8; ++i)
        threads.emplace_back([&, i] {
            const auto toks = analyze(text, tagger);
            bool ok = toks.size() == reference.size();
            for (std::size_t k = 0; ok && k < toks.size(); ++k)
                ok = toks[k].pos == reference[k].pos && toks[k].stem == reference[k].stem && toks[k].span == reference[k].span;
            same[i] = ok;
        });
    for (auto& t : threads) t.join();
    for (bool ok : same) CHECK(ok);
}

TEST_CASE("tagged token invariants") {
    const std::string text = "Presentations were informative, but dry!";
    for (const auto& t : analyze(text, testsupport::rule_tagger())) {
        CHECK(text.substr(t.span.start, t.span.size()) == t.surface);
        if (t.is_word()) CHECK(!t.stem.empty());
        else CHECK(t.stem == t.surface);
    }
}
