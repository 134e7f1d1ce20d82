#pragma once

// Random token sequences over a twelve-stem vocabulary, shared by the
// sentiment property tests and the acceptance binary.

#include "crowdgrade/lexicon.hpp"
#include "crowdgrade/sentiment.hpp"
#include "test_support.hpp"

#include <random>
#include <string>
#include <vector>

namespace tokengen {

using crowdgrade::lexicon::LexiconSet;
using crowdgrade::sentiment::AnalyzedToken;
using crowdgrade::text::Pos;

inline const LexiconSet& mini_lexicon() {
    static const auto lex = LexiconSet::build({{"useful", 0.6}, {"clear", 0.6}, {"insight", 0.7}},
                                              {{"dry", 0.5}, {"hard", 0.5}, {"miss", 0.5}, {"copy", 0.8}},
                                              {"not", "miss"}, {"copy"}, {});
    return lex;
}

inline const std::vector<std::string>& vocabulary() {
    static const std::vector<std::string> v{"useful", "clear", "insight", "dry", "hard", "miss",
                                            "not",    "copy",  "but",     ".",   "!",    "table"};
    return v;
}

// Tags are drawn so that both qualifier and non-qualifier readings occur.
inline Pos pick_pos(const std::string& stem, std::mt19937& rng) {
    if (stem == ".") return Pos::Period;
    if (stem == "!") return Pos::Period;
    if (stem == "but") return Pos::CC;
    if (stem == "not") return Pos::RB;
    static const Pos choices[] = {Pos::JJ, Pos::NN, Pos::VBN, Pos::VBG, Pos::RB, Pos::JJR};
    return choices[rng() % 6];
}

// Builds analyzed tokens for `stems`; sentence index advances after '.' and '!'.
inline std::vector<AnalyzedToken> build(const std::vector<std::string>& stems, const std::vector<Pos>& tags,
                                        const LexiconSet& lex = mini_lexicon()) {
    std::vector<AnalyzedToken> out;
    std::size_t sentence = 0, offset = 0;
    for (std::size_t i = 0; i < stems.size(); ++i) {
        out.push_back(testsupport::make_token(stems[i], tags[i], sentence, lex, offset));
        offset += stems[i].size() + 1;
        if (stems[i] == "." || stems[i] == "!") ++sentence;
    }
    return out;
}

inline std::vector<AnalyzedToken> random_sequence(std::size_t n, std::mt19937& rng) {
    std::vector<std::string> stems;
    std::vector<Pos> tags;
    for (std::size_t i = 0; i < n; ++i) {
        stems.push_back(vocabulary()[rng() % vocabulary().size()]);
        tags.push_back(pick_pos(stems.back(), rng));
    }
    return build(stems, tags);
}

}  // namespace tokengen
