#pragma once

#include "crowdgrade/text_pipeline.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace crowdgrade::lexicon {

using WeightMap = std::map<std::string, double, std::less<>>;
using StemSet = std::set<std::string, std::less<>>;

// Reset punctuation and conjunctions that every lexicon carries.
const StemSet& builtin_reset_tokens();

// The five token categories. Immutable once built; share by const reference.
class LexiconSet {
public:
    // Validates and returns a lexicon: weights in [0, 1], positive and
    // negative disjoint, reset tokens carry no sentiment, negate words are
    // never positive. The built-in reset tokens are added to `reset`.
    // Throws WeightOutOfRange, EmptyLexicon or LexiconConflict.
    static LexiconSet build(WeightMap positive, WeightMap negative, StemSet negate, StemSet flag, StemSet reset);

    const WeightMap& positive() const { return positive_; }
    const WeightMap& negative() const { return negative_; }
    const StemSet& negate() const { return negate_; }
    const StemSet& flag() const { return flag_; }
    const StemSet& reset() const { return reset_; }

private:
    LexiconSet() = default;

    WeightMap positive_;
    WeightMap negative_;
    StemSet negate_;
    StemSet flag_;
    StemSet reset_;
};

enum class Polarity { Neutral, Positive, Negative };

std::string_view to_string(Polarity polarity);

struct TokenRoles {
    std::optional<double> positive;
    std::optional<double> negative;
    bool negate = false;
    bool flag = false;
    bool reset = false;
    Polarity resolved = Polarity::Neutral;

    bool sentiment_bearing() const { return positive.has_value() || negative.has_value(); }
};

// Role lookup by stem. Every role is recorded; `resolved` follows the check
// order reset -> flag -> negate -> negative -> positive -> neutral, where
// flag and negate do not decide polarity on their own.
TokenRoles classify_stem(std::string_view stem, const LexiconSet& lex);
TokenRoles classify_token(const text::TaggedToken& token, const LexiconSet& lex);

struct LexiconUsage {
    double pos_dict_used = 0.0;
    double neg_dict_used = 0.0;
};

// Fraction of distinct positive (negative) lexicon stems seen at least once.
LexiconUsage lexicon_usage(const std::vector<std::string>& corpus_stems, const LexiconSet& lex);

}  // namespace crowdgrade::lexicon
