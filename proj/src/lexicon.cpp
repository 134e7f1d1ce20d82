#include "crowdgrade/lexicon.hpp"

#include "crowdgrade/errors.hpp"

#include <cctype>
#include <unordered_set>

namespace crowdgrade::lexicon {

namespace {

void check_weights(const WeightMap& weights, std::string_view name) {
    for (const auto& [stem, w] : weights) {
        if (!(w >= 0.0 && w <= 1.0))
            throw WeightOutOfRange(std::string(name) + " weight for '" + stem + "' is outside [0, 1]: " +
                                   std::to_string(w));
    }
}

template <typename A, typename B>
void check_disjoint(const A& a, const B& b, std::string_view a_name, std::string_view b_name) {
    for (const auto& entry : a) {
        const std::string& stem = [&]() -> const std::string& {
            if constexpr (std::is_same_v<A, WeightMap>) return entry.first;
            else return entry;
        }();
        if (b.find(stem) != b.end())
            throw LexiconConflict("'" + stem + "' is both " + std::string(a_name) + " and " + std::string(b_name));
    }
}

}  // namespace

const StemSet& builtin_reset_tokens() {
    static const StemSet tokens{".", ";", "but", "although", "however", "nevertheless"};
    return tokens;
}

LexiconSet LexiconSet::build(WeightMap positive, WeightMap negative, StemSet negate, StemSet flag, StemSet reset) {
    if (positive.empty()) throw EmptyLexicon("positive lexicon is empty");
    if (negative.empty()) throw EmptyLexicon("negative lexicon is empty");
    check_weights(positive, "positive");
    check_weights(negative, "negative");
    reset.insert(builtin_reset_tokens().begin(), builtin_reset_tokens().end());
    check_disjoint(positive, negative, "positive", "negative");
    check_disjoint(reset, positive, "reset", "positive");
    check_disjoint(reset, negative, "reset", "negative");
    check_disjoint(negate, positive, "negate", "positive");

    LexiconSet lex;
    lex.positive_ = std::move(positive);
    lex.negative_ = std::move(negative);
    lex.negate_ = std::move(negate);
    lex.flag_ = std::move(flag);
    lex.reset_ = std::move(reset);
    return lex;
}

std::string_view to_string(Polarity polarity) {
    switch (polarity) {
        case Polarity::Positive: return "positive";
        case Polarity::Negative: return "negative";
        case Polarity::Neutral: break;
    }
    return "neutral";
}

TokenRoles classify_stem(std::string_view stem, const LexiconSet& lex) {
    std::string key(stem);
    for (auto& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

    TokenRoles roles;
    roles.reset = lex.reset().contains(key);
    roles.flag = lex.flag().contains(key);
    roles.negate = lex.negate().contains(key);
    if (auto it = lex.negative().find(key); it != lex.negative().end()) roles.negative = it->second;
    if (auto it = lex.positive().find(key); it != lex.positive().end()) roles.positive = it->second;

    if (roles.reset) roles.resolved = Polarity::Neutral;
    else if (roles.negative) roles.resolved = Polarity::Negative;
    else if (roles.positive) roles.resolved = Polarity::Positive;
    else roles.resolved = Polarity::Neutral;
    return roles;
}

TokenRoles classify_token(const text::TaggedToken& token, const LexiconSet& lex) {
    return classify_stem(token.stem, lex);
}

LexiconUsage lexicon_usage(const std::vector<std::string>& corpus_stems, const LexiconSet& lex) {
    const std::unordered_set<std::string> seen(corpus_stems.begin(), corpus_stems.end());
    auto fraction = [&](const WeightMap& weights) {
        if (weights.empty()) return 0.0;
        std::size_t used = 0;
        for (const auto& entry : weights)
            if (seen.contains(entry.first)) ++used;
        return static_cast<double>(used) / static_cast<double>(weights.size());
    };
    return {fraction(lex.positive()), fraction(lex.negative())};
}

}  // namespace crowdgrade::lexicon
