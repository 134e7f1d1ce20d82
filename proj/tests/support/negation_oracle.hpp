#pragma once

// Brute-force negation evaluator used as a test oracle. It shares no code
// with the engine: every scope and qualifier window is enumerated explicitly
// from its definition, in quadratic time.

#include "crowdgrade/sentiment.hpp"

#include <span>
#include <vector>

namespace oracle {

using crowdgrade::sentiment::AnalyzedToken;
using crowdgrade::sentiment::Mechanism;
using crowdgrade::sentiment::NegationConfig;

struct Outcome {
    std::size_t index = 0;
    double weight = 0.0;
    Mechanism mechanism = Mechanism::Plain;

    friend bool operator==(const Outcome&, const Outcome&) = default;
};

// No reset token in the closed range [from, to], and (optionally) one
// sentence throughout.
inline bool clear_path(std::span<const AnalyzedToken> toks, std::size_t from, std::size_t to,
                       const NegationConfig& cfg) {
    for (std::size_t k = from; k <= to; ++k) {
        if (toks[k].roles.reset) return false;
        if (cfg.within_sentence && toks[k].token.sentence_index != toks[from].token.sentence_index) return false;
    }
    return true;
}

// Some negate word strictly before i reaches i without a reset in between.
inline bool scoped(std::span<const AnalyzedToken> toks, std::size_t i, const NegationConfig& cfg) {
    for (std::size_t j = 0; j < i; ++j)
        if (toks[j].roles.negate && clear_path(toks, j, i, cfg)) return true;
    return false;
}

inline bool qualifier(std::span<const AnalyzedToken> toks, std::size_t q, const NegationConfig& cfg) {
    using crowdgrade::text::Pos;
    const auto p = toks[q].token.pos;
    const bool adjectival = p == Pos::JJ || p == Pos::JJR || p == Pos::JJS || p == Pos::VBN || p == Pos::VBG;
    return toks[q].roles.negative.has_value() && !toks[q].roles.reset && adjectival && !scoped(toks, q, cfg);
}

inline std::vector<Outcome> evaluate(std::span<const AnalyzedToken> toks, const NegationConfig& cfg) {
    std::vector<Outcome> out;
    const std::size_t n = toks.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& r = toks[i].roles;
        if (r.reset || !(r.positive || r.negative)) continue;
        const bool in_scope = scoped(toks, i, cfg);
        if (r.negative) {
            out.push_back(in_scope ? Outcome{i, 0.0, Mechanism::ScopeNegated} : Outcome{i, -*r.negative, Mechanism::Plain});
            continue;
        }
        const double w = *r.positive;
        if (in_scope) {
            out.push_back({i, -w, Mechanism::ScopeNegated});
            continue;
        }
        bool before = false, after = false;
        for (std::size_t q = 0; q < n; ++q) {
            if (q == i || !qualifier(toks, q, cfg)) continue;
            const std::size_t dist = q < i ? i - q : q - i;
            if (dist > cfg.qualifier_window) continue;
            if (!clear_path(toks, std::min(q, i), std::max(q, i), cfg)) continue;
            (q < i ? before : after) = true;
        }
        if (before) out.push_back({i, -w, Mechanism::PrecedingQualifier});
        else if (after) out.push_back({i, -w, Mechanism::TrailingQualifier});
        else out.push_back({i, w, Mechanism::Plain});
    }
    return out;
}

}  // namespace oracle
