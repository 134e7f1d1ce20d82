#pragma once

#include "crowdgrade/lexicon.hpp"
#include "crowdgrade/text_pipeline.hpp"
#include "crowdgrade/thresholds.hpp"

#include <json.hpp>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace crowdgrade::sentiment {

struct NegationConfig {
    // How close (in tokens) a negative qualifier must be to flip a positive word.
    std::size_t qualifier_window = 4;
    // Scopes and qualifier windows stop at sentence boundaries.
    bool within_sentence = true;

    void validate() const;
};

enum class Mechanism { Plain, ScopeNegated, PrecedingQualifier, TrailingQualifier };

std::string_view to_string(Mechanism mechanism);

struct AnalyzedToken {
    text::TaggedToken token;
    lexicon::TokenRoles roles;
};

struct Contribution {
    std::size_t token_index = 0;
    std::string stem;
    double weight = 0.0;  // signed effective weight
    Mechanism mechanism = Mechanism::Plain;
    text::Span span;

    bool negated() const { return mechanism != Mechanism::Plain; }
};

// A negative-sentiment adjective (or participle used as one) that can flip a
// nearby positive word.
bool is_qualifier(const AnalyzedToken& token);

// Scope negation runs first: a negate word turns every later positive weight
// negative and every later negative weight to zero until a reset token (or
// the sentence end). Outside scopes, a positive word within
// `qualifier_window` tokens of an un-negated qualifier, on either side and
// with no reset in between, is flipped; the qualifier keeps its own negative
// weight. One contribution per sentiment-bearing token, in document order.
std::vector<Contribution> apply_negation(std::span<const AnalyzedToken> tokens, const NegationConfig& cfg);

struct FlagHit {
    std::string stem;
    text::Span span;
};

struct CommentScore {
    std::vector<Contribution> contributions;
    int pos_keywords = 0;
    int neg_keywords = 0;
    int keywords = 0;
    double tone = 0.0;
    double info = 0.0;
    std::optional<double> score;
    bool reliable = false;
    bool is_default = true;
    std::optional<double> dif;
    std::optional<double> purity;
    double positivity = 0.0;
    double negativity = 0.0;
    int negate_words = 0;
    double words_per_sentence = 0.0;
    int length = 0;
    int adverbs = 0;
    std::vector<FlagHit> flags;
};

struct CommentAnalysis {
    std::vector<AnalyzedToken> tokens;
    CommentScore score;
};

std::vector<AnalyzedToken> classify_all(std::span<const text::TaggedToken> tokens, const lexicon::LexiconSet& lex);

// Metric record for an already-negated token stream.
CommentScore compute_metrics(std::span<const AnalyzedToken> tokens, std::vector<Contribution> contributions,
                             const grading::ScoringThresholds& thresholds);

CommentAnalysis analyze_comment(std::string_view comment, const text::Tagger& tagger, const lexicon::LexiconSet& lex,
                                const NegationConfig& cfg, const grading::ScoringThresholds& thresholds);

CommentScore score_comment(std::string_view comment, const text::Tagger& tagger, const lexicon::LexiconSet& lex,
                           const NegationConfig& cfg, const grading::ScoringThresholds& thresholds);

// Linear map of the mean signed keyword weight from [-1, 1] onto
// [0, grade_max], clamped.
double scale_score(double tone, int keywords, double grade_max);

struct AnnotatedSpan {
    text::Span span;
    bool negated = false;
    lexicon::Polarity net = lexicon::Polarity::Neutral;

    // "NET_POS", "NET_NEG", "NEGATED", "NEGATED+NET_NEG", ...
    std::string label() const;
};

struct Annotation {
    std::string text;
    std::vector<AnnotatedSpan> spans;

    // Original text with LABEL[...] around each marked span.
    std::string markup() const;
    nlohmann::json to_json() const;
};

Annotation annotate(std::string_view comment, std::span<const Contribution> contributions);

std::string annotate_comment(std::string_view comment, const text::Tagger& tagger, const lexicon::LexiconSet& lex,
                             const NegationConfig& cfg, const grading::ScoringThresholds& thresholds);

nlohmann::json to_json(const CommentScore& score);

}  // namespace crowdgrade::sentiment
