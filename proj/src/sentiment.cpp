#include "crowdgrade/sentiment.hpp"

#include "crowdgrade/errors.hpp"

#include <algorithm>
#include <set>

namespace crowdgrade::sentiment {

namespace {

bool adjective_like(text::Pos pos) {
    return text::is_adjective(pos) || pos == text::Pos::VBN || pos == text::Pos::VBG;
}

bool sentence_break(std::span<const AnalyzedToken> tokens, std::size_t i, const NegationConfig& cfg) {
    return cfg.within_sentence && i > 0 && tokens[i].token.sentence_index != tokens[i - 1].token.sentence_index;
}

}  // namespace

void NegationConfig::validate() const {
    if (qualifier_window < 1) throw InvalidArgument("qualifier_window must be at least 1");
}

std::string_view to_string(Mechanism mechanism) {
    switch (mechanism) {
        case Mechanism::ScopeNegated: return "scope";
        case Mechanism::PrecedingQualifier: return "preceding_qualifier";
        case Mechanism::TrailingQualifier: return "trailing_qualifier";
        case Mechanism::Plain: break;
    }
    return "plain";
}

bool is_qualifier(const AnalyzedToken& token) {
    return token.roles.negative.has_value() && !token.roles.reset && adjective_like(token.token.pos);
}

std::vector<Contribution> apply_negation(std::span<const AnalyzedToken> tokens, const NegationConfig& cfg) {
    cfg.validate();
    const std::size_t n = tokens.size();

    // Scope pass: which tokens sit inside an open negate scope.
    std::vector<bool> in_scope(n, false);
    bool scope_open = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (sentence_break(tokens, i, cfg)) scope_open = false;
        const auto& roles = tokens[i].roles;
        if (roles.reset) {
            scope_open = false;
            continue;
        }
        in_scope[i] = scope_open;
        if (roles.negate) scope_open = true;
    }

    auto active_qualifier = [&](std::size_t i) { return !in_scope[i] && is_qualifier(tokens[i]); };
    auto positive_target = [&](std::size_t i) { return tokens[i].roles.positive.has_value() && !in_scope[i]; };

    // Forward pass for preceding qualifiers, backward pass for trailing ones.
    // A segment ends at a reset token or (optionally) a sentence break.
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<bool> flipped_before(n, false);
    std::size_t last_qualifier = none;
    for (std::size_t i = 0; i < n; ++i) {
        if (sentence_break(tokens, i, cfg) || tokens[i].roles.reset) last_qualifier = none;
        if (tokens[i].roles.reset) continue;
        if (positive_target(i) && last_qualifier != none && i - last_qualifier <= cfg.qualifier_window)
            flipped_before[i] = true;
        if (active_qualifier(i)) last_qualifier = i;
    }

    std::vector<bool> flipped_after(n, false);
    std::size_t next_qualifier = none;
    for (std::size_t i = n; i-- > 0;) {
        if (tokens[i].roles.reset) {
            next_qualifier = none;
            continue;
        }
        if (positive_target(i) && next_qualifier != none && next_qualifier - i <= cfg.qualifier_window)
            flipped_after[i] = true;
        if (active_qualifier(i)) next_qualifier = i;
        if (sentence_break(tokens, i, cfg)) next_qualifier = none;
    }

    std::vector<Contribution> out;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& tok = tokens[i];
        if (!tok.roles.sentiment_bearing() || tok.roles.reset) continue;
        Contribution c{i, tok.token.stem, 0.0, Mechanism::Plain, tok.token.span};
        if (tok.roles.negative) {
            if (in_scope[i]) {
                c.weight = 0.0;
                c.mechanism = Mechanism::ScopeNegated;
            } else {
                c.weight = -*tok.roles.negative;
            }
        } else {
            const double w = *tok.roles.positive;
            if (in_scope[i]) {
                c.weight = -w;
                c.mechanism = Mechanism::ScopeNegated;
            } else if (flipped_before[i]) {
                c.weight = -w;
                c.mechanism = Mechanism::PrecedingQualifier;
            } else if (flipped_after[i]) {
                c.weight = -w;
                c.mechanism = Mechanism::TrailingQualifier;
            } else {
                c.weight = w;
            }
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<AnalyzedToken> classify_all(std::span<const text::TaggedToken> tokens, const lexicon::LexiconSet& lex) {
    std::vector<AnalyzedToken> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(AnalyzedToken{t, lexicon::classify_token(t, lex)});
    return out;
}

double scale_score(double tone, int keywords, double grade_max) {
    const double mean = tone / static_cast<double>(keywords);
    return std::clamp((mean + 1.0) / 2.0 * grade_max, 0.0, grade_max);
}

CommentScore compute_metrics(std::span<const AnalyzedToken> tokens, std::vector<Contribution> contributions,
                             const grading::ScoringThresholds& thresholds) {
    CommentScore s;
    for (const auto& c : contributions) {
        if (c.weight > 0.0) {
            ++s.pos_keywords;
            s.positivity += c.weight;
        } else if (c.weight < 0.0) {
            ++s.neg_keywords;
            s.negativity += c.weight;
        }
    }
    s.contributions = std::move(contributions);
    s.keywords = s.pos_keywords + s.neg_keywords;
    s.tone = s.positivity + s.negativity;
    s.info = s.positivity - s.negativity;
    if (s.info > 0.0) s.purity = s.tone / s.info;

    std::set<std::size_t> sentences;
    for (const auto& t : tokens) {
        if (t.roles.negate) ++s.negate_words;
        if (t.roles.flag) s.flags.push_back(FlagHit{t.token.stem, t.token.span});
        if (text::is_adverb(t.token.pos)) ++s.adverbs;
        if (t.token.is_word()) ++s.length;
        sentences.insert(t.token.sentence_index);
    }
    s.words_per_sentence =
        sentences.empty() ? 0.0 : static_cast<double>(s.length) / static_cast<double>(sentences.size());

    s.is_default = s.keywords < thresholds.min_keywords || s.keywords == 0;
    if (!s.is_default) s.score = scale_score(s.tone, s.keywords, thresholds.grade_max);
    s.reliable = !s.is_default && s.keywords >= thresholds.reliable_keywords;
    return s;
}

CommentAnalysis analyze_comment(std::string_view comment, const text::Tagger& tagger, const lexicon::LexiconSet& lex,
                                const NegationConfig& cfg, const grading::ScoringThresholds& thresholds) {
    const auto tagged = text::analyze(comment, tagger);
    CommentAnalysis result;
    result.tokens = classify_all(tagged, lex);
    result.score = compute_metrics(result.tokens, apply_negation(result.tokens, cfg), thresholds);
    return result;
}

CommentScore score_comment(std::string_view comment, const text::Tagger& tagger, const lexicon::LexiconSet& lex,
                           const NegationConfig& cfg, const grading::ScoringThresholds& thresholds) {
    return analyze_comment(comment, tagger, lex, cfg, thresholds).score;
}

std::string AnnotatedSpan::label() const {
    std::string out = negated ? "NEGATED" : "";
    if (net != lexicon::Polarity::Neutral) {
        if (!out.empty()) out += '+';
        out += net == lexicon::Polarity::Positive ? "NET_POS" : "NET_NEG";
    }
    return out;
}

std::string Annotation::markup() const {
    std::string out;
    std::size_t cursor = 0;
    for (const auto& s : spans) {
        out.append(text, cursor, s.span.start - cursor);
        out += s.label();
        out += '[';
        out.append(text, s.span.start, s.span.size());
        out += ']';
        cursor = s.span.end;
    }
    out.append(text, cursor, std::string::npos);
    return out;
}

nlohmann::json Annotation::to_json() const {
    nlohmann::json spans_json = nlohmann::json::array();
    for (const auto& s : spans)
        spans_json.push_back({{"start", s.span.start}, {"end", s.span.end}, {"class", s.label()}});
    return {{"text", text}, {"spans", std::move(spans_json)}};
}

Annotation annotate(std::string_view comment, std::span<const Contribution> contributions) {
    Annotation a;
    a.text = std::string(comment);
    for (const auto& c : contributions) {
        AnnotatedSpan s;
        s.span = c.span;
        s.negated = c.negated();
        if (c.weight > 0.0) s.net = lexicon::Polarity::Positive;
        else if (c.weight < 0.0) s.net = lexicon::Polarity::Negative;
        if (!s.negated && s.net == lexicon::Polarity::Neutral) continue;
        a.spans.push_back(s);
    }
    return a;
}

std::string annotate_comment(std::string_view comment, const text::Tagger& tagger, const lexicon::LexiconSet& lex,
                             const NegationConfig& cfg, const grading::ScoringThresholds& thresholds) {
    const auto analysis = analyze_comment(comment, tagger, lex, cfg, thresholds);
    return annotate(comment, analysis.score.contributions).markup();
}

nlohmann::json to_json(const CommentScore& s) {
    auto optional_number = [](const std::optional<double>& v) -> nlohmann::json {
        return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    nlohmann::json keywords = nlohmann::json::array();
    for (const auto& c : s.contributions) {
        keywords.push_back({{"stem", c.stem},
                            {"weight", c.weight},
                            {"mechanism", to_string(c.mechanism)},
                            {"start", c.span.start},
                            {"end", c.span.end}});
    }
    nlohmann::json flags = nlohmann::json::array();
    for (const auto& f : s.flags) flags.push_back({{"stem", f.stem}, {"start", f.span.start}, {"end", f.span.end}});
    return {{"keywords_detail", std::move(keywords)},
            {"pos_keywords", s.pos_keywords},
            {"neg_keywords", s.neg_keywords},
            {"keywords", s.keywords},
            {"tone", s.tone},
            {"info", s.info},
            {"score", optional_number(s.score)},
            {"reliable", s.reliable ? 1 : 0},
            {"default", s.is_default ? 1 : 0},
            {"dif", optional_number(s.dif)},
            {"purity", optional_number(s.purity)},
            {"positivity", s.positivity},
            {"negativity", s.negativity},
            {"negate_words", s.negate_words},
            {"words_per_sentence", s.words_per_sentence},
            {"length", s.length},
            {"adverbs", s.adverbs},
            {"flags", std::move(flags)}};
}

}  // namespace crowdgrade::sentiment
