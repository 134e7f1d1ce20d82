#include "crowdgrade/aspects.hpp"

#include "crowdgrade/csv.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

namespace crowdgrade::aspects {

namespace {

bool is_aspect_noun(text::Pos p) {
    return p == text::Pos::NN || p == text::Pos::NNS || p == text::Pos::NNP || p == text::Pos::NNPS;
}

// Canonical order inside a group: strongest first, then lexicographic.
bool stronger(const AspectMention* a, const AspectMention* b) {
    const double wa = std::abs(a->adjective_weight), wb = std::abs(b->adjective_weight);
    if (wa != wb) return wa > wb;
    if (a->adjective_stem != b->adjective_stem) return a->adjective_stem < b->adjective_stem;
    if (a->adjective_weight != b->adjective_weight) return a->adjective_weight > b->adjective_weight;
    if (a->context != b->context) return a->context < b->context;
    return a->review_ref < b->review_ref;
}

std::string table_context(const AspectMention& m) {
    nlohmann::json row = nlohmann::json::array();
    row.push_back(m.adjective_stem);
    row.push_back(nlohmann::json::parse(format_number(m.adjective_weight)));
    row.push_back(std::string(text::to_string(m.adjective_pos)));
    row.push_back(m.context);
    std::string out = "[";
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ", ";
        out += row[i].dump();
    }
    return out + "]";
}

}  // namespace

std::string format_number(double value) {
    double rounded = std::round(value * 1e6) / 1e6;
    if (rounded == 0.0) rounded = 0.0;  // drop negative zero
    return fmt::format("{}", rounded);
}

std::string_view to_string(Status status) {
    switch (status) {
        case Status::Accepted: return "accepted";
        case Status::Rejected: return "rejected";
        case Status::Proposed: break;
    }
    return "proposed";
}

Extraction extract_aspects(std::string_view source, std::span<const sentiment::AnalyzedToken> tokens,
                           std::span<const sentiment::Contribution> contributions, std::size_t window,
                           std::string_view review_ref) {
    std::map<std::size_t, double> effective;
    for (const auto& c : contributions) effective[c.token_index] = c.weight;

    Extraction out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto& adj = tokens[i].token;
        if (!text::is_adjective(adj.pos)) continue;
        const auto w = effective.find(i);
        if (w == effective.end() || w->second == 0.0) continue;

        const std::size_t lo = i >= window ? i - window : 0;
        const std::size_t hi = std::min(tokens.size() - 1, i + window);
        std::size_t first = i, last = i;
        for (std::size_t j = lo; j <= hi; ++j) {
            if (tokens[j].token.sentence_index != adj.sentence_index) continue;
            first = std::min(first, j);
            last = std::max(last, j);
        }
        const auto ctx_start = tokens[first].token.span.start;
        const std::string context(source.substr(ctx_start, tokens[last].token.span.end - ctx_start));

        bool paired = false;
        for (std::size_t j = first; j <= last; ++j) {
            if (j == i || !is_aspect_noun(tokens[j].token.pos)) continue;
            if (tokens[j].token.sentence_index != adj.sentence_index) continue;
            out.mentions.push_back(AspectMention{tokens[j].token.stem, adj.stem, w->second, adj.pos, context,
                                                 std::string(review_ref), tokens[j].token.span, adj.span});
            paired = true;
        }
        if (!paired) out.orphans.push_back(Orphan{adj.stem, w->second, std::string(review_ref), adj.span});
    }
    return out;
}

std::vector<AspectCandidate> propose_candidates(std::span<const AspectMention> mentions, int min_mentions,
                                                double min_abs_sentiment, const corpus::ReviewFormSpec& form) {
    std::map<std::string, std::vector<const AspectMention*>> groups;
    for (const auto& m : mentions) groups[m.noun_stem].push_back(&m);

    std::vector<AspectCandidate> out;
    for (auto& [noun, group] : groups) {
        std::sort(group.begin(), group.end(), stronger);
        AspectCandidate c;
        c.noun_stem = noun;
        c.occurrences = static_cast<int>(group.size());
        for (const auto* m : group) {
            c.net_sentiment += m->adjective_weight;
            c.total_absolute_sentiment += std::abs(m->adjective_weight);
        }
        if (c.occurrences < min_mentions || c.total_absolute_sentiment < min_abs_sentiment) continue;
        for (const auto* m : group) {
            if (c.sample_contexts.size() == kMaxSampleContexts) break;
            if (std::find(c.sample_contexts.begin(), c.sample_contexts.end(), m->context) == c.sample_contexts.end())
                c.sample_contexts.push_back(m->context);
        }
        c.example_context = table_context(*group.front());
        c.is_parrot_source = form.form_nouns.contains(noun);
        out.push_back(std::move(c));
    }
    std::stable_sort(out.begin(), out.end(), [](const AspectCandidate& a, const AspectCandidate& b) {
        if (a.occurrences != b.occurrences) return a.occurrences > b.occurrences;
        return a.noun_stem < b.noun_stem;
    });
    return out;
}

double parroting_score(std::span<const AspectMention> mentions, const corpus::ReviewFormSpec& form) {
    if (mentions.empty()) return 0.0;
    const auto on_form = std::count_if(mentions.begin(), mentions.end(),
                                       [&](const AspectMention& m) { return form.form_nouns.contains(m.noun_stem); });
    return static_cast<double>(on_form) / static_cast<double>(mentions.size());
}

void write_candidate_csv(std::ostream& out, std::span<const AspectCandidate> candidates) {
    out << "noun,occurrences,net_sentiment,abs_sentiment,example_context,parrot_source\n";
    for (const auto& c : candidates) {
        out << csv::format_row({c.noun_stem, std::to_string(c.occurrences), format_number(c.net_sentiment),
                                format_number(c.total_absolute_sentiment), c.example_context,
                                c.is_parrot_source ? "true" : "false"})
            << '\n';
    }
}

}  // namespace crowdgrade::aspects
