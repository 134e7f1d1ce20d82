#pragma once

#include "crowdgrade/corpus_io.hpp"
#include "crowdgrade/sentiment.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace crowdgrade::aspects {

struct AspectMention {
    std::string noun_stem;
    std::string adjective_stem;
    double adjective_weight = 0.0;  // effective, after negation
    text::Pos adjective_pos = text::Pos::JJ;
    std::string context;
    std::string review_ref;
    text::Span noun_span;
    text::Span adjective_span;
};

// A sentiment adjective with no noun in reach.
struct Orphan {
    std::string adjective_stem;
    double adjective_weight = 0.0;
    std::string review_ref;
    text::Span span;
};

struct Extraction {
    std::vector<AspectMention> mentions;
    std::vector<Orphan> orphans;
};

// Starts from every JJ* token with a nonzero effective weight and pairs it
// with each noun at most `window` tokens away on either side, within the same
// sentence. The context is the source text covered by that window.
Extraction extract_aspects(std::string_view source, std::span<const sentiment::AnalyzedToken> tokens,
                           std::span<const sentiment::Contribution> contributions, std::size_t window,
                           std::string_view review_ref = {});

enum class Status { Proposed, Accepted, Rejected };

std::string_view to_string(Status status);

struct AspectCandidate {
    std::string noun_stem;
    int occurrences = 0;  // mentions, not reviews
    double total_absolute_sentiment = 0.0;
    double net_sentiment = 0.0;
    std::vector<std::string> sample_contexts;
    // Strongest mention as ["adjective", weight, "TAG", "context"].
    std::string example_context;
    Status status = Status::Proposed;
    bool is_parrot_source = false;
};

inline constexpr std::size_t kMaxSampleContexts = 3;

// Groups by noun, keeps groups meeting both thresholds, sorts by occurrences
// descending then noun. Output does not depend on mention order.
std::vector<AspectCandidate> propose_candidates(std::span<const AspectMention> mentions, int min_mentions,
                                                double min_abs_sentiment, const corpus::ReviewFormSpec& form);

// Share of the mentions whose noun is on the form; 0 with no mentions.
double parroting_score(std::span<const AspectMention> mentions, const corpus::ReviewFormSpec& form);

// noun,occurrences,net_sentiment,abs_sentiment,example_context,parrot_source
void write_candidate_csv(std::ostream& out, std::span<const AspectCandidate> candidates);

// Short decimal rendering shared by the report writers.
std::string format_number(double value);

}  // namespace crowdgrade::aspects
