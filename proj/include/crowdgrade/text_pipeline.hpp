#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace crowdgrade::text {

// Half-open byte range [start, end) into the source comment.
struct Span {
    std::size_t start = 0;
    std::size_t end = 0;

    std::size_t size() const { return end - start; }
    friend bool operator==(const Span&, const Span&) = default;
};

struct RawToken {
    std::size_t sentence_index = 0;
    std::string text;
    Span span;
};

// Penn-Treebank style tags. Punctuation gets its own closed group.
enum class Pos {
    NN, NNS, NNP, NNPS,
    JJ, JJR, JJS,
    RB, RBR, RBS,
    VB, VBD, VBG, VBN, VBP, VBZ, MD,
    DT, PDT, IN, CC, TO, RP, EX, UH, CD, POS,
    PRP, PRPS, WDT, WP, WPS, WRB,
    Period, Comma, Colon, LeftParen, RightParen, OpenQuote, CloseQuote, Symbol,
};

std::string_view to_string(Pos pos);
std::optional<Pos> pos_from_string(std::string_view tag);

bool is_noun(Pos pos);
bool is_adjective(Pos pos);
bool is_adverb(Pos pos);
bool is_verb(Pos pos);
bool is_punctuation(Pos pos);

struct TaggedToken {
    std::string surface;
    std::string stem;
    Pos pos = Pos::NN;
    Span span;
    std::size_t sentence_index = 0;

    bool is_word() const { return !is_punctuation(pos); }
};

// Splits text into sentences and tokens. Words keep internal hyphens,
// apostrophes and decimal points; contractions are split so that "n't",
// "'s", "'re" and friends become their own tokens. A sentence ends after
// '.', '!', '?' or ';' when followed by whitespace or end of text, except
// for a short list of abbreviations ("e.g.", "etc.", ...).
std::vector<RawToken> segment_and_tokenize(std::string_view text);

// True when the raw token text is a word (not punctuation).
bool is_word_text(std::string_view token);

// Light suffix stripping: plural -s/-es/-ies, -ing and -ed (with consonant
// undoubling). Comparative and superlative endings are left alone so that
// "driest" and "dry" stay distinct. Lowercases; idempotent.
std::string stem(std::string_view word);

class Tagger {
public:
    virtual ~Tagger() = default;
    virtual std::vector<Pos> tag(std::span<const RawToken> tokens) const = 0;
};

// Closed-class word list, a small open-class dictionary of review vocabulary,
// suffix heuristics and a handful of contextual repair rules. Unknown words
// fall back to NN.
class RuleTagger final : public Tagger {
public:
    RuleTagger();

    // Defaults plus `surface<TAB>tag` overrides. Throws ModelMissing when the
    // file cannot be opened and MalformedInput on a bad line.
    static RuleTagger from_rule_file(const std::filesystem::path& path);

    void add_override(std::string surface, Pos pos);
    std::size_t override_count() const { return overrides_.size(); }

    std::vector<Pos> tag(std::span<const RawToken> tokens) const override;

private:
    Pos lexical_tag(std::string_view word, bool sentence_initial) const;

    std::unordered_map<std::string, Pos> overrides_;
};

std::vector<TaggedToken> pos_tag(std::span<const RawToken> tokens, const Tagger& tagger);

// segment_and_tokenize followed by pos_tag.
std::vector<TaggedToken> analyze(std::string_view text, const Tagger& tagger);

}  // namespace crowdgrade::text
