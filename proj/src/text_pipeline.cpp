#include "crowdgrade/text_pipeline.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace crowdgrade::text {

namespace {

constexpr std::array<std::pair<Pos, std::string_view>, 41> kTagNames{{
    {Pos::NN, "NN"},      {Pos::NNS, "NNS"},       {Pos::NNP, "NNP"},     {Pos::NNPS, "NNPS"},
    {Pos::JJ, "JJ"},      {Pos::JJR, "JJR"},       {Pos::JJS, "JJS"},     {Pos::RB, "RB"},
    {Pos::RBR, "RBR"},    {Pos::RBS, "RBS"},       {Pos::VB, "VB"},       {Pos::VBD, "VBD"},
    {Pos::VBG, "VBG"},    {Pos::VBN, "VBN"},       {Pos::VBP, "VBP"},     {Pos::VBZ, "VBZ"},
    {Pos::MD, "MD"},      {Pos::DT, "DT"},         {Pos::PDT, "PDT"},     {Pos::IN, "IN"},
    {Pos::CC, "CC"},      {Pos::TO, "TO"},         {Pos::RP, "RP"},       {Pos::EX, "EX"},
    {Pos::UH, "UH"},      {Pos::CD, "CD"},         {Pos::POS, "POS"},     {Pos::PRP, "PRP"},
    {Pos::PRPS, "PRP$"},  {Pos::WDT, "WDT"},       {Pos::WP, "WP"},       {Pos::WPS, "WP$"},
    {Pos::WRB, "WRB"},    {Pos::Period, "."},      {Pos::Comma, ","},     {Pos::Colon, ":"},
    {Pos::LeftParen, "-LRB-"}, {Pos::RightParen, "-RRB-"}, {Pos::OpenQuote, "``"},
    {Pos::CloseQuote, "''"},   {Pos::Symbol, "SYM"},
}};

bool is_space(unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

// Multi-byte sequences that must not be swallowed into words.
enum class Special { None, Apostrophe, OpenQuote, CloseQuote, Dash, Ellipsis, NoBreakSpace };

struct SpecialMatch {
    Special kind = Special::None;
    std::size_t length = 0;
};

SpecialMatch special_at(std::string_view s, std::size_t i) {
    if (i + 1 < s.size() && static_cast<unsigned char>(s[i]) == 0xC2 && static_cast<unsigned char>(s[i + 1]) == 0xA0)
        return {Special::NoBreakSpace, 2};
    if (i + 2 < s.size() && static_cast<unsigned char>(s[i]) == 0xE2 && static_cast<unsigned char>(s[i + 1]) == 0x80) {
        switch (static_cast<unsigned char>(s[i + 2])) {
            case 0x98: return {Special::OpenQuote, 3};
            case 0x99: return {Special::Apostrophe, 3};
            case 0x9C: return {Special::OpenQuote, 3};
            case 0x9D: return {Special::CloseQuote, 3};
            case 0x93:
            case 0x94: return {Special::Dash, 3};
            case 0xA6: return {Special::Ellipsis, 3};
            default: break;
        }
    }
    return {};
}

bool is_word_byte(std::string_view s, std::size_t i) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (std::isalnum(c)) return true;
    return c >= 0x80 && special_at(s, i).kind == Special::None;
}

bool is_digit_at(std::string_view s, std::size_t i) {
    return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

constexpr std::array<std::string_view, 15> kAbbreviations{
    "e.g.", "i.e.", "etc.", "vs.", "mr.", "mrs.", "ms.", "dr.", "prof.", "fig.", "approx.", "cf.", "al.", "jr.", "sr.",
};

std::size_t match_abbreviation(std::string_view s, std::size_t i) {
    if (i > 0 && is_word_byte(s, i - 1)) return 0;
    for (auto abbr : kAbbreviations) {
        if (i + abbr.size() > s.size()) continue;
        if (ascii_lower(s.substr(i, abbr.size())) != abbr) continue;
        const std::size_t after = i + abbr.size();
        if (after < s.size() && std::isalnum(static_cast<unsigned char>(s[after]))) continue;
        return abbr.size();
    }
    return 0;
}

// Byte length of a contraction suffix at the end of `word`, or 0.
std::size_t contraction_suffix(std::string_view word) {
    const std::string lower = ascii_lower(word);
    auto ends = [&](std::string_view suffix) {
        return lower.size() > suffix.size() && lower.compare(lower.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    for (std::string_view apostrophe : {std::string_view{"'"}, std::string_view{"\xE2\x80\x99"}}) {
        const std::string nt = "n" + std::string(apostrophe) + "t";
        if (ends(nt)) return nt.size();
        for (std::string_view tail : {"s", "re", "ve", "ll", "d", "m"}) {
            const std::string suffix = std::string(apostrophe) + std::string(tail);
            if (ends(suffix)) return suffix.size();
        }
    }
    return 0;
}

bool is_terminator(std::string_view tok) { return tok == "." || tok == "!" || tok == "?" || tok == ";"; }

bool is_vowel_at(std::string_view w, std::size_t i) {
    switch (w[i]) {
        case 'a': case 'e': case 'i': case 'o': case 'u': return true;
        case 'y': return i > 0 && !is_vowel_at(w, i - 1);
        default: return false;
    }
}

bool has_vowel(std::string_view w) {
    for (std::size_t i = 0; i < w.size(); ++i)
        if (is_vowel_at(w, i)) return true;
    return false;
}

bool ends_with(std::string_view w, std::string_view suffix) {
    return w.size() >= suffix.size() && w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string undouble(std::string base) {
    const std::size_t n = base.size();
    if (n >= 4 && base[n - 1] == base[n - 2] && !is_vowel_at(base, n - 1) && base[n - 1] != 'l' &&
        base[n - 1] != 's' && base[n - 1] != 'z') {
        base.pop_back();
    }
    return base;
}

// Words whose trailing -s / -ed / -ing is not an inflection.
bool is_invariant(std::string_view w) {
    static constexpr std::array<std::string_view, 22> kWords{
        "always", "perhaps", "whereas", "does", "goes", "yes", "news", "series", "species", "lens",
        "towards", "afterwards", "sometimes", "besides", "nevertheless", "unless", "during", "nothing",
        "something", "anything", "everything", "morning",
    };
    return std::find(kWords.begin(), kWords.end(), w) != kWords.end();
}

std::string strip_once(std::string w) {
    if (w.size() <= 3 || is_invariant(w)) return w;
    if (ends_with(w, "sses")) {
        w.resize(w.size() - 2);
    } else if (ends_with(w, "ies")) {
        if (w.size() > 4) {
            w.resize(w.size() - 3);
            w += 'y';
        } else {
            w.pop_back();
        }
    } else if (ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us") && !ends_with(w, "is") &&
               !ends_with(w, "'s")) {
        w.pop_back();
        return w;
    }

    if (ends_with(w, "ing")) {
        std::string base = w.substr(0, w.size() - 3);
        if (base.size() >= 3 && has_vowel(base)) return undouble(std::move(base));
    } else if (ends_with(w, "ied") && w.size() > 4) {
        return w.substr(0, w.size() - 3) + "y";
    } else if (ends_with(w, "ed") && w[w.size() - 3] != 'e') {
        std::string base = w.substr(0, w.size() - 2);
        if (base.size() >= 3 && has_vowel(base)) return undouble(std::move(base));
    }
    return w;
}

}  // namespace

std::string_view to_string(Pos pos) {
    for (const auto& [p, name] : kTagNames)
        if (p == pos) return name;
    return "NN";
}

std::optional<Pos> pos_from_string(std::string_view tag) {
    for (const auto& [p, name] : kTagNames)
        if (name == tag) return p;
    return std::nullopt;
}

bool is_noun(Pos p) { return p == Pos::NN || p == Pos::NNS || p == Pos::NNP || p == Pos::NNPS; }
bool is_adjective(Pos p) { return p == Pos::JJ || p == Pos::JJR || p == Pos::JJS; }
bool is_adverb(Pos p) { return p == Pos::RB || p == Pos::RBR || p == Pos::RBS; }
bool is_verb(Pos p) {
    return p == Pos::VB || p == Pos::VBD || p == Pos::VBG || p == Pos::VBN || p == Pos::VBP || p == Pos::VBZ;
}
bool is_punctuation(Pos p) { return p >= Pos::Period; }

bool is_word_text(std::string_view token) {
    if (token.empty()) return false;
    if (token.front() == '\'') return token.size() > 1;
    if (special_at(token, 0).kind == Special::Apostrophe) return token.size() > 3;
    return is_word_byte(token, 0);
}

std::vector<RawToken> segment_and_tokenize(std::string_view text) {
    std::vector<RawToken> tokens;
    std::size_t sentence = 0;
    bool pending_break = false;

    auto emit = [&](std::size_t start, std::size_t end) {
        if (pending_break) {
            ++sentence;
            pending_break = false;
        }
        tokens.push_back(RawToken{sentence, std::string(text.substr(start, end - start)), Span{start, end}});
    };

    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        const auto special = special_at(text, i);
        if (is_space(static_cast<unsigned char>(text[i])) || special.kind == Special::NoBreakSpace) {
            i += special.kind == Special::NoBreakSpace ? 2 : 1;
            continue;
        }
        if (const std::size_t abbr = match_abbreviation(text, i); abbr > 0) {
            emit(i, i + abbr);
            i += abbr;
            continue;
        }
        if (is_word_byte(text, i)) {
            std::size_t j = i + 1;
            while (j < n) {
                if (is_word_byte(text, j)) {
                    ++j;
                } else if ((text[j] == '\'' || text[j] == '-') && j + 1 < n && is_word_byte(text, j + 1)) {
                    ++j;
                } else if (special_at(text, j).kind == Special::Apostrophe && j + 3 < n && is_word_byte(text, j + 3)) {
                    j += 3;
                } else if ((text[j] == '.' || text[j] == ',') && is_digit_at(text, j - 1) && is_digit_at(text, j + 1)) {
                    ++j;
                } else {
                    break;
                }
            }
            const std::string_view word = text.substr(i, j - i);
            if (ascii_lower(word) == "cannot") {
                emit(i, i + 3);
                emit(i + 3, j);
            } else if (const std::size_t suffix = contraction_suffix(word); suffix > 0) {
                emit(i, j - suffix);
                emit(j - suffix, j);
            } else {
                emit(i, j);
            }
            i = j;
            continue;
        }
        const std::size_t len = special.kind != Special::None ? special.length : 1;
        emit(i, i + len);
        const std::string_view tok = text.substr(i, len);
        i += len;
        if (is_terminator(tok) && (i == n || is_space(static_cast<unsigned char>(text[i])) ||
                                   special_at(text, i).kind == Special::NoBreakSpace)) {
            pending_break = true;
        }
    }
    return tokens;
}

std::string stem(std::string_view word) {
    std::string w = ascii_lower(word);
    // Typographic apostrophes normalise to ASCII so "n’t" and "n't" share a stem.
    for (std::size_t pos; (pos = w.find("\xE2\x80\x99")) != std::string::npos;) w.replace(pos, 3, "'");
    if (!is_word_text(w)) return w;
    const bool alphabetic = std::all_of(w.begin(), w.end(), [](char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '-' || c == '\'';
    });
    if (!alphabetic) return w;
    for (;;) {
        std::string next = strip_once(w);
        if (next == w) return w;
        w = std::move(next);
    }
}

std::vector<TaggedToken> pos_tag(std::span<const RawToken> tokens, const Tagger& tagger) {
    const std::vector<Pos> tags = tagger.tag(tokens);
    std::vector<TaggedToken> out;
    out.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto& t = tokens[i];
        const Pos pos = tags.at(i);
        out.push_back(TaggedToken{t.text, is_punctuation(pos) ? t.text : stem(t.text), pos, t.span, t.sentence_index});
    }
    return out;
}

std::vector<TaggedToken> analyze(std::string_view text, const Tagger& tagger) {
    const auto raw = segment_and_tokenize(text);
    return pos_tag(raw, tagger);
}

}  // namespace crowdgrade::text
