#include "crowdgrade/errors.hpp"
#include "crowdgrade/text_pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <unordered_set>

namespace crowdgrade::text {

namespace {

using WordTags = std::unordered_map<std::string_view, Pos>;

const WordTags& closed_class() {
    static const WordTags table = [] {
        WordTags t;
        for (auto w : {"the", "a", "an", "this", "these", "those", "each", "every", "some", "any", "no", "another",
                       "either", "neither", "all", "both"})
            t[w] = Pos::DT;
        for (auto w : {"i", "you", "he", "she", "it", "we", "they", "me", "him", "them", "us", "myself", "yourself",
                       "himself", "herself", "itself", "ourselves", "themselves", "her"})
            t[w] = Pos::PRP;
        for (auto w : {"my", "your", "his", "its", "our", "their"}) t[w] = Pos::PRPS;
        for (auto w : {"who", "whom", "what"}) t[w] = Pos::WP;
        t["whose"] = Pos::WPS;
        for (auto w : {"which", "whatever", "whichever"}) t[w] = Pos::WDT;
        for (auto w : {"how", "when", "where", "why"}) t[w] = Pos::WRB;
        for (auto w : {"of", "in", "on", "at", "by", "for", "with", "from", "about", "as", "into", "through",
                       "during", "before", "after", "above", "below", "between", "among", "under", "over", "without",
                       "within", "along", "across", "behind", "beyond", "toward", "towards", "upon", "against",
                       "despite", "although", "though", "because", "since", "unless", "while", "whereas", "if",
                       "than", "like", "whether", "per", "via", "throughout", "outside", "inside", "around", "near",
                       "onto", "off", "up", "down", "out", "that", "until", "besides", "except"})
            t[w] = Pos::IN;
        for (auto w : {"and", "or", "but", "nor", "&", "plus"}) t[w] = Pos::CC;
        t["to"] = Pos::TO;
        for (auto w : {"can", "could", "will", "would", "shall", "should", "may", "might", "must", "ca", "wo",
                       "'ll", "'d"})
            t[w] = Pos::MD;
        t["there"] = Pos::EX;
        for (auto w : {"be"}) t[w] = Pos::VB;
        for (auto w : {"am", "are", "'re", "'ve", "'m", "have", "do"}) t[w] = Pos::VBP;
        for (auto w : {"is", "has", "does"}) t[w] = Pos::VBZ;
        for (auto w : {"was", "were", "had", "did"}) t[w] = Pos::VBD;
        for (auto w : {"been", "done"}) t[w] = Pos::VBN;
        for (auto w : {"being", "having", "doing"}) t[w] = Pos::VBG;
        for (auto w : {"one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten", "hundred",
                       "thousand", "dozen"})
            t[w] = Pos::CD;
        for (auto w : {"oh", "wow", "yes", "ok", "okay", "yeah", "hey", "thanks"}) t[w] = Pos::UH;
        return t;
    }();
    return table;
}

const WordTags& open_class() {
    static const WordTags table = [] {
        WordTags t;
        for (auto w :
             {"not", "n't", "never", "very", "really", "quite", "too", "so", "also", "just", "only", "even", "still",
              "already", "always", "often", "sometimes", "usually", "rather", "almost", "nearly", "ever", "again",
              "however", "therefore", "thus", "moreover", "furthermore", "nevertheless", "instead", "perhaps",
              "maybe", "indeed", "actually", "definitely", "certainly", "probably", "overall", "here", "now",
              "then", "well", "yet", "far", "much", "enough", "else", "anyway", "otherwise", "somewhat", "hardly",
              "barely", "especially", "together", "away", "back", "later", "soon", "ahead", "once", "twice",
              "alright", "fast"})
            t[w] = Pos::RB;
        for (auto w : {"more", "less", "better", "worse", "fewer", "greater", "larger", "smaller", "higher",
                       "lower", "longer", "shorter", "harder", "easier", "clearer", "simpler", "nicer", "stronger",
                       "weaker", "drier", "faster", "slower"})
            t[w] = Pos::JJR;
        for (auto w : {"most", "least", "best", "worst", "fewest"}) t[w] = Pos::JJS;
        for (auto w :
             {"good", "great", "nice", "excellent", "fantastic", "awesome", "amazing", "outstanding", "wonderful",
              "brilliant", "superb", "impressive", "informative", "clear", "unclear", "lucid", "balanced",
              "relevant", "irrelevant", "successful", "unsuccessful", "practical", "impractical", "useful",
              "useless", "unique", "creative", "innovative", "original", "interesting", "engaging", "boring",
              "confusing", "dry", "difficult", "easy", "hard", "simple", "complex", "complicated", "short", "long",
              "brief", "concise", "detailed", "thorough", "comprehensive", "helpful", "unhelpful", "enjoyable",
              "fun", "funny", "entertaining", "professional", "unprofessional", "polished", "smooth", "rough",
              "awkward", "terrible", "horrible", "awful", "poor", "weak", "strong", "solid", "heavy", "light",
              "incorrect", "correct", "wrong", "right", "accurate", "inaccurate", "appropriate", "inappropriate",
              "adequate", "inadequate", "sufficient", "insufficient", "consistent", "inconsistent", "coherent",
              "incoherent", "logical", "illogical", "disorganized", "messy", "clean", "neat", "visual",
              "technical", "main", "key", "important", "significant", "major", "minor", "new", "old", "high", "low",
              "big", "small", "large", "huge", "tiny", "entire", "whole", "full", "empty", "several", "few",
              "many", "little", "other", "same", "different", "similar", "various", "previous", "next", "last",
              "first", "second", "third", "final", "early", "late", "real", "true", "false", "obvious", "evident",
              "apparent", "missing", "wordy", "vague", "specific", "general", "basic", "advanced", "fresh",
              "exciting", "inspiring", "convincing", "compelling", "slow", "quick", "rapid", "hesitant",
              "confident", "nervous", "calm", "loud", "quiet", "monotone", "monotonous", "repetitive", "redundant",
              "excessive", "limited", "able", "unable", "ready", "sure", "unsure", "certain", "uncertain",
              "possible", "impossible", "necessary", "unnecessary", "available", "own", "such", "lovely",
              "friendly", "likely", "unlikely", "fascinating", "intriguing", "captivating", "appealing",
              "disappointing", "frustrating", "annoying", "challenging", "demanding", "misleading",
              "overwhelming", "underwhelming", "refreshing", "striking", "surprising", "entertaining", "pleasing",
              "accessible", "memorable", "engaged", "elaborate", "adequate", "shallow", "deep", "broad", "narrow",
              "fair", "cool", "neat", "bland", "plain", "crisp", "sloppy", "lazy", "slick", "ample",
              "extensive", "minimal", "overall", "whole", "abstract", "concrete", "precise", "complete",
              "incomplete", "readable", "understandable", "confused", "bored", "extraordinary", "exceptional",
              "remarkable", "solid", "stellar", "superficial", "tedious", "lengthy", "dense", "cluttered",
              "insightful", "thoughtful", "fluent", "articulate", "inaudible", "secure", "pure", "mature", "obscure", "ugly",
              "silly", "costly", "lively", "timely", "scholarly"})
            t.emplace(w, Pos::JJ);
        // Nouns the suffix rules would get wrong.
        for (auto w :
             {"nothing", "something", "anything", "everything", "everyone", "someone", "anyone", "summary",
              "library", "vocabulary", "commentary", "topic", "music", "logic", "material", "tutorial",
              "proposal", "journal", "manual", "signal", "narrative", "perspective", "objective", "alternative",
              "initiative", "motive", "archive", "family", "assembly", "anomaly", "supply", "people", "idea",
              "history", "theory", "story", "category", "strategy", "technology", "industry", "half"})
            t.emplace(w, Pos::NN);
        return t;
    }();
    return table;
}

// Base forms that read as verbs by default.
const std::unordered_set<std::string_view>& verb_only() {
    static const std::unordered_set<std::string_view> words{
        "understand", "make", "give", "provide", "explain", "enjoy", "learn", "see", "know", "get", "take",
        "improve", "include", "follow", "speak", "seem", "keep", "want", "try", "go", "come", "find", "tell",
        "ask", "say", "describe", "discuss", "demonstrate", "create", "build", "develop", "implement", "suggest",
        "recommend", "appreciate", "clarify", "expand", "elaborate", "prepare", "organize", "summarize",
        "highlight", "mention", "capture", "convey", "engage", "confuse", "bore", "put", "let", "leave", "bring",
        "write", "spend", "continue", "consider", "notice", "hear", "listen", "compare", "apply", "teach",
        "address", "reduce", "avoid", "add", "think", "become", "allow", "enhance", "explore", "introduce",
        "present", "read", "cover", "use", "like", "love", "feel", "look", "show", "help", "need", "work",
        "talk", "lack", "miss", "focus", "design", "structure", "review", "flow", "cite", "reference", "support",
        "test", "plan", "practice", "change", "answer", "end", "start", "finish", "move", "run", "fix", "check",
        "increase", "cut", "point", "claim", "study", "research", "note", "watch", "open", "play", "hold",
        "interest", "detail", "outline", "slide", "question", "result", "comment", "interact", "connect",
        "relate", "depend", "communicate", "respond", "perform", "produce", "involve", "require", "contain",
        "remain", "appear", "happen", "matter", "act", "decide", "choose", "realize", "remember", "forget",
        "believe", "expect", "deliver", "handle", "manage", "solve", "define", "emphasize", "illustrate",
    };
    return words;
}

// Subset of verb-capable words that default to the noun reading.
const std::unordered_set<std::string_view>& noun_first() {
    static const std::unordered_set<std::string_view> words{
        "use", "need", "work", "talk", "lack", "focus", "design", "structure", "review", "flow", "reference",
        "support", "test", "plan", "practice", "change", "answer", "end", "start", "finish", "move", "run",
        "fix", "check", "increase", "cut", "point", "claim", "study", "research", "note", "watch", "play",
        "hold", "interest", "detail", "outline", "slide", "question", "result", "comment", "look", "matter",
        "act",
        "help", "show", "love", "feel", "present",
    };
    return words;
}

const WordTags& irregular_verbs() {
    static const WordTags table = [] {
        WordTags t;
        for (auto w : {"gave", "took", "saw", "knew", "went", "came", "began", "spoke", "wrote", "ran", "stood",
                       "grew", "drew", "chose", "forgot", "fell"})
            t[w] = Pos::VBD;
        for (auto w : {"given", "taken", "seen", "known", "gone", "begun", "spoken", "written", "shown", "grown",
                       "drawn", "chosen", "forgotten", "fallen", "gotten"})
            t[w] = Pos::VBN;
        // Ambiguous past forms default to VBD; context may turn them into VBN.
        for (auto w : {"made", "found", "told", "said", "kept", "felt", "thought", "brought", "held", "left",
                       "spent", "understood", "got", "stuck", "taught", "sent", "built", "meant", "lost", "led",
                       "paid", "heard", "caught", "bought"})
            t[w] = Pos::VBD;
        return t;
    }();
    return table;
}

bool is_be_or_have(std::string_view w) {
    static const std::unordered_set<std::string_view> forms{
        "be", "is", "am", "are", "was", "were", "been", "being", "'re", "'m", "has", "have", "had", "having", "'ve",
        "get", "got", "gets", "getting", "seem", "seemed", "seems", "felt", "feel", "feels", "look", "looked",
        "looks", "became", "become",
    };
    return forms.contains(w);
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    for (std::size_t pos; (pos = out.find("\xE2\x80\x99")) != std::string::npos;) out.replace(pos, 3, "'");
    return out;
}

bool ends_with(std::string_view w, std::string_view suffix) {
    return w.size() > suffix.size() && w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool is_number(std::string_view w) {
    bool digit = false;
    for (char c : w) {
        if (std::isdigit(static_cast<unsigned char>(c))) digit = true;
        else if (c != '.' && c != ',' && c != '%') return false;
    }
    return digit;
}

std::optional<Pos> punctuation_tag(std::string_view tok) {
    if (tok == "." || tok == "!" || tok == "?") return Pos::Period;
    if (tok == ",") return Pos::Comma;
    if (tok == ":" || tok == ";" || tok == "-" || tok == "\xE2\x80\x93" || tok == "\xE2\x80\x94" ||
        tok == "\xE2\x80\xA6")
        return Pos::Colon;
    if (tok == "(" || tok == "[" || tok == "{") return Pos::LeftParen;
    if (tok == ")" || tok == "]" || tok == "}") return Pos::RightParen;
    if (tok == "\xE2\x80\x9C" || tok == "\xE2\x80\x98" || tok == "`") return Pos::OpenQuote;
    if (tok == "\"" || tok == "'" || tok == "\xE2\x80\x9D") return Pos::CloseQuote;
    if (!is_word_text(tok)) return Pos::Symbol;
    return std::nullopt;
}

// The base form a -s/-ed/-ing word was built from, if it is a known verb.
bool inflects_known_verb(std::string_view w, std::size_t suffix_len) {
    if (w.size() <= suffix_len + 1) return false;
    std::string base(w.substr(0, w.size() - suffix_len));
    const auto& verbs = verb_only();
    if (verbs.contains(base)) return true;
    if (verbs.contains(base + "e")) return true;
    if (base.size() > 2 && base[base.size() - 1] == base[base.size() - 2] && verbs.contains(base.substr(0, base.size() - 1)))
        return true;
    if (base.size() > 1 && base.back() == 'i' && verbs.contains(base.substr(0, base.size() - 1) + "y")) return true;
    if (suffix_len == 2 && base.size() > 1 && base.back() == 'e' && verbs.contains(base.substr(0, base.size() - 1)))
        return true;  // "-es" plurals: "focuses"
    return false;
}

bool known_adjective_base(std::string_view base) {
    const auto& adj = open_class();
    auto it = adj.find(base);
    return it != adj.end() && it->second == Pos::JJ;
}

// Suffix match that leaves at least three characters of stem.
bool has_suffix(std::string_view w, std::string_view suffix) {
    return w.size() >= suffix.size() + 3 && w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Pos suffix_tag(std::string_view w) {
    if (w.size() <= 3) return Pos::NN;
    if (has_suffix(w, "ly")) return Pos::RB;
    for (auto s : {"ness", "ment", "tion", "sion", "ity", "ance", "ence", "ism", "ship", "hood", "dom", "ure",
                   "age", "ist", "logy", "graphy"})
        if (has_suffix(w, s)) return Pos::NN;
    for (auto s : {"nesses", "ments", "tions", "sions", "ities", "ances", "ences", "isms", "ships", "ures", "ages",
                   "ists"})
        if (has_suffix(w, s)) return Pos::NNS;
    for (auto s : {"ous", "ive", "ful", "able", "ible", "al", "ic", "less", "ish", "ary", "ical", "esque"})
        if (has_suffix(w, s)) return Pos::JJ;
    if (ends_with(w, "iest") && w.size() >= 5 && known_adjective_base(std::string(w.substr(0, w.size() - 4)) + "y")) return Pos::JJS;
    if (has_suffix(w, "est") && w.size() > 5) {
        const std::string_view base = w.substr(0, w.size() - 3);
        if (known_adjective_base(base) || known_adjective_base(std::string(base) + "e") ||
            (base.size() > 2 && base[base.size() - 1] == base[base.size() - 2] &&
             known_adjective_base(base.substr(0, base.size() - 1))))
            return Pos::JJS;
    }
    if (ends_with(w, "ier") && w.size() >= 5 && known_adjective_base(std::string(w.substr(0, w.size() - 3)) + "y")) return Pos::JJR;
    if (has_suffix(w, "er") && known_adjective_base(w.substr(0, w.size() - 2))) return Pos::JJR;
    if (has_suffix(w, "ing")) return Pos::VBG;
    if (has_suffix(w, "ed")) return Pos::VBD;
    if (has_suffix(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us") && !ends_with(w, "is")) return Pos::NNS;
    for (auto s : {"ize", "ise", "ify"})
        if (has_suffix(w, s)) return Pos::VB;
    return Pos::NN;
}

bool is_subject_pronoun(std::string_view w) {
    return w == "i" || w == "you" || w == "we" || w == "they";
}

bool is_third_person_subject(std::string_view w) {
    return w == "he" || w == "she" || w == "it" || w == "this" || w == "that" || w == "who" || w == "which";
}

bool takes_nominal(Pos p) {
    return p == Pos::DT || p == Pos::PRPS || is_adjective(p) || p == Pos::POS || p == Pos::PDT || p == Pos::CD;
}

}  // namespace

RuleTagger::RuleTagger() = default;

RuleTagger RuleTagger::from_rule_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ModelMissing("tagger rule file not found: " + path.string());
    RuleTagger tagger;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw MalformedInput(path.string() + ":" + std::to_string(line_no) + ": expected surface<TAB>tag");
        const auto pos = pos_from_string(line.substr(tab + 1));
        if (!pos)
            throw MalformedInput(path.string() + ":" + std::to_string(line_no) + ": unknown tag '" +
                                 line.substr(tab + 1) + "'");
        tagger.add_override(line.substr(0, tab), *pos);
    }
    return tagger;
}

void RuleTagger::add_override(std::string surface, Pos pos) { overrides_[lower(surface)] = pos; }

Pos RuleTagger::lexical_tag(std::string_view raw, bool sentence_initial) const {
    if (auto p = punctuation_tag(raw)) return *p;
    const std::string w = lower(raw);
    if (auto it = overrides_.find(w); it != overrides_.end()) return it->second;
    if (w == "n't") return Pos::RB;
    if (w == "'s") return Pos::POS;
    if (is_number(w)) return Pos::CD;
    if (auto it = closed_class().find(w); it != closed_class().end()) return it->second;
    if (auto it = open_class().find(w); it != open_class().end()) return it->second;
    if (auto it = irregular_verbs().find(w); it != irregular_verbs().end()) return it->second;
    if (verb_only().contains(w)) return noun_first().contains(w) ? Pos::NN : Pos::VB;

    const bool capitalized = std::isupper(static_cast<unsigned char>(raw.front())) != 0;
    if (capitalized && !sentence_initial) return Pos::NNP;

    return suffix_tag(w);
}

std::vector<Pos> RuleTagger::tag(std::span<const RawToken> tokens) const {
    const std::size_t n = tokens.size();
    std::vector<Pos> tags(n);
    std::vector<std::string> words(n);
    for (std::size_t i = 0; i < n; ++i) {
        words[i] = lower(tokens[i].text);
        const bool initial = i == 0 || tokens[i - 1].sentence_index != tokens[i].sentence_index;
        tags[i] = lexical_tag(tokens[i].text, initial);
    }

    auto prev_index = [&](std::size_t i, bool skip_adverbs) -> std::optional<std::size_t> {
        while (i > 0) {
            --i;
            if (tokens[i].sentence_index != tokens[i + 1].sentence_index) return std::nullopt;
            if (skip_adverbs && is_adverb(tags[i])) continue;
            return i;
        }
        return std::nullopt;
    };
    auto next_tag = [&](std::size_t i) -> std::optional<Pos> {
        if (i + 1 >= n || tokens[i + 1].sentence_index != tokens[i].sentence_index) return std::nullopt;
        return tags[i + 1];
    };

    for (std::size_t i = 0; i < n; ++i) {
        if (overrides_.contains(words[i]) || is_punctuation(tags[i])) continue;
        const std::string& w = words[i];
        const auto p = prev_index(i, false);
        const auto pv = prev_index(i, true);
        const std::optional<Pos> prev = p ? std::optional(tags[*p]) : std::nullopt;
        const std::optional<Pos> prev_skip = pv ? std::optional(tags[*pv]) : std::nullopt;
        const std::string prev_word = pv ? words[*pv] : std::string{};
        const auto next = next_tag(i);
        const bool next_nominal = next && (is_noun(*next) || is_adjective(*next));
        const bool base_verb = verb_only().contains(w) || w == "have" || w == "be" || w == "do";

        if (w == "'s") {
            tags[i] = (prev && (*prev == Pos::PRP || *prev == Pos::DT || *prev == Pos::EX || *prev == Pos::WP ||
                                *prev == Pos::WDT))
                          ? Pos::VBZ
                          : Pos::POS;
            continue;
        }
        if (w == "her") {
            tags[i] = next_nominal ? Pos::PRPS : Pos::PRP;
            continue;
        }
        if (w == "all" && next && (*next == Pos::DT || *next == Pos::PRPS)) {
            tags[i] = Pos::PDT;
            continue;
        }
        if (w == "that") {
            if (prev && is_noun(*prev) && next && (is_verb(*next) || *next == Pos::MD)) tags[i] = Pos::WDT;
            else if (!prev && next && (is_verb(*next) || *next == Pos::MD)) tags[i] = Pos::DT;
            else if (next && is_noun(*next)) tags[i] = Pos::DT;
            else tags[i] = Pos::IN;
            continue;
        }
        if (w == "there") {
            tags[i] = (i + 1 < n && is_be_or_have(words[i + 1])) ? Pos::EX : Pos::RB;
            continue;
        }
        if (w == "more" || w == "less" || w == "most" || w == "least") {
            const bool comparative = w == "more" || w == "less";
            if (next && (is_adjective(*next) || is_adverb(*next) || *next == Pos::VBN)) {
                const auto after = next_tag(i + 1);
                const bool modifies_noun = after && is_noun(*after) && is_adjective(*next);
                if (modifies_noun) tags[i] = comparative ? Pos::JJR : Pos::JJS;
                else tags[i] = comparative ? Pos::RBR : Pos::RBS;
            }
            continue;
        }
        if (w == "overall") {
            tags[i] = (next && is_noun(*next)) ? Pos::JJ : Pos::RB;
            continue;
        }
        if ((w == "up" || w == "out" || w == "off" || w == "down") && prev && is_verb(*prev)) {
            tags[i] = Pos::RP;
            continue;
        }
        if ((w == "on" || w == "in" || w == "over") && prev && is_verb(*prev) && (!next || is_punctuation(*next))) {
            tags[i] = Pos::RP;
            continue;
        }
        if (w == "enough" && next && is_noun(*next)) {
            tags[i] = Pos::JJ;
            continue;
        }
        if (w == "like") {
            if (pv && (is_subject_pronoun(prev_word) || *prev_skip == Pos::NNS)) tags[i] = Pos::VBP;
            else if (prev_skip && (*prev_skip == Pos::TO || *prev_skip == Pos::MD)) tags[i] = Pos::VB;
            continue;
        }
        if (w == "have" || w == "do") {
            if (prev_skip && (*prev_skip == Pos::TO || *prev_skip == Pos::MD)) tags[i] = Pos::VB;
            continue;
        }

        // Base verbs after TO / modals, and after subject pronouns or plural subjects.
        if (base_verb && (tags[i] == Pos::NN || tags[i] == Pos::VB || tags[i] == Pos::VBP)) {
            if (prev_skip && (*prev_skip == Pos::TO || *prev_skip == Pos::MD)) {
                tags[i] = Pos::VB;
                continue;
            }
            if (pv && (is_subject_pronoun(prev_word) || *prev_skip == Pos::NNS || *prev_skip == Pos::NNPS)) {
                tags[i] = Pos::VBP;
                continue;
            }
            if (!p && next && (*next == Pos::DT || is_adjective(*next) || *next == Pos::PRP || *next == Pos::PRPS ||
                               is_noun(*next))) {
                tags[i] = Pos::VB;  // imperative at sentence start
                continue;
            }
            if (prev && takes_nominal(*prev)) {
                tags[i] = Pos::NN;
                continue;
            }
        }

        // -s forms of known verbs after a singular subject.
        if ((tags[i] == Pos::NNS || tags[i] == Pos::VBZ) && w.size() > 3 && w.back() == 's' &&
            (inflects_known_verb(w, 1) || inflects_known_verb(w, 2))) {
            const bool singular_subject =
                prev_skip && (*prev_skip == Pos::NN || *prev_skip == Pos::NNP || *prev_skip == Pos::WDT ||
                              (*prev_skip == Pos::PRP && is_third_person_subject(prev_word)) ||
                              (*prev_skip == Pos::DT && is_third_person_subject(prev_word)));
            if (singular_subject) tags[i] = Pos::VBZ;
            else if (prev && takes_nominal(*prev)) tags[i] = Pos::NNS;
            continue;
        }

        // Past forms: participle after auxiliaries/linking verbs, adjective before nouns.
        if (tags[i] == Pos::VBD) {
            if (prev_skip && (is_verb(*prev_skip) || *prev_skip == Pos::MD) && is_be_or_have(prev_word)) {
                tags[i] = Pos::VBN;
            } else if (prev_skip && is_verb(*prev_skip)) {
                tags[i] = Pos::VBN;
            } else if (prev && takes_nominal(*prev) && next && is_noun(*next)) {
                tags[i] = Pos::JJ;
            } else if (prev_skip && *prev_skip == Pos::CC &&
                       (!next || is_punctuation(*next) || *next == Pos::CC || *next == Pos::IN)) {
                tags[i] = Pos::VBN;
            } else if (prev_skip && *prev_skip == Pos::IN && prev_word == "by") {
                tags[i] = Pos::VBN;
            }
            continue;
        }

        if (tags[i] == Pos::VBG && prev && (*prev == Pos::DT || *prev == Pos::PRPS)) {
            tags[i] = (next && is_noun(*next)) ? Pos::JJ : Pos::NN;
            continue;
        }
    }
    return tags;
}

}  // namespace crowdgrade::text
