#pragma once

#include "crowdgrade/corpus_io.hpp"
#include "crowdgrade/sentiment.hpp"
#include "crowdgrade/text_pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace testsupport {

namespace fs = std::filesystem;
using namespace crowdgrade;

inline fs::path data_dir() { return CROWDGRADE_DATA_DIR; }
inline fs::path test_dir() { return CROWDGRADE_TEST_DIR; }

inline corpus::LexiconPaths seed_lexicon_paths() {
    const auto d = data_dir() / "lexicon";
    return {d / "positive.txt", d / "negative.txt", d / "negate.txt", d / "flag.txt", d / "reset.txt"};
}

inline const lexicon::LexiconSet& seed_lexicon() {
    static const auto lex = corpus::load_lexicon_set(seed_lexicon_paths());
    return lex;
}

inline const text::RuleTagger& rule_tagger() {
    static const auto tagger = text::RuleTagger::from_rule_file(data_dir() / "tagger_rules.tsv");
    return tagger;
}

inline sentiment::CommentAnalysis analyze(std::string_view comment, sentiment::NegationConfig cfg = {},
                                          grading::ScoringThresholds t = {}) {
    return sentiment::analyze_comment(comment, rule_tagger(), seed_lexicon(), cfg, t);
}

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("crowdgrade-" + tag + "-" + std::to_string(rd()));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const fs::path& path() const { return path_; }
    fs::path operator/(const std::string& name) const { return path_ / name; }

private:
    fs::path path_;
};

inline void write_text(const fs::path& p, const std::string& body) {
    fs::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << body;
}

inline std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// A hand-built token with roles looked up in `lex`.
inline sentiment::AnalyzedToken make_token(const std::string& stem, text::Pos pos, std::size_t sentence,
                                           const lexicon::LexiconSet& lex, std::size_t offset = 0) {
    text::TaggedToken t;
    t.surface = stem;
    t.stem = stem;
    t.pos = pos;
    t.span = {offset, offset + stem.size()};
    t.sentence_index = sentence;
    return {t, lexicon::classify_token(t, lex)};
}

}  // namespace testsupport
