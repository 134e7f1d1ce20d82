#include "crowdgrade/course.hpp"

#include "crowdgrade/csv.hpp"
#include "crowdgrade/errors.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace crowdgrade::course {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

// Strips a trailing comment that is not inside quotes.
std::string_view strip_comment(std::string_view line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        else if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

class Config {
public:
    Config(std::map<std::string, std::string> kv, std::string source) : kv_(std::move(kv)), source_(std::move(source)) {}

    std::optional<std::string> take(const std::string& key) {
        const auto it = kv_.find(key);
        if (it == kv_.end()) return std::nullopt;
        auto v = it->second;
        kv_.erase(it);
        return v;
    }

    std::string require(const std::string& key) {
        auto v = take(key);
        if (!v) throw MalformedInput(source_ + ": missing key '" + key + "'");
        return *v;
    }

    template <typename T>
    void number(const std::string& key, T& target) {
        const auto v = take(key);
        if (!v) return;
        T parsed{};
        const auto [end, ec] = std::from_chars(v->data(), v->data() + v->size(), parsed);
        if (ec != std::errc{} || end != v->data() + v->size())
            throw MalformedInput(source_ + ": '" + key + "' expects a number, got '" + *v + "'");
        target = parsed;
    }

    void boolean(const std::string& key, bool& target) {
        const auto v = take(key);
        if (!v) return;
        if (*v == "true") target = true;
        else if (*v == "false") target = false;
        else throw MalformedInput(source_ + ": '" + key + "' expects true or false");
    }

    void reject_leftovers() const {
        if (!kv_.empty()) throw MalformedInput(source_ + ": unknown key '" + kv_.begin()->first + "'");
    }

private:
    std::map<std::string, std::string> kv_;
    std::string source_;
};

fs::path resolve(const fs::path& base, const std::string& p) {
    const fs::path path(p);
    return path.is_absolute() ? path : (base / path).lexically_normal();
}

ojson mention_json(const aspects::AspectMention& m) {
    return {{"noun", m.noun_stem},
            {"adjective", m.adjective_stem},
            {"weight", m.adjective_weight},
            {"tag", std::string(text::to_string(m.adjective_pos))},
            {"context", m.context}};
}

}  // namespace

std::map<std::string, std::string> parse_key_values(std::istream& in, std::string_view source) {
    std::map<std::string, std::string> out;
    std::string section;
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& what) {
        return MalformedInput(std::string(source) + ":" + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = trim(strip_comment(line));
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']') throw fail("unterminated section header");
            section = std::string(trim(body.substr(1, body.size() - 2)));
            if (section.empty()) throw fail("empty section name");
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) throw fail("expected key = value");
        const auto key = trim(body.substr(0, eq));
        auto value = trim(body.substr(eq + 1));
        if (key.empty()) throw fail("empty key");
        std::string parsed;
        if (!value.empty() && value.front() == '"') {
            if (value.size() < 2 || value.back() != '"') throw fail("unterminated string");
            parsed = std::string(value.substr(1, value.size() - 2));
        } else {
            parsed = std::string(value);
        }
        const auto full = section.empty() ? std::string(key) : section + "." + std::string(key);
        if (!out.emplace(full, parsed).second) throw fail("duplicate key '" + full + "'");
    }
    return out;
}

void CourseRun::validate() const {
    if (course_id.empty()) throw InvalidArgument("course_id must not be empty");
    if (course_id.find_first_of("/\\") != std::string::npos || course_id == "." || course_id == "..")
        throw InvalidArgument("course_id must be a plain name");
    thresholds.validate();
    negation.validate();
    if (aspect_window < 1) throw InvalidArgument("aspect window must be at least 1");
    if (min_mentions < 1) throw InvalidArgument("min_mentions must be at least 1");
    if (!(min_abs_sentiment > 0.0)) throw InvalidArgument("min_abs_sentiment must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
}

CourseRun load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path.string());
    Config cfg(parse_key_values(in, path.string()), path.string());
    const auto base = path.has_parent_path() ? path.parent_path() : fs::path(".");

    CourseRun run;
    run.course_id = cfg.require("course_id");
    run.input = resolve(base, cfg.require("input"));
    run.output_dir = resolve(base, cfg.take("output_dir").value_or("out"));
    run.form_path = resolve(base, cfg.require("form"));
    if (auto rules = cfg.take("tagger_rules")) run.tagger_rules = resolve(base, *rules);

    const auto lex_dir = cfg.take("lexicon.dir");
    auto lex_path = [&](const char* name) {
        if (auto p = cfg.take(std::string("lexicon.") + name)) return resolve(base, *p);
        if (!lex_dir) throw MalformedInput(path.string() + ": set lexicon.dir or lexicon." + name);
        return resolve(base, *lex_dir) / (std::string(name) + ".txt");
    };
    run.lexicon = {lex_path("positive"), lex_path("negative"), lex_path("negate"), lex_path("flag"), lex_path("reset")};

    auto& t = run.thresholds;
    cfg.number("thresholds.min_keywords", t.min_keywords);
    cfg.number("thresholds.complex_min_keywords", t.complex_min_keywords);
    cfg.number("thresholds.reliable_keywords", t.reliable_keywords);
    cfg.number("thresholds.complex_negative_low_info_weight", t.complex_negative_low_info_weight);
    cfg.number("thresholds.complex_positive_low_info_weight", t.complex_positive_low_info_weight);
    cfg.number("thresholds.neg_low_info_keywords", t.neg_low_info_keywords);
    cfg.number("thresholds.pos_low_info", t.pos_low_info);
    cfg.number("section_weights.overall", t.section_weights.overall);
    cfg.number("section_weights.technical", t.section_weights.technical);
    cfg.number("section_weights.personalization", t.section_weights.personalization);
    cfg.number("section_weights.sentiment", t.section_weights.sentiment);
    cfg.number("negation.qualifier_window", run.negation.qualifier_window);
    cfg.boolean("negation.within_sentence", run.negation.within_sentence);
    cfg.number("aspects.window", run.aspect_window);
    cfg.number("aspects.min_mentions", run.min_mentions);
    cfg.number("aspects.min_abs_sentiment", run.min_abs_sentiment);
    cfg.number("report.alpha", run.alpha);
    cfg.reject_leftovers();

    run.form = corpus::load_form(run.form_path);
    t.grade_max = run.form.grade_max;
    run.validate();
    return run;
}

nlohmann::ordered_json ScoredComment::to_json() const {
    ojson mentions_json = ojson::array();
    for (const auto& m : mentions) mentions_json.push_back(mention_json(m));
    const auto ann = annotation.to_json();
    return {{"ref", ref},
            {"work_id", record.work_id},
            {"reviewer_id", record.reviewer_id},
            {"comment", record.comment},
            {"review_analytic", review_analytic ? ojson(*review_analytic) : ojson(nullptr)},
            {"metrics", ojson::parse(sentiment::to_json(analysis.score).dump())},
            {"markup", annotation.markup()},
            {"spans", ojson::parse(ann.at("spans").dump())},
            {"parroting", parroting},
            {"mentions", std::move(mentions_json)}};
}

std::vector<const ScoredComment*> CourseResults::comments_of(std::string_view work_id) const {
    std::vector<const ScoredComment*> out;
    for (const auto& c : comments)
        if (c.record.work_id == work_id) out.push_back(&c);
    return out;
}

std::vector<analytics::WorkSample> CourseResults::samples(grading::Scheme scheme) const {
    std::vector<analytics::WorkSample> out;
    for (const auto& agg : aggregates(scheme)) {
        analytics::WorkSample s{agg, {}};
        for (const auto* c : comments_of(agg.work_id)) s.comments.push_back(c->analysis.score);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<std::string> CourseResults::corpus_stems() const {
    std::vector<std::string> out;
    for (const auto& c : comments)
        for (const auto& t : c.analysis.tokens) out.push_back(t.token.stem);
    return out;
}

CourseResults run_course(const CourseRun& run, const text::Tagger& tagger, const lexicon::LexiconSet& lex) {
    run.validate();
    CourseResults res;
    corpus::ExportSchema schema;
    for (const auto& q : run.form.questions) schema.question_columns.push_back(q.id);
    const auto records = corpus::read_review_export(run.input, schema, &res.warnings);

    std::map<std::string, std::vector<corpus::ReviewRecord>> by_work;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        ScoredComment c;
        c.ref = "c" + std::to_string(i + 1);
        c.record = rec;
        c.analysis = sentiment::analyze_comment(rec.comment, tagger, lex, run.negation, run.thresholds);
        try {
            c.review_analytic = grading::grade_review(rec, run.form, run.thresholds.section_weights).score;
        } catch (const UnknownAnswer& e) {
            throw UnknownAnswer(run.input.string() + ": row " + std::to_string(i + 1) + ": " + e.what());
        }
        auto& score = c.analysis.score;
        if (score.score && c.review_analytic) score.dif = *score.score - *c.review_analytic;
        c.annotation = sentiment::annotate(rec.comment, score.contributions);
        auto extraction =
            aspects::extract_aspects(rec.comment, c.analysis.tokens, score.contributions, run.aspect_window, c.ref);
        c.mentions = extraction.mentions;
        c.parroting = aspects::parroting_score(c.mentions, run.form);
        res.mentions.insert(res.mentions.end(), extraction.mentions.begin(), extraction.mentions.end());
        res.orphans.insert(res.orphans.end(), extraction.orphans.begin(), extraction.orphans.end());

        if (!by_work.contains(rec.work_id)) res.work_ids.push_back(rec.work_id);
        by_work[rec.work_id].push_back(rec);
        res.comments.push_back(std::move(c));
    }

    for (const auto& work_id : res.work_ids) {
        const auto analytic = grading::grade_analytic(by_work[work_id], run.form, run.thresholds.section_weights);
        res.analytic[work_id] = analytic;
        std::vector<sentiment::CommentScore> scores;
        for (const auto* c : res.comments_of(work_id)) scores.push_back(c->analysis.score);
        res.simple.push_back(
            grading::build_work_aggregate(work_id, grading::Scheme::Simple, scores, analytic, run.thresholds));
        res.complex.push_back(
            grading::build_work_aggregate(work_id, grading::Scheme::Complex, scores, analytic, run.thresholds));
    }
    return res;
}

CourseResults run_course(const CourseRun& run) {
    const auto lex = corpus::load_lexicon_set(run.lexicon);
    const auto tagger = run.tagger_rules ? text::RuleTagger::from_rule_file(*run.tagger_rules) : text::RuleTagger();
    return run_course(run, tagger, lex);
}

SchemeChoice scheme_choice_from_string(std::string_view name) {
    if (name == "simple") return SchemeChoice::Simple;
    if (name == "complex") return SchemeChoice::Complex;
    if (name == "both") return SchemeChoice::Both;
    throw InvalidArgument("scheme must be simple, complex or both");
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << contents;
        out.flush();
        if (!out) throw IoError("cannot write " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string aggregates_file(grading::Scheme scheme) {
    return "aggregates_" + std::string(grading::to_string(scheme)) + ".jsonl";
}

std::string render_aggregates(const std::vector<grading::WorkAggregate>& works, double grade_max) {
    std::string out;
    for (const auto& w : works) out += w.to_json(grade_max).dump() + "\n";
    return out;
}

std::string render_top_keywords(const CourseResults& results) {
    std::vector<sentiment::CommentScore> scores;
    for (const auto& c : results.comments) scores.push_back(c.analysis.score);
    std::string out = "percent,most_positive,most_negative\n";
    for (double p : {1.0, 5.0, 10.0, 15.0, 20.0}) {
        const auto pos = analytics::top_percent_keywords(scores, p, analytics::Polarity::MostPositive, 3);
        const auto neg = analytics::top_percent_keywords(scores, p, analytics::Polarity::MostNegative, 3);
        out += csv::format_row({aspects::format_number(p) + "%", analytics::format_keywords(pos),
                                analytics::format_keywords(neg)}) +
               "\n";
    }
    return out;
}

namespace {

template <typename Body>
int guarded(std::ostream& err, Body body) {
    try {
        body();
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

void print_warnings(const corpus::Warnings& warnings, std::ostream& err) {
    for (const auto& w : warnings) err << "warning: " << w << '\n';
}

}  // namespace

int cmd_score(const CourseRun& run, SchemeChoice scheme, std::ostream& err) {
    return guarded(err, [&] {
        const auto results = run_course(run);
        print_warnings(results.warnings, err);

        std::map<std::string, std::string> files;
        const double gmax = run.thresholds.grade_max;
        if (scheme != SchemeChoice::Complex)
            files[aggregates_file(grading::Scheme::Simple)] = render_aggregates(results.simple, gmax);
        if (scheme != SchemeChoice::Simple)
            files[aggregates_file(grading::Scheme::Complex)] = render_aggregates(results.complex, gmax);
        if (scheme == SchemeChoice::Both)
            files[kSchemeDeltaFile] = analytics::scheme_delta_report(results.simple, results.complex).to_json().dump(2) + "\n";

        std::string comments, flags;
        for (const auto& c : results.comments) {
            comments += c.to_json().dump() + "\n";
            if (c.analysis.score.flags.empty()) continue;
            ojson stems = ojson::array();
            for (const auto& f : c.analysis.score.flags) stems.push_back(f.stem);
            flags += ojson{{"ref", c.ref},
                           {"work_id", c.record.work_id},
                           {"reviewer_id", c.record.reviewer_id},
                           {"flags", std::move(stems)},
                           {"comment", c.record.comment}}
                         .dump() +
                     "\n";
        }
        files[kCommentsFile] = std::move(comments);
        files[kFlagsFile] = std::move(flags);

        for (const auto& [name, body] : files) write_file_atomic(run.course_dir() / name, body);
    });
}

int cmd_aspects(const CourseRun& run, int min_mentions, double min_abs_sentiment, std::ostream& err) {
    return guarded(err, [&] {
        if (min_mentions < 1) throw InvalidArgument("min_mentions must be at least 1");
        if (!(min_abs_sentiment > 0.0)) throw InvalidArgument("min_abs_sentiment must be positive");
        const auto results = run_course(run);
        print_warnings(results.warnings, err);
        const auto candidates = aspects::propose_candidates(results.mentions, min_mentions, min_abs_sentiment, run.form);
        std::ostringstream out;
        aspects::write_candidate_csv(out, candidates);
        write_file_atomic(run.course_dir() / kCandidatesFile, out.str());
    });
}

int cmd_report(const CourseRun& run, std::ostream& err) {
    return guarded(err, [&] {
        const auto lex = corpus::load_lexicon_set(run.lexicon);
        const auto tagger = run.tagger_rules ? text::RuleTagger::from_rule_file(*run.tagger_rules) : text::RuleTagger();
        const auto results = run_course(run, tagger, lex);
        print_warnings(results.warnings, err);

        const auto samples = results.samples(grading::Scheme::Simple);
        const auto rows = analytics::correlation_report(samples, run.alpha);
        std::ostringstream csv_out;
        analytics::write_correlation_csv(csv_out, rows);
        ojson rows_json = ojson::array();
        for (const auto& r : rows) rows_json.push_back(analytics::to_json(r));

        const auto usage = lexicon::lexicon_usage(results.corpus_stems(), lex);
        const ojson usage_json = {{"pos_dict_used", usage.pos_dict_used}, {"neg_dict_used", usage.neg_dict_used}};

        std::map<std::string, std::string> files;
        files["correlations.csv"] = csv_out.str();
        files["correlations.json"] = rows_json.dump(2) + "\n";
        files["top_keywords.csv"] = render_top_keywords(results);
        files["lexicon_usage.json"] = usage_json.dump(2) + "\n";
        for (const auto& [name, body] : files) write_file_atomic(run.course_dir() / name, body);
    });
}

}  // namespace crowdgrade::course
