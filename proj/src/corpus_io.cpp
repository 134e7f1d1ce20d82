#include "crowdgrade/corpus_io.hpp"

#include "crowdgrade/csv.hpp"
#include "crowdgrade/errors.hpp"
#include "crowdgrade/text_pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <unordered_map>

namespace crowdgrade::corpus {

namespace {

using ojson = nlohmann::ordered_json;

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

void warn(Warnings* warnings, std::string message) {
    if (warnings) warnings->push_back(std::move(message));
}

MalformedInput row_error(std::size_t row, const std::string& what) {
    return MalformedInput("row " + std::to_string(row) + ": " + what);
}

// `Q1=a2;Q2=a1`. Empty cell means no answers.
void unpack_responses(std::string_view cell, std::size_t row, ReviewRecord& rec) {
    std::size_t pos = 0;
    while (pos <= cell.size()) {
        const auto next = std::min(cell.find(';', pos), cell.size());
        const auto pair = trim(cell.substr(pos, next - pos));
        pos = next + 1;
        if (pair.empty()) continue;
        const auto eq = pair.find('=');
        if (eq == std::string_view::npos || eq == 0 || eq + 1 == pair.size())
            throw row_error(row, "bad response pair '" + std::string(pair) + "'");
        rec.analytic_responses.emplace_back(std::string(trim(pair.substr(0, eq))),
                                            std::string(trim(pair.substr(eq + 1))));
    }
}

std::string pack_responses(const ReviewRecord& rec) {
    std::string out;
    for (const auto& [q, a] : rec.analytic_responses) {
        if (!out.empty()) out += ';';
        out += q + '=' + a;
    }
    return out;
}

void check_record(const ReviewRecord& rec, std::size_t row) {
    if (rec.work_id.empty()) throw row_error(row, "missing work_id");
    if (rec.reviewer_id.empty()) throw row_error(row, "missing reviewer_id");
    std::set<std::string_view> seen;
    for (const auto& [q, a] : rec.analytic_responses)
        if (!seen.insert(q).second) throw row_error(row, "question '" + q + "' answered twice");
}

std::vector<ReviewRecord> parse_csv(std::istream& in, const ExportSchema& schema, Warnings* warnings) {
    auto rows = csv::read_all(in);
    std::erase_if(rows, [](const csv::Row& r) { return r.size() == 1 && r[0].empty(); });
    if (rows.empty()) throw MalformedInput("review export has no header row");

    const auto& header = rows.front();
    std::unordered_map<std::string, std::size_t> column;
    for (std::size_t i = 0; i < header.size(); ++i) column.emplace(std::string(trim(header[i])), i);

    for (const char* required : {"work_id", "reviewer_id", "comment"})
        if (!column.contains(required)) throw MalformedInput(std::string("review export lacks column '") + required + "'");
    // Per-question columns are required unless answers come packed.
    if (!column.contains("responses"))
        for (const auto& q : schema.question_columns)
            if (!column.contains(q)) throw MalformedInput("review export lacks question column '" + q + "'");

    const std::set<std::string, std::less<>> known_questions(schema.question_columns.begin(),
                                                             schema.question_columns.end());
    for (const auto& raw : header) {
        const auto name = trim(raw);
        if (name == "work_id" || name == "reviewer_id" || name == "comment" || name == "responses" ||
            name == "submitted_at" || known_questions.contains(name))
            continue;
        warn(warnings, "ignoring unknown column '" + std::string(name) + "'");
    }

    std::vector<ReviewRecord> out;
    out.reserve(rows.size() - 1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& cells = rows[r];
        auto cell = [&](std::string_view name) -> std::optional<std::string> {
            const auto it = column.find(std::string(name));
            if (it == column.end() || it->second >= cells.size()) return std::nullopt;
            return cells[it->second];
        };
        ReviewRecord rec;
        rec.work_id = std::string(trim(cell("work_id").value_or("")));
        rec.reviewer_id = std::string(trim(cell("reviewer_id").value_or("")));
        const auto comment = cell("comment");
        if (!comment) throw row_error(r, "missing comment field");
        rec.comment = *comment;
        if (auto packed = cell("responses")) unpack_responses(*packed, r, rec);
        for (const auto& q : schema.question_columns) {
            const auto answer = trim(cell(q).value_or(""));
            if (!answer.empty()) rec.analytic_responses.emplace_back(q, std::string(answer));
        }
        if (auto ts = cell("submitted_at"); ts && !trim(*ts).empty()) rec.submitted_at = std::string(trim(*ts));
        check_record(rec, r);
        out.push_back(std::move(rec));
    }
    return out;
}

std::string json_string(const ojson& obj, const char* key, std::size_t row, bool required) {
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        if (required) throw row_error(row, std::string("missing ") + key);
        return {};
    }
    if (it->is_string()) return it->get<std::string>();
    if (it->is_number()) return it->dump();
    throw row_error(row, std::string(key) + " must be a string");
}

std::vector<ReviewRecord> parse_json(std::istream& in, const ExportSchema& schema, Warnings* warnings) {
    ojson doc;
    try {
        doc = ojson::parse(in);
    } catch (const ojson::parse_error& e) {
        throw MalformedInput(std::string("review export is not valid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw MalformedInput("review export must be a JSON array");

    const std::set<std::string, std::less<>> known_questions(schema.question_columns.begin(),
                                                             schema.question_columns.end());
    std::set<std::string> unknown_keys;
    std::vector<ReviewRecord> out;
    out.reserve(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const std::size_t row = i + 1;
        const auto& obj = doc[i];
        if (!obj.is_object()) throw row_error(row, "expected an object");
        ReviewRecord rec;
        rec.work_id = json_string(obj, "work_id", row, true);
        rec.reviewer_id = json_string(obj, "reviewer_id", row, true);
        if (!obj.contains("comment")) throw row_error(row, "missing comment");
        rec.comment = json_string(obj, "comment", row, false);

        if (const auto it = obj.find("responses"); it != obj.end() && !it->is_null()) {
            if (it->is_string()) {
                unpack_responses(it->get<std::string>(), row, rec);
            } else if (it->is_object()) {
                for (const auto& [q, a] : it->items()) {
                    if (!a.is_string()) throw row_error(row, "answer for '" + q + "' must be a string");
                    rec.analytic_responses.emplace_back(q, a.get<std::string>());
                }
            } else {
                throw row_error(row, "responses must be an object or a packed string");
            }
        }
        for (const auto& q : schema.question_columns) {
            const auto a = json_string(obj, q.c_str(), row, false);
            if (!a.empty()) rec.analytic_responses.emplace_back(q, a);
        }
        if (const auto ts = json_string(obj, "submitted_at", row, false); !ts.empty()) rec.submitted_at = ts;

        for (const auto& [key, value] : obj.items()) {
            if (key == "work_id" || key == "reviewer_id" || key == "comment" || key == "responses" ||
                key == "submitted_at" || known_questions.contains(key))
                continue;
            unknown_keys.insert(key);
        }
        check_record(rec, row);
        out.push_back(std::move(rec));
    }
    for (const auto& key : unknown_keys) warn(warnings, "ignoring unknown key '" + key + "'");
    return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return in;
}

std::string with_source(std::string_view source, std::size_t line, const std::string& what) {
    return std::string(source) + ":" + std::to_string(line) + ": " + what;
}

// Shared line scanner for both lexicon file shapes.
template <typename OnEntry>
void scan_lexicon_lines(std::istream& in, std::string_view source, OnEntry on_entry) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto body = trim(line);
        if (lineno == 1 && body.starts_with("\xEF\xBB\xBF")) body = trim(body.substr(3));
        if (body.empty() || body.front() == '#') continue;
        const auto comma = body.find(',');
        const auto word = trim(body.substr(0, comma));
        if (word.empty()) throw MalformedInput(with_source(source, lineno, "empty stem"));
        std::optional<std::string_view> weight;
        if (comma != std::string_view::npos) weight = trim(body.substr(comma + 1));
        on_entry(lineno, text::stem(word), weight);
    }
}

}  // namespace

ExportFormat format_from_string(std::string_view name) {
    const auto n = lower(name);
    if (n == "csv") return ExportFormat::Csv;
    if (n == "json") return ExportFormat::Json;
    throw UnknownFormat("unknown review export format '" + std::string(name) + "'");
}

ExportFormat format_from_path(const std::filesystem::path& path) {
    auto ext = path.extension().string();
    if (!ext.empty()) ext.erase(0, 1);
    return format_from_string(ext);
}

std::vector<ReviewRecord> parse_review_export(std::istream& in, ExportFormat format, const ExportSchema& schema,
                                              Warnings* warnings) {
    switch (format) {
        case ExportFormat::Csv: return parse_csv(in, schema, warnings);
        case ExportFormat::Json: return parse_json(in, schema, warnings);
    }
    throw UnknownFormat("unknown review export format");
}

std::vector<ReviewRecord> read_review_export(const std::filesystem::path& path, const ExportSchema& schema,
                                             Warnings* warnings) {
    const auto format = format_from_path(path);
    auto in = open_input(path);
    try {
        return parse_review_export(in, format, schema, warnings);
    } catch (const MalformedInput& e) {
        throw MalformedInput(path.string() + ": " + e.what());
    }
}

void write_review_export(std::ostream& out, std::span<const ReviewRecord> records, ExportFormat format) {
    if (format == ExportFormat::Csv) {
        out << csv::format_row({"work_id", "reviewer_id", "responses", "comment", "submitted_at"}) << "\r\n";
        for (const auto& rec : records)
            out << csv::format_row({rec.work_id, rec.reviewer_id, pack_responses(rec), rec.comment,
                                    rec.submitted_at.value_or("")})
                << "\r\n";
        return;
    }
    ojson doc = ojson::array();
    for (const auto& rec : records) {
        ojson responses = ojson::object();
        for (const auto& [q, a] : rec.analytic_responses) responses[q] = a;
        ojson obj = {{"work_id", rec.work_id},
                     {"reviewer_id", rec.reviewer_id},
                     {"responses", std::move(responses)},
                     {"comment", rec.comment}};
        if (rec.submitted_at) obj["submitted_at"] = *rec.submitted_at;
        doc.push_back(std::move(obj));
    }
    out << doc.dump(2) << '\n';
}

const Question* ReviewFormSpec::find(std::string_view question_id) const {
    const auto it = std::find_if(questions.begin(), questions.end(), [&](const Question& q) { return q.id == question_id; });
    return it == questions.end() ? nullptr : &*it;
}

void ReviewFormSpec::validate() const {
    if (!(grade_max > 0.0)) throw InvalidArgument("grade_max must be positive");
    std::set<std::string_view> ids;
    for (const auto& q : questions) {
        if (q.id.empty()) throw InvalidArgument("question with empty id");
        if (!ids.insert(q.id).second) throw InvalidArgument("duplicate question id '" + q.id + "'");
        if (q.section == grading::Section::Sentiment)
            throw InvalidArgument("question '" + q.id + "' must belong to Overall, Technical or Personalization");
        for (const auto& [answer, value] : q.answers)
            if (!(value >= 0.0 && value <= grade_max))
                throw InvalidArgument("answer '" + answer + "' of question '" + q.id + "' is outside [0, grade_max]");
    }
}

ReviewFormSpec parse_form(std::istream& in) {
    ojson doc;
    try {
        doc = ojson::parse(in);
        ReviewFormSpec form;
        form.grade_max = doc.value("grade_max", 4.3);
        for (const auto& noun : doc.value("form_nouns", ojson::array()))
            form.form_nouns.insert(text::stem(noun.get<std::string>()));
        for (const auto& q : doc.at("questions")) {
            Question question;
            question.id = q.at("id").get<std::string>();
            const auto section_name = q.at("section").get<std::string>();
            const auto section = grading::section_from_string(section_name);
            if (!section) throw MalformedInput("question '" + question.id + "' has unknown section '" + section_name + "'");
            question.section = *section;
            question.prompt = q.value("prompt", "");
            for (const auto& [answer, value] : q.at("answers").items()) question.answers[answer] = value.get<double>();
            form.questions.push_back(std::move(question));
        }
        form.validate();
        return form;
    } catch (const ojson::exception& e) {
        throw MalformedInput(std::string("review form: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw MalformedInput(std::string("review form: ") + e.what());
    }
}

ReviewFormSpec load_form(const std::filesystem::path& path) {
    auto in = open_input(path);
    try {
        return parse_form(in);
    } catch (const MalformedInput& e) {
        throw MalformedInput(path.string() + ": " + e.what());
    }
}

lexicon::WeightMap parse_weight_list(std::istream& in, std::string_view source, Warnings* warnings) {
    lexicon::WeightMap out;
    scan_lexicon_lines(in, source, [&](std::size_t line, std::string stem, std::optional<std::string_view> weight) {
        if (!weight || weight->empty()) throw MalformedInput(with_source(source, line, "expected 'stem,weight'"));
        double w = 0.0;
        const auto [end, ec] = std::from_chars(weight->data(), weight->data() + weight->size(), w);
        if (ec != std::errc{} || end != weight->data() + weight->size())
            throw MalformedInput(with_source(source, line, "bad weight '" + std::string(*weight) + "'"));
        if (!(w >= 0.0 && w <= 1.0))
            throw WeightOutOfRange(with_source(source, line, "weight " + std::string(*weight) + " is outside [0, 1]"));
        if (out.contains(stem)) warn(warnings, with_source(source, line, "duplicate stem '" + stem + "', last entry wins"));
        out[stem] = w;
    });
    return out;
}

lexicon::StemSet parse_stem_list(std::istream& in, std::string_view source, Warnings* warnings) {
    lexicon::StemSet out;
    scan_lexicon_lines(in, source, [&](std::size_t line, std::string stem, std::optional<std::string_view> weight) {
        if (weight) warn(warnings, with_source(source, line, "weight ignored for '" + stem + "'"));
        if (!out.insert(stem).second) warn(warnings, with_source(source, line, "duplicate stem '" + stem + "'"));
    });
    return out;
}

lexicon::LexiconSet load_lexicon_set(const LexiconPaths& paths, Warnings* warnings) {
    auto weights = [&](const std::filesystem::path& p) {
        auto in = open_input(p);
        return parse_weight_list(in, p.string(), warnings);
    };
    auto stems = [&](const std::filesystem::path& p) {
        auto in = open_input(p);
        return parse_stem_list(in, p.string(), warnings);
    };
    auto positive = weights(paths.positive);
    if (positive.empty()) throw EmptyLexicon(paths.positive.string() + " has no entries");
    auto negative = weights(paths.negative);
    if (negative.empty()) throw EmptyLexicon(paths.negative.string() + " has no entries");
    return lexicon::LexiconSet::build(std::move(positive), std::move(negative), stems(paths.negate),
                                      stems(paths.flag), stems(paths.reset));
}

}  // namespace crowdgrade::corpus
