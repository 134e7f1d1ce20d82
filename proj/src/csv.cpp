#include "crowdgrade/csv.hpp"

#include "crowdgrade/errors.hpp"

#include <iterator>

namespace crowdgrade::csv {

std::vector<Row> read_all(std::istream& in, char sep) {
    const std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::vector<Row> rows;
    Row row;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    std::size_t line = 1;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
    };

    std::size_t i = 0;
    // Skip a UTF-8 byte order mark.
    if (data.size() >= 3 && data.compare(0, 3, "\xEF\xBB\xBF") == 0) i = 3;

    for (; i < data.size(); ++i) {
        const char c = data[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < data.size() && data[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        if (c == '"' && !field_started) {
            in_quotes = true;
            field_started = true;
        } else if (c == sep) {
            end_field();
        } else if (c == '\r') {
            if (i + 1 < data.size() && data[i + 1] == '\n') continue;
            end_row();
            ++line;
        } else if (c == '\n') {
            end_row();
            ++line;
        } else {
            field += c;
            field_started = true;
        }
    }
    if (in_quotes) throw MalformedInput("unterminated quoted field near line " + std::to_string(line));
    if (field_started || !row.empty()) end_row();
    return rows;
}

std::string escape(std::string_view field, char sep) {
    const bool needs_quotes = field.find_first_of(std::string{sep} + "\"\r\n") != std::string_view::npos ||
                              (!field.empty() && (field.front() == ' ' || field.back() == ' '));
    if (!needs_quotes) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_row(const Row& row, char sep) {
    std::string out;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += sep;
        out += escape(row[i], sep);
    }
    return out;
}

}  // namespace crowdgrade::csv
