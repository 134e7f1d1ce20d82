#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace crowdgrade::csv {

using Row = std::vector<std::string>;

// RFC 4180 reader: quoted fields may hold separators, doubled quotes and
// newlines. A trailing newline does not produce an empty row. Throws
// MalformedInput on an unterminated quote.
std::vector<Row> read_all(std::istream& in, char sep = ',');

// Quotes a field only when it needs it.
std::string escape(std::string_view field, char sep = ',');
std::string format_row(const Row& row, char sep = ',');

}  // namespace crowdgrade::csv
