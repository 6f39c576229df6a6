#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace newslink::csv {

// Minimal RFC-4180 reader/writer: quoted fields, embedded commas, doubled
// quotes, and newlines inside quoted fields. Rows are vectors of strings.

using Row = std::vector<std::string>;

// Reads all rows from a stream. Handles \r\n and \n line endings.
std::vector<Row> read_all(std::istream& in);

// Parses one in-memory document.
std::vector<Row> parse(const std::string& text);

// Quotes a field if it contains a comma, quote or newline.
std::string escape_field(const std::string& field);

void write_row(std::ostream& out, const Row& row);

}  // namespace newslink::csv
