#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace blurbench::csv {

// Minimal reader for the toolkit's unquoted CSV side files.
struct Row {
    std::size_t line;
    std::vector<std::string_view> fields;
};

// Splits into non-blank lines (CR stripped) and comma-separated fields.
std::vector<Row> read_rows(std::string_view document);

// Throws FormatError if the first row is missing or differs from `expected`.
void expect_header(const std::vector<Row>& rows, std::initializer_list<std::string_view> expected,
                   std::string_view what);

// Throws FormatError if the field could not be written back unambiguously.
void check_field(std::string_view field, std::string_view what);

std::string location(std::string_view what, std::size_t line);

}  // namespace blurbench::csv
