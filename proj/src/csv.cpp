#include "csv.hpp"

#include <algorithm>

#include "blurbench/error.hpp"

namespace blurbench::csv {

std::vector<Row> read_rows(std::string_view document) {
    std::vector<Row> rows;
    std::size_t start = 0;
    std::size_t line_no = 0;
    while (start < document.size()) {
        std::size_t end = document.find('\n', start);
        if (end == std::string_view::npos) end = document.size();
        std::string_view line = document.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

        Row row{line_no, {}};
        std::size_t field_start = 0;
        while (true) {
            const std::size_t comma = line.find(',', field_start);
            row.fields.push_back(line.substr(field_start, comma - field_start));
            if (comma == std::string_view::npos) break;
            field_start = comma + 1;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void expect_header(const std::vector<Row>& rows, std::initializer_list<std::string_view> expected,
                   std::string_view what) {
    std::string want;
    for (auto name : expected) {
        if (!want.empty()) want += ',';
        want += name;
    }
    if (rows.empty()) throw FormatError(std::string(what) + ": missing header \"" + want + "\"");
    const auto& fields = rows.front().fields;
    if (fields.size() != expected.size() || !std::equal(fields.begin(), fields.end(), expected.begin())) {
        throw FormatError(std::string(what) + ": expected header \"" + want + "\"");
    }
}

void check_field(std::string_view field, std::string_view what) {
    if (field.empty() || field.find_first_of(",\n\r") != std::string_view::npos) {
        throw FormatError(std::string(what) + ": value \"" + std::string(field) +
                          "\" cannot be written as an unquoted CSV field");
    }
}

std::string location(std::string_view what, std::size_t line) {
    return std::string(what) + " line " + std::to_string(line);
}

}  // namespace blurbench::csv
