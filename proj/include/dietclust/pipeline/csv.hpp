#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dietclust/errors.hpp"

namespace dietclust::pipeline {

struct CsvTable {
    std::filesystem::path source;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows; ///< each padded/checked to header size
    std::vector<std::size_t> row_lines;         ///< 1-based line each row started on
};

/// RFC-4180-style reader: quoted fields, "" escapes, CR/LF and CRLF endings.
/// The first record is the header. Throws ParseError on structural problems.
CsvTable read_csv(const std::filesystem::path& path);

/// Column position by exact header name, or nullopt.
std::optional<std::size_t> find_column(const CsvTable& table, const std::string& name);

/// find_column or SchemaError naming the file and column.
std::size_t require_column(const CsvTable& table, const std::string& name);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

/// Writes rows with minimal quoting. Fields are escaped when they contain a
/// comma, quote or newline.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Empty string means absent. Throws ParseError with file/line context when the
/// field is non-empty but not a number.
std::optional<double> parse_number(const std::string& field, const std::filesystem::path& file,
                                   std::size_t line, const std::string& column);

} // namespace dietclust::pipeline
