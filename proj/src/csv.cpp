#include "dietclust/pipeline/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace dietclust::pipeline {

namespace {

std::string read_whole_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

} // namespace

CsvTable read_csv(const std::filesystem::path& path) {
    const std::string text = read_whole_file(path);
    CsvTable table;
    table.source = path;

    std::vector<std::string> record;
    std::string field;
    std::size_t line = 1;
    std::size_t record_line = 1;
    bool in_quotes = false;
    bool saw_any = false;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
    };
    auto end_record = [&] {
        end_field();
        if (table.header.empty()) {
            table.header = std::move(record);
        } else {
            if (record.size() != table.header.size())
                throw ParseError(path.string(), record_line,
                                 "expected " + std::to_string(table.header.size())
                                 + " fields, got " + std::to_string(record.size()));
            table.rows.push_back(std::move(record));
            table.row_lines.push_back(record_line);
        }
        record.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
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
        switch (c) {
        case '"':
            if (!field.empty())
                throw ParseError(path.string(), line, "quote inside unquoted field");
            in_quotes = true;
            saw_any = true;
            break;
        case ',':
            end_field();
            saw_any = true;
            break;
        case '\r':
            if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
            [[fallthrough]];
        case '\n':
            end_record();
            ++line;
            record_line = line;
            saw_any = true;
            break;
        default:
            field += c;
            saw_any = true;
        }
    }
    if (in_quotes) throw ParseError(path.string(), record_line, "unterminated quoted field");
    if (!field.empty() || !record.empty()) end_record();

    if (!saw_any || table.header.empty())
        throw ParseError(path.string(), 1, "empty file");
    return table;
}

std::optional<std::size_t> find_column(const CsvTable& table, const std::string& name) {
    for (std::size_t i = 0; i < table.header.size(); ++i)
        if (table.header[i] == name) return i;
    return std::nullopt;
}

std::size_t require_column(const CsvTable& table, const std::string& name) {
    if (auto i = find_column(table, name)) return *i;
    throw SchemaError(table.source.string() + ": missing column '" + name + "'");
}

std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    auto write_record = [&out](const std::vector<std::string>& record) {
        for (std::size_t i = 0; i < record.size(); ++i) {
            if (i) out << ',';
            const std::string& f = record[i];
            if (f.find_first_of(",\"\n\r") != std::string::npos) {
                out << '"';
                for (char c : f) {
                    if (c == '"') out << '"';
                    out << c;
                }
                out << '"';
            } else {
                out << f;
            }
        }
        out << '\n';
    };
    write_record(header);
    for (const auto& row : rows) write_record(row);
}

std::optional<double> parse_number(const std::string& field, const std::filesystem::path& file,
                                   std::size_t line, const std::string& column) {
    std::size_t begin = field.find_first_not_of(" \t");
    if (begin == std::string::npos) return std::nullopt;
    std::size_t end = field.find_last_not_of(" \t") + 1;
    const std::string_view sv(field.data() + begin, end - begin);
    if (sv == "NA" || sv == "N/A") return std::nullopt;

    double value = 0;
    const auto res = std::from_chars(sv.data(), sv.data() + sv.size(), value);
    if (res.ec != std::errc() || res.ptr != sv.data() + sv.size())
        throw ParseError(file.string(), line, "column '" + column + "': not a number: '" + field + "'");
    return value;
}

} // namespace dietclust::pipeline
