#ifndef FAIR_INGEST_HPP
#define FAIR_INGEST_HPP

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fair/error.hpp"
#include "fair/record.hpp"
#include "fair/utf8.hpp"

namespace fair {

enum class WarningCode {
    extra_bytes,        ///< more fields than the schema; extras dropped
    short_row,          ///< fewer fields; trailing columns set Missing
    bad_number,         ///< unparseable number; set Missing
    coord_range,        ///< parseable but out of lat/lon bounds; set Missing
    bad_encoding,       ///< invalid UTF-8 replaced with U+FFFD
    unterminated_quote,
    required_missing,   ///< row rejected
};

inline std::string_view to_string(WarningCode code)
{
    switch (code) {
        case WarningCode::extra_bytes:        return "EXTRA_BYTES";
        case WarningCode::short_row:          return "SHORT_ROW";
        case WarningCode::bad_number:         return "BAD_NUMBER";
        case WarningCode::coord_range:        return "COORD_RANGE";
        case WarningCode::bad_encoding:       return "BAD_ENCODING";
        case WarningCode::unterminated_quote: return "UNTERMINATED_QUOTE";
        case WarningCode::required_missing:   return "REQUIRED_MISSING";
    }
    return "UNKNOWN";
}

struct IngestWarning
{
    std::size_t line = 0; ///< 1-based physical line where the row starts (header is line 1)
    WarningCode code;
    std::string message;

    friend bool operator==(const IngestWarning&, const IngestWarning&) = default;
};

struct IngestReport
{
    std::size_t rows_read = 0;
    std::size_t records_produced = 0;
    std::size_t rows_rejected = 0;
    std::vector<IngestWarning> warnings;

    friend bool operator==(const IngestReport&, const IngestReport&) = default;
};

struct ParsedRow
{
    std::optional<FacultyRecord> record; ///< nullopt when the row was rejected
    std::vector<IngestWarning> warnings;
};

struct IngestResult
{
    std::vector<FacultyRecord> records;
    IngestReport report;
};

namespace csv {

/// One logical CSV record and the physical line it starts on.
struct RawRecord
{
    std::string text;
    std::size_t line = 0;
};

/// Splits file content into logical records. Newlines inside double quotes
/// belong to the field; a '\r' before an unquoted '\n' is dropped; blank
/// lines are skipped.
inline std::vector<RawRecord> split_records(std::string_view content)
{
    std::vector<RawRecord> out;
    std::string current;
    std::size_t line = 1, start_line = 1;
    bool in_quotes = false;

    auto flush = [&] {
        if (!current.empty() && current.back() == '\r')
            current.pop_back();
        if (!current.empty())
            out.push_back({std::move(current), start_line});
        current.clear();
    };

    for (char c : content) {
        if (c == '"') {
            in_quotes = !in_quotes;
        } else if (c == '\n') {
            ++line;
            if (!in_quotes) {
                flush();
                start_line = line;
                continue;
            }
        }
        current += c;
    }
    flush();
    return out;
}

struct SplitFields
{
    std::vector<std::string> fields;
    bool unterminated_quote = false;
};

/// RFC-4180 field splitting of one logical record. Lenient: text after a
/// closing quote is appended to the field, and quotes inside an unquoted
/// field are literal.
inline SplitFields split_fields(std::string_view line)
{
    SplitFields out;
    std::string field;
    std::size_t i = 0;
    while (true) {
        field.clear();
        if (i < line.size() && line[i] == '"') {
            ++i;
            bool closed = false;
            while (i < line.size()) {
                if (line[i] == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        field += '"';
                        i += 2;
                        continue;
                    }
                    ++i;
                    closed = true;
                    break;
                }
                field += line[i++];
            }
            if (!closed)
                out.unterminated_quote = true;
        }
        while (i < line.size() && line[i] != ',')
            field += line[i++];
        out.fields.push_back(field);
        if (i >= line.size())
            break;
        ++i; // comma
    }
    return out;
}

inline std::string quote_field(std::string_view value)
{
    if (value.find_first_of(",\"\r\n") == std::string_view::npos)
        return std::string(value);
    std::string out = "\"";
    for (char c : value) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace csv

/// Serializes a record as one CSV row (no trailing newline); Missing is written as NA.
inline std::string to_csv_row(const FacultyRecord& record)
{
    std::string out;
    for (std::size_t i = 0; i < column_count; ++i) {
        if (i) out += ',';
        const FieldValue& v = record.fields[i];
        out += v.is_text() ? csv::quote_field(v.as_text()) : v.to_display();
    }
    return out;
}

namespace detail {

inline bool is_missing_literal(std::string_view cell) { return cell.empty() || cell == "NA"; }

inline std::optional<double> parse_number(std::string_view cell)
{
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t'))
        cell.remove_prefix(1);
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t'))
        cell.remove_suffix(1);
    if (cell.empty())
        return std::nullopt;
    double value = 0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value))
        return std::nullopt;
    return value;
}

} // namespace detail

/// Maps one logical CSV record onto the schema, tolerating malformed rows.
inline ParsedRow parse_row(std::string_view line, const Schema& schema = Schema::faculty(), std::size_t line_number = 0)
{
    ParsedRow result;
    auto warn = [&](WarningCode code, std::string message) {
        result.warnings.push_back({line_number, code, std::move(message)});
    };

    std::string text(line);
    if (const std::size_t replaced = utf8::sanitize(text); replaced > 0)
        warn(WarningCode::bad_encoding, "replaced " + std::to_string(replaced) + " invalid UTF-8 byte(s) with U+FFFD");

    csv::SplitFields split = csv::split_fields(text);
    if (split.unterminated_quote)
        warn(WarningCode::unterminated_quote, "quoted field not terminated before end of record");

    std::vector<std::string>& cells = split.fields;
    if (cells.size() > schema.size()) {
        warn(WarningCode::extra_bytes, "extra bytes at end of row: dropped " + std::to_string(cells.size() - schema.size())
                                           + " trailing field(s)");
        cells.resize(schema.size());
    } else if (cells.size() < schema.size()) {
        warn(WarningCode::short_row, "row has " + std::to_string(cells.size()) + " of " + std::to_string(schema.size())
                                         + " fields; trailing columns set to NA");
    }

    FacultyRecord record;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const std::string& cell = cells[i];
        const ColumnDef& col = schema[i];
        if (detail::is_missing_literal(cell))
            continue;
        if (col.kind == ColumnKind::text) {
            record.fields[i] = FieldValue::text(cell);
            continue;
        }
        const auto value = detail::parse_number(cell);
        if (!value) {
            warn(WarningCode::bad_number, std::string(col.name) + ": cannot parse '" + cell + "' as a number");
            continue;
        }
        const double bound = col.name == "latitude" ? 90.0 : 180.0;
        if (*value < -bound || *value > bound) {
            warn(WarningCode::coord_range, std::string(col.name) + ": " + cell + " outside [-" + format_number(bound)
                                               + ", " + format_number(bound) + "]");
            continue;
        }
        record.fields[i] = FieldValue::number(*value);
    }

    if (record.university().is_missing() || record.faculty_name().is_missing()) {
        warn(WarningCode::required_missing, "university and faculty_name are required; row rejected");
        return result;
    }
    result.record = std::move(record);
    return result;
}

/// Parses whole-file content (header line first).
inline IngestResult ingest_text(std::string_view content, const Schema& schema = Schema::faculty())
{
    if (content.starts_with("\xEF\xBB\xBF"))
        content.remove_prefix(3);

    std::vector<csv::RawRecord> raw = csv::split_records(content);
    if (raw.empty() || raw.front().line != 1)
        throw Error(ErrorCode::header_mismatch, "expected header '" + schema.header_line() + "', found an empty first line");

    const std::vector<std::string> header = csv::split_fields(raw.front().text).fields;
    bool header_ok = header.size() == schema.size();
    for (std::size_t i = 0; header_ok && i < header.size(); ++i)
        header_ok = header[i] == schema[i].name;
    if (!header_ok) {
        std::ostringstream msg;
        msg << "expected header '" << schema.header_line() << "', found '" << raw.front().text << "'";
        for (std::size_t i = 0; i < std::max(header.size(), schema.size()); ++i) {
            const std::string_view want = i < schema.size() ? schema[i].name : std::string_view("<none>");
            const std::string_view got = i < header.size() ? std::string_view(header[i]) : std::string_view("<none>");
            if (want != got) {
                msg << "; column " << i + 1 << ": expected '" << want << "', found '" << got << "'";
                break;
            }
        }
        throw Error(ErrorCode::header_mismatch, msg.str());
    }

    IngestResult result;
    IngestReport& report = result.report;
    for (std::size_t r = 1; r < raw.size(); ++r) {
        ++report.rows_read;
        ParsedRow row = parse_row(raw[r].text, schema, raw[r].line);
        report.warnings.insert(report.warnings.end(), row.warnings.begin(), row.warnings.end());
        if (!row.record) {
            ++report.rows_rejected;
            continue;
        }
        row.record->record_id = result.records.size();
        result.records.push_back(std::move(*row.record));
        ++report.records_produced;
    }
    return result;
}

inline IngestResult ingest_file(const std::string& path, const Schema& schema = Schema::faculty())
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::io_error, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw Error(ErrorCode::io_error, "failed reading '" + path + "'");
    return ingest_text(buf.str(), schema);
}

} // namespace fair

#endif // FAIR_INGEST_HPP
