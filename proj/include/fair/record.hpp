#ifndef FAIR_RECORD_HPP
#define FAIR_RECORD_HPP

#include <array>
#include <charconv>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fair/utf8.hpp"

namespace fair {

/// Shortest decimal text that round-trips to the same double.
inline std::string format_number(double value)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

/// A single cell: text, a finite number, or missing ("NA" / empty in the source).
class FieldValue
{
  public:
    FieldValue() = default;

    static FieldValue missing() { return FieldValue{}; }

    static FieldValue text(std::string value)
    {
        FieldValue v;
        v.value_ = std::move(value);
        return v;
    }

    static FieldValue number(double value)
    {
        if (!std::isfinite(value))
            throw std::invalid_argument("FieldValue::number: value must be finite");
        FieldValue v;
        v.value_ = value;
        return v;
    }

    bool is_missing() const noexcept { return value_.index() == 0; }
    bool is_number() const noexcept { return value_.index() == 1; }
    bool is_text() const noexcept { return value_.index() == 2; }

    double as_number() const { return std::get<double>(value_); }
    const std::string& as_text() const { return std::get<std::string>(value_); }

    /// Display form; Missing renders as the source literal "NA".
    std::string to_display() const
    {
        if (is_missing())
            return "NA";
        if (is_number())
            return format_number(as_number());
        return as_text();
    }

    friend bool operator==(const FieldValue& a, const FieldValue& b) { return a.value_ == b.value_; }

  private:
    std::variant<std::monostate, double, std::string> value_;
};

/// Total order: Missing < Number < Text; numbers numerically, text byte-wise.
inline std::strong_ordering value_compare(const FieldValue& a, const FieldValue& b)
{
    auto rank = [](const FieldValue& v) { return v.is_missing() ? 0 : v.is_number() ? 1 : 2; };
    if (const int ra = rank(a), rb = rank(b); ra != rb)
        return ra <=> rb;
    if (a.is_missing())
        return std::strong_ordering::equal;
    if (a.is_number()) {
        const double x = a.as_number(), y = b.as_number();
        return x < y ? std::strong_ordering::less : y < x ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
    // std::string compares char_traits<char>, which is unsigned-byte order.
    const int c = a.as_text().compare(b.as_text());
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

/// Lexicographic value_compare over equal-length tuples.
inline std::strong_ordering tuple_compare(const std::vector<FieldValue>& a, const std::vector<FieldValue>& b)
{
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (auto c = value_compare(a[i], b[i]); c != 0)
            return c;
    return a.size() <=> b.size();
}

struct TupleLess
{
    bool operator()(const std::vector<FieldValue>& a, const std::vector<FieldValue>& b) const
    {
        return tuple_compare(a, b) < 0;
    }
};

enum class Column : std::size_t {
    university,
    faculty_name,
    designation,
    research_area,
    qualification,
    email,
    department,
    latitude,
    longitude,
};

inline constexpr std::size_t column_count = 9;

enum class ColumnKind { text, number };

struct ColumnDef
{
    std::string_view name;
    ColumnKind kind;
};

/// The fixed nine-column faculty schema.
class Schema
{
  public:
    static const Schema& faculty()
    {
        static const Schema schema;
        return schema;
    }

    std::size_t size() const noexcept { return columns_.size(); }
    const ColumnDef& operator[](std::size_t i) const { return columns_.at(i); }
    const std::array<ColumnDef, column_count>& columns() const noexcept { return columns_; }

    std::optional<std::size_t> index_of(std::string_view name) const
    {
        for (std::size_t i = 0; i < columns_.size(); ++i)
            if (columns_[i].name == name)
                return i;
        return std::nullopt;
    }

    std::string header_line() const
    {
        std::string out;
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            if (i) out += ',';
            out += columns_[i].name;
        }
        return out;
    }

  private:
    Schema() = default;

    std::array<ColumnDef, column_count> columns_{{
        {"university", ColumnKind::text},
        {"faculty_name", ColumnKind::text},
        {"designation", ColumnKind::text},
        {"research_area", ColumnKind::text},
        {"qualification", ColumnKind::text},
        {"email", ColumnKind::text},
        {"department", ColumnKind::text},
        {"latitude", ColumnKind::number},
        {"longitude", ColumnKind::number},
    }};
};

struct FacultyRecord
{
    std::uint64_t record_id = 0;
    std::array<FieldValue, column_count> fields;

    const FieldValue& operator[](Column c) const { return fields[static_cast<std::size_t>(c)]; }
    FieldValue& operator[](Column c) { return fields[static_cast<std::size_t>(c)]; }

    const FieldValue& university() const { return (*this)[Column::university]; }
    const FieldValue& faculty_name() const { return (*this)[Column::faculty_name]; }
    const FieldValue& research_area() const { return (*this)[Column::research_area]; }
    const FieldValue& department() const { return (*this)[Column::department]; }
    const FieldValue& latitude() const { return (*this)[Column::latitude]; }
    const FieldValue& longitude() const { return (*this)[Column::longitude]; }

    friend bool operator==(const FacultyRecord&, const FacultyRecord&) = default;
};

enum class Violation {
    required_missing, ///< university or faculty_name is Missing
    lat_range,
    lon_range,
    kind_mismatch,    ///< Number in a text column or Text in a number column
    missing_as_text,  ///< Text("NA") or Text(""), which must be Missing
    invalid_utf8,
};

inline std::string_view to_string(Violation v)
{
    switch (v) {
        case Violation::required_missing: return "REQUIRED_MISSING";
        case Violation::lat_range:        return "LAT_RANGE";
        case Violation::lon_range:        return "LON_RANGE";
        case Violation::kind_mismatch:    return "KIND_MISMATCH";
        case Violation::missing_as_text:  return "MISSING_AS_TEXT";
        case Violation::invalid_utf8:     return "INVALID_UTF8";
    }
    return "UNKNOWN";
}

/// Lists every record invariant `record` breaks; empty means valid. Never throws.
inline std::vector<Violation> validate_record(const FacultyRecord& record)
{
    std::vector<Violation> report;
    auto add = [&](Violation v) {
        for (auto existing : report)
            if (existing == v)
                return;
        report.push_back(v);
    };

    if (record.university().is_missing() || record.faculty_name().is_missing())
        add(Violation::required_missing);

    const Schema& schema = Schema::faculty();
    for (std::size_t i = 0; i < column_count; ++i) {
        const FieldValue& v = record.fields[i];
        if (v.is_missing())
            continue;
        const bool numeric_column = schema[i].kind == ColumnKind::number;
        if (numeric_column != v.is_number()) {
            add(Violation::kind_mismatch);
            continue;
        }
        if (v.is_text()) {
            if (v.as_text().empty() || v.as_text() == "NA")
                add(Violation::missing_as_text);
            if (!utf8::is_valid(v.as_text()))
                add(Violation::invalid_utf8);
        }
    }

    const FieldValue& lat = record.latitude();
    if (lat.is_number() && (lat.as_number() < -90.0 || lat.as_number() > 90.0))
        add(Violation::lat_range);
    const FieldValue& lon = record.longitude();
    if (lon.is_number() && (lon.as_number() < -180.0 || lon.as_number() > 180.0))
        add(Violation::lon_range);
    return report;
}

} // namespace fair

#endif // FAIR_RECORD_HPP
