#ifndef FAIR_REPORT_HPP
#define FAIR_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fair/engine.hpp"
#include "fair/error.hpp"
#include "fair/ingest.hpp"
#include "fair/kmeans.hpp"
#include "fair/record.hpp"
#include "fair/utf8.hpp"

namespace fair::report {

enum class Grouping { university, department };

struct CountRow
{
    std::vector<std::string> key; ///< (university) or (university, department); Missing shown as "NA"
    std::size_t count = 0;

    friend bool operator==(const CountRow&, const CountRow&) = default;
};

struct CountReport
{
    Grouping grouping = Grouping::university;
    std::vector<CountRow> rows;
    std::size_t total = 0;
};

inline std::string counts_query(const std::string& table, Grouping by)
{
    if (by == Grouping::university)
        return "SELECT university, COUNT(*) FROM " + table + " GROUP BY university";
    return "SELECT university, department, COUNT(*) FROM " + table + " GROUP BY university, department";
}

/// Faculty counts per university or per (university, department), computed by
/// the engine as a GROUP BY COUNT(*) query.
inline CountReport faculty_counts(const QueryContext& ctx, const std::string& table, Grouping by)
{
    const ResultTable result = run_query(ctx, counts_query(table, by));
    CountReport report;
    report.grouping = by;
    for (const Row& row : result.rows) {
        CountRow out;
        for (std::size_t i = 0; i + 1 < row.size(); ++i)
            out.key.push_back(row[i].to_display());
        out.count = static_cast<std::size_t>(row.back().as_number());
        report.total += out.count;
        report.rows.push_back(std::move(out));
    }
    return report;
}

inline std::vector<std::string> key_columns(Grouping by)
{
    if (by == Grouping::university)
        return {"university"};
    return {"university", "department"};
}

inline std::string to_csv(const CountReport& report)
{
    std::string out;
    for (const std::string& col : key_columns(report.grouping))
        out += col + ",";
    out += "faculty_count\n";
    for (const CountRow& row : report.rows) {
        for (const std::string& k : row.key)
            out += csv::quote_field(k) + ",";
        out += std::to_string(row.count) + "\n";
    }
    return out;
}

inline nlohmann::json to_json(const CountReport& report)
{
    nlohmann::json rows = nlohmann::json::array();
    const std::vector<std::string> cols = key_columns(report.grouping);
    for (const CountRow& row : report.rows) {
        nlohmann::json r;
        for (std::size_t i = 0; i < cols.size(); ++i)
            r[cols[i]] = row.key[i];
        r["count"] = row.count;
        rows.push_back(std::move(r));
    }
    return {{"grouping", report.grouping == Grouping::university ? "university" : "department"},
            {"rows", std::move(rows)},
            {"total", report.total}};
}

/// Horizontal bars sorted by count descending (ties by key); the largest count spans `width` cells.
inline std::string render_bar_chart(const CountReport& report, std::size_t width)
{
    if (width < 10)
        throw Error(ErrorCode::invalid_argument, "chart width must be at least 10");
    std::string out = std::string("faculty count by ") + (report.grouping == Grouping::university ? "university" : "department")
                      + " (total " + std::to_string(report.total) + ")\n";
    std::vector<const CountRow*> rows;
    for (const CountRow& r : report.rows)
        rows.push_back(&r);
    std::sort(rows.begin(), rows.end(), [](const CountRow* a, const CountRow* b) {
        if (a->count != b->count)
            return a->count > b->count;
        return a->key < b->key;
    });
    std::size_t max_count = 0, label_width = 0;
    std::vector<std::string> labels;
    for (const CountRow* r : rows) {
        std::string label;
        for (std::size_t i = 0; i < r->key.size(); ++i)
            label += (i ? " / " : "") + r->key[i];
        label_width = std::max(label_width, utf8::length(label));
        max_count = std::max(max_count, r->count);
        labels.push_back(std::move(label));
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double scaled = static_cast<double>(rows[i]->count) * static_cast<double>(width) / static_cast<double>(max_count);
        const auto cells = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(scaled)));
        out += labels[i] + std::string(label_width - utf8::length(labels[i]), ' ') + " |" + std::string(cells, '#') + " "
               + std::to_string(rows[i]->count) + "\n";
    }
    return out;
}

struct GeoEntry
{
    std::string university;
    double lat = 0;
    double lon = 0;

    friend bool operator==(const GeoEntry&, const GeoEntry&) = default;
};

struct GeoExport
{
    std::vector<GeoEntry> points;      ///< sorted by university
    std::vector<std::string> skipped;  ///< universities with no row carrying both coordinates
    std::vector<std::string> warnings; ///< conflicting coordinates (lowest record_id wins)
};

/// One entry per distinct university with numeric coordinates.
inline GeoExport geo_export(std::span<const FacultyRecord> table)
{
    std::vector<const FacultyRecord*> rows;
    for (const FacultyRecord& r : table)
        rows.push_back(&r);
    std::sort(rows.begin(), rows.end(), [](const auto* a, const auto* b) { return a->record_id < b->record_id; });

    struct Seen
    {
        std::optional<GeoEntry> entry;
        bool warned = false;
    };
    std::map<std::string, Seen> seen;
    GeoExport out;
    for (const FacultyRecord* r : rows) {
        if (!r->university().is_text())
            continue;
        const std::string& uni = r->university().as_text();
        Seen& s = seen[uni];
        if (!r->latitude().is_number() || !r->longitude().is_number())
            continue;
        const double lat = r->latitude().as_number(), lon = r->longitude().as_number();
        if (!s.entry) {
            s.entry = GeoEntry{uni, lat, lon};
        } else if ((s.entry->lat != lat || s.entry->lon != lon) && !s.warned) {
            s.warned = true;
            out.warnings.push_back(uni + ": conflicting coordinates (" + format_number(lat) + ", " + format_number(lon)
                                   + ") in record " + std::to_string(r->record_id) + "; keeping (" + format_number(s.entry->lat)
                                   + ", " + format_number(s.entry->lon) + ")");
        }
    }
    for (auto& [uni, s] : seen) {
        if (s.entry)
            out.points.push_back(*s.entry);
        else
            out.skipped.push_back(uni);
    }
    return out;
}

inline nlohmann::json to_json(const GeoExport& geo)
{
    nlohmann::json points = nlohmann::json::array();
    for (const GeoEntry& e : geo.points)
        points.push_back({{"university", e.university}, {"lat", e.lat}, {"lon", e.lon}});
    return {{"points", std::move(points)}, {"skipped", geo.skipped}};
}

inline std::string to_csv(const GeoExport& geo)
{
    std::string out = "university,lat,lon\n";
    for (const GeoEntry& e : geo.points)
        out += csv::quote_field(e.university) + "," + format_number(e.lat) + "," + format_number(e.lon) + "\n";
    return out;
}

inline std::vector<kmeans::GeoPoint> to_geo_points(const GeoExport& geo)
{
    std::vector<kmeans::GeoPoint> out;
    for (const GeoEntry& e : geo.points)
        out.push_back({e.university, e.lat, e.lon});
    return out;
}

} // namespace fair::report

#endif // FAIR_REPORT_HPP
