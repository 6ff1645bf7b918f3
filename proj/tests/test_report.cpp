#include <random>

#include <gtest/gtest.h>

#include "fair/report.hpp"
#include "support/golden.hpp"
#include "support/warehouse.hpp"

using namespace fair;
using namespace fair::report;
using testing_support::Warehouse;

namespace {

const std::vector<FacultyRecord>& fixture()
{
    static const auto records = testing_support::fixture_records();
    return records;
}

FacultyRecord row(std::uint64_t id, const std::string& uni, std::optional<std::string> dept, std::optional<double> lat,
                  std::optional<double> lon)
{
    FacultyRecord r;
    r.record_id = id;
    r.fields[0] = FieldValue::text(uni);
    r.fields[1] = FieldValue::text("name " + std::to_string(id));
    if (dept)
        r.fields[6] = FieldValue::text(*dept);
    if (lat)
        r.fields[7] = FieldValue::number(*lat);
    if (lon)
        r.fields[8] = FieldValue::number(*lon);
    return r;
}

QueryContext ctx(Warehouse& w) { return {w.catalog, w.cluster, nullptr, w.options}; }

} // namespace

TEST(Counts, FixtureByUniversity)
{
    Warehouse w(fixture());
    const CountReport r = faculty_counts(ctx(w), "faculty1", Grouping::university);
    EXPECT_EQ(r.rows.size(), golden::universities().size());
    EXPECT_EQ(r.total, fixture().size());
    std::map<std::string, std::size_t> manual;
    for (const FacultyRecord& rec : fixture())
        ++manual[rec.university().as_text()];
    for (const CountRow& c : r.rows)
        EXPECT_EQ(c.count, manual.at(c.key[0]));
}

TEST(Counts, EmptyTable)
{
    Warehouse w({});
    const CountReport r = faculty_counts(ctx(w), "faculty1", Grouping::department);
    EXPECT_TRUE(r.rows.empty());
    EXPECT_EQ(r.total, 0u);
}

TEST(Counts, MissingDepartmentGroup)
{
    Warehouse w({row(0, "NIT Goa", "EE", 1, 2), row(1, "NIT Goa", std::nullopt, 1, 2), row(2, "NIT Goa", std::nullopt, 1, 2)});
    const CountReport r = faculty_counts(ctx(w), "faculty1", Grouping::department);
    ASSERT_EQ(r.rows.size(), 2u);
    EXPECT_EQ(r.rows[0], (CountRow{{"NIT Goa", "NA"}, 2}));
    EXPECT_EQ(r.rows[1], (CountRow{{"NIT Goa", "EE"}, 1}));
    EXPECT_EQ(to_csv(r), "university,department,faculty_count\nNIT Goa,NA,2\nNIT Goa,EE,1\n");
    EXPECT_EQ(to_json(r)["rows"][1]["department"], "EE");
}

TEST(Counts, ConservationAcrossGroupings)
{
    Warehouse w(fixture(), StorageConfig{3, 10, 5});
    EXPECT_EQ(faculty_counts(ctx(w), "faculty1", Grouping::university).total,
              faculty_counts(ctx(w), "faculty1", Grouping::department).total);
}

TEST(Chart, Scaling)
{
    CountReport one{Grouping::university, {{{"NIT Goa"}, 5}}, 5};
    EXPECT_EQ(render_bar_chart(one, 10), "faculty count by university (total 5)\nNIT Goa |########## 5\n");

    CountReport two{Grouping::university, {{{"b"}, 5}, {{"a"}, 10}, {{"c"}, 5}}, 20};
    EXPECT_EQ(render_bar_chart(two, 10), "faculty count by university (total 20)\n"
                                         "a |########## 10\n"
                                         "b |##### 5\n"
                                         "c |##### 5\n");
    CountReport empty{Grouping::department, {}, 0};
    EXPECT_EQ(render_bar_chart(empty, 10), "faculty count by department (total 0)\n");
    EXPECT_THROW(render_bar_chart(one, 9), Error);
}

TEST(Geo, Fixture)
{
    const GeoExport g = geo_export(fixture());
    std::vector<std::string> names;
    for (const GeoEntry& e : g.points)
        names.push_back(e.university);
    EXPECT_EQ(names, golden::universities());
    EXPECT_TRUE(g.skipped.empty());
    EXPECT_TRUE(g.warnings.empty());
}

TEST(Geo, SkippedConflictAndDuplicates)
{
    const std::vector<FacultyRecord> t = {row(0, "NIT Goa", "EE", 15.41, 74.01), row(1, "NIT Goa", "EE", 15.41, 74.01),
                                          row(2, "NIT Sikkim", "EE", std::nullopt, 88.36),
                                          row(3, "NIT Surat", "EE", 21.0, 72.0), row(4, "NIT Surat", "EE", 22.0, 72.0)};
    const GeoExport g = geo_export(t);
    ASSERT_EQ(g.points.size(), 2u);
    EXPECT_EQ(g.points[0], (GeoEntry{"NIT Goa", 15.41, 74.01}));
    EXPECT_EQ(g.points[1], (GeoEntry{"NIT Surat", 21.0, 72.0}));
    EXPECT_EQ(g.skipped, std::vector<std::string>{"NIT Sikkim"});
    EXPECT_EQ(g.warnings.size(), 1u);
    EXPECT_EQ(to_csv(g), "university,lat,lon\nNIT Goa,15.41,74.01\nNIT Surat,21,72\n");
}

TEST(Geo, PermutationInvariant)
{
    std::mt19937_64 rng(41);
    const GeoExport base = geo_export(fixture());
    for (int i = 0; i < 10; ++i) {
        auto shuffled = fixture();
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const GeoExport g = geo_export(shuffled);
        EXPECT_EQ(g.points, base.points);
        EXPECT_EQ(g.skipped, base.skipped);
    }
}
