#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "fair/kmeans.hpp"
#include "fair/report.hpp"
#include "support/oracle.hpp"
#include "support/warehouse.hpp"

using namespace fair;
using namespace fair::kmeans;

namespace {

std::vector<GeoPoint> fixture_points()
{
    const auto records = testing_support::fixture_records();
    return report::to_geo_points(report::geo_export(records));
}

oracle::LloydResult reference(const std::vector<GeoPoint>& pts, std::size_t k, std::uint64_t seed)
{
    std::vector<std::array<double, 2>> coords;
    std::vector<std::string> labels;
    for (const GeoPoint& p : pts) {
        coords.push_back({p.lat, p.lon});
        labels.push_back(p.label);
    }
    return oracle::lloyd(coords, labels, k, seed);
}

std::vector<GeoPoint> random_points(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_real_distribution<double> lat(8, 35), lon(68, 97);
    std::vector<GeoPoint> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back({"p" + std::to_string(i), lat(rng), lon(rng)});
    return out;
}

// Clusters as sets of labels, independent of cluster numbering.
std::set<std::set<std::string>> partition(const std::vector<GeoPoint>& pts, const KMeansModel& m)
{
    std::map<std::size_t, std::set<std::string>> by;
    for (std::size_t i = 0; i < pts.size(); ++i)
        by[m.assignments[i]].insert(pts[i].label);
    std::set<std::set<std::string>> out;
    for (auto& [c, s] : by)
        out.insert(s);
    return out;
}

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::invalid_argument;
}

} // namespace

TEST(Fit, SinglePoint)
{
    const KMeansModel m = fit({{"NIT Goa", 15.41, 74.01}}, 1, 42);
    EXPECT_EQ(m.centroids, (std::vector<Centroid>{{15.41, 74.01}}));
    EXPECT_EQ(m.cost, 0.0);
    EXPECT_EQ(m.iterations, 1u);
}

TEST(Fit, EachPointOwnCluster)
{
    const std::vector<GeoPoint> pts = {{"a", 1, 1}, {"b", 2, 2}, {"c", 3, 3}, {"d", 4, 4}};
    const KMeansModel m = fit(pts, 4, 7);
    EXPECT_EQ(m.cost, 0.0);
    EXPECT_EQ(std::set<std::size_t>(m.assignments.begin(), m.assignments.end()).size(), 4u);
}

TEST(Fit, Errors)
{
    const std::vector<GeoPoint> pts = {{"a", 1, 1}, {"b", 2, 2}};
    EXPECT_EQ(code_of([&] { fit(pts, 0, 1); }), ErrorCode::invalid_k);
    EXPECT_EQ(code_of([&] { fit(pts, 3, 1); }), ErrorCode::too_few_points);
    EXPECT_EQ(code_of([&] { fit(pts, 1, 1, 0); }), ErrorCode::invalid_argument);
    EXPECT_EQ(code_of([&] { fit({{"x", 95, 0}}, 1, 1); }), ErrorCode::invalid_argument);
}

TEST(Fit, DuplicatePointsReseedEmptyClusters)
{
    const std::vector<GeoPoint> pts = {{"a", 1, 1}, {"a", 1, 1}, {"a", 1, 1}, {"b", 5, 5}};
    const KMeansModel m = fit(pts, 2, 0);
    EXPECT_EQ(m.cost, 0.0);
    EXPECT_NE(m.assignments[0], m.assignments[3]);
}

TEST(Assign, Rules)
{
    const std::vector<Centroid> cs = {{0, 0}, {2, 0}, {5, 5}};
    EXPECT_EQ(assign({"p", 5, 5}, cs), 2u);
    EXPECT_EQ(assign({"p", 1, 0}, cs), 0u);
    const GeoPoint trichy{"NIT Trichy", 10.76, 78.81};
    const std::vector<Centroid> india = {{28, 77}, {22, 88}, {13, 77}};
    std::size_t best = 0;
    for (std::size_t c = 1; c < india.size(); ++c)
        if (squared_distance(trichy.lat, trichy.lon, india[c]) < squared_distance(trichy.lat, trichy.lon, india[best]))
            best = c;
    EXPECT_EQ(assign(trichy, india), best);
}

TEST(Cost, Examples)
{
    KMeansModel m;
    m.k = 1;
    m.centroids = {{0, 0}};
    m.assignments = {0};
    EXPECT_DOUBLE_EQ(cost({{"p", 3, 4}}, m), 25.0);
    m.centroids = {{3, 4}};
    EXPECT_EQ(cost({{"p", 3, 4}}, m), 0.0);
}

TEST(Fixture, MatchesReferenceLloyd)
{
    const auto pts = fixture_points();
    ASSERT_EQ(pts.size(), 31u);
    const KMeansModel m = fit(pts, 3, 42);
    const oracle::LloydResult r = reference(pts, 3, 42);
    EXPECT_EQ(m.centroids, r.centroids);
    EXPECT_EQ(m.assignments, r.assignments);
    EXPECT_EQ(m.iterations, r.iterations);
    EXPECT_NEAR(m.cost, r.cost, 1e-9 * r.cost);
    EXPECT_DOUBLE_EQ(cost(pts, m), m.cost);
}

// Values produced by the reference run above, frozen to catch drift in either implementation.
TEST(Fixture, FrozenReferenceValues)
{
    const auto pts = fixture_points();
    const KMeansModel m = fit(pts, 3, 42);
    EXPECT_NEAR(m.cost, 553.54016722222184, 1e-9 * 553.54016722222184);
    EXPECT_EQ(m.iterations, 5u);
    std::vector<std::size_t> sizes(3, 0);
    for (std::size_t a : m.assignments)
        ++sizes[a];
    EXPECT_EQ(sizes, (std::vector<std::size_t>{12, 10, 9}));
}

TEST(Property, MatchesReferenceOnRandomInputs)
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const auto pts = random_points(rng, 5 + rng() % 40);
        const std::size_t k = 1 + rng() % std::min<std::size_t>(6, pts.size());
        const std::uint64_t seed = rng();
        const KMeansModel m = fit(pts, k, seed);
        const oracle::LloydResult r = reference(pts, k, seed);
        EXPECT_EQ(m.centroids, r.centroids);
        EXPECT_EQ(m.assignments, r.assignments);
    }
}

TEST(Property, CostNeverIncreases)
{
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 100; ++trial) {
        const auto pts = random_points(rng, 10 + rng() % 50);
        const KMeansModel m = fit(pts, 1 + rng() % 6, rng());
        for (std::size_t i = 1; i < m.cost_history.size(); ++i)
            EXPECT_LE(m.cost_history[i], m.cost_history[i - 1] + 1e-12);
    }
}

TEST(Property, ConvergedModelIsAFixedPoint)
{
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 50; ++trial) {
        const auto pts = random_points(rng, 10 + rng() % 50);
        const KMeansModel m = fit(pts, 1 + rng() % 5, rng(), 1000, 0.0);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double own = squared_distance(pts[i].lat, pts[i].lon, m.centroids[m.assignments[i]]);
            for (const Centroid& c : m.centroids)
                EXPECT_LE(own, squared_distance(pts[i].lat, pts[i].lon, c));
        }
    }
}

TEST(Property, PermutationAndSeedDeterminism)
{
    std::mt19937_64 rng(34);
    const auto pts = fixture_points();
    const KMeansModel base = fit(pts, 3, 42);
    EXPECT_EQ(fit(pts, 3, 42), base);
    for (int trial = 0; trial < 20; ++trial) {
        auto shuffled = pts;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const KMeansModel m = fit(shuffled, 3, 42);
        EXPECT_EQ(partition(shuffled, m), partition(pts, base));
        EXPECT_EQ(m.centroids, base.centroids);
    }
}

TEST(Json, Shape)
{
    const auto pts = fixture_points();
    const auto j = to_json(fit(pts, 3, 42), pts);
    EXPECT_EQ(j["k"], 3);
    EXPECT_EQ(j["centroids"].size(), 3u);
    std::size_t members = 0;
    for (const auto& c : j["clusters"])
        members += c["members"].size();
    EXPECT_EQ(members, 31u);
}
