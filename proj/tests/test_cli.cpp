#include <filesystem>
#include <sstream>
#include <unistd.h>

#include <gtest/gtest.h>

#include "fair/cli.hpp"
#include "support/golden.hpp"

using namespace fair;
using namespace fair::cli;

namespace {

const std::string fixture_path = std::string(FAIR_FIXTURE_DIR) + "/nit_faculty.csv";

struct Outcome
{
    int code;
    std::string out, err;
};

Outcome run(std::vector<std::string> args, const std::string& input = "")
{
    std::ostringstream out, err;
    std::istringstream in(input);
    args.insert(args.begin(), {"--data", fixture_path});
    const int code = run_command(args, out, err, in);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name)
{
    return (std::filesystem::temp_directory_path() / ("fair_test_" + std::to_string(::getpid()) + "_" + name)).string();
}

} // namespace

TEST(Command, Ingest)
{
    const Outcome r = run({"ingest", fixture_path, "--table", "faculty1"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.err.find("records_produced=" + std::to_string(ingest_file(fixture_path).records.size())),
              std::string::npos);
    EXPECT_NE(r.err.find("rows_rejected=0"), std::string::npos);
}

TEST(Command, IngestMissingFile)
{
    const Outcome r = run({"ingest", "/nonexistent.csv"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("IO_ERROR"), std::string::npos);
}

TEST(Command, SyntaxErrorNamesPosition)
{
    const Outcome r = run({"query", "SELEC * FROM faculty1"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("SYNTAX_ERROR"), std::string::npos);
    EXPECT_NE(r.err.find("position 0"), std::string::npos);
}

TEST(Command, QueryText)
{
    const Outcome r = run({"query", golden::data_query});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("| NIT Kurukshetra | Mahesh Pal"), std::string::npos);
    EXPECT_NE(r.out.find("3 rows selected ("), std::string::npos);
}

TEST(Command, QueryJson)
{
    const Outcome r = run({"query", "SELECT COUNT(*) FROM faculty1", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["rows"][0][0].get<double>(), static_cast<double>(ingest_file(fixture_path).records.size()));
}

TEST(Command, ClusterJson)
{
    const Outcome r = run({"cluster", "--k", "3", "--seed", "42"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["k"], 3);
    EXPECT_EQ(j["centroids"].size(), 3u);
    EXPECT_EQ(run({"cluster", "--k", "40", "--seed", "1"}).code, 1);
}

TEST(Command, Reports)
{
    Outcome r = run({"report", "counts", "--by", "university"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.substr(0, 25), "university,faculty_count\n");
    r = run({"report", "counts", "--chart", "--width", "20"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("NIT Warangal"), std::string::npos);
    r = run({"export", "geo", "--format", "csv"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 32);
}

TEST(Command, UsageErrors)
{
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"frobnicate"}).code, 1);
    EXPECT_EQ(run({"query"}).code, 1);
    EXPECT_EQ(run({"query", "SELECT * FROM nope"}).code, 1);
    EXPECT_EQ(run({"--nodes", "0", "query", "SELECT * FROM faculty1"}).code, 1);
}

TEST(Command, ManifestRoundTrip)
{
    const std::string path = temp_path("session.json");
    Outcome r = run({"--partitions-capacity", "16", "--nodes", "5", "--save-manifest", path, "ingest", fixture_path});
    ASSERT_EQ(r.code, 0) << r.err;
    r = run({"--load-manifest", path, "query", golden::algorithm_query});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("2 rows selected"), std::string::npos);
    std::filesystem::remove(path);
    EXPECT_EQ(run({"--load-manifest", path, "query", "SELECT * FROM faculty1"}).code, 2);
}

TEST(Session, SaveLoadPreservesState)
{
    Session s(StorageConfig{2, 10, 4});
    s.ingest(fixture_path, "faculty1");
    s.cluster().fail_node(3);
    const auto saved = s.save();
    const auto restored = Session::load(saved);
    EXPECT_EQ(restored->save(), saved);
    EXPECT_EQ(restored->query(golden::prakash_query), s.query(golden::prakash_query));
}

TEST(Repl, DataQueryThenQuit)
{
    Session s;
    s.ingest(fixture_path, "faculty1");
    std::istringstream in(std::string(golden::data_query) + ";\n!quit\nSELECT * FROM faculty1;\n");
    std::ostringstream out, err;
    EXPECT_EQ(s.repl(in, out, err), 0);
    EXPECT_NE(out.str().find("3 rows selected"), std::string::npos);
    EXPECT_EQ(out.str().find("rows selected", out.str().find("3 rows selected") + 15), std::string::npos);
    EXPECT_TRUE(err.str().empty());
}

TEST(Repl, MetaCommands)
{
    Session s;
    s.ingest(fixture_path, "faculty1");
    std::istringstream in("!tables\n\n!explain SELECT * FROM faculty1 WHERE university = 'NIT Goa'\n!cache faculty1\n"
                          "!bogus\n");
    std::ostringstream out, err;
    s.repl(in, out, err);
    EXPECT_NE(out.str().find("faculty1\n"), std::string::npos);
    EXPECT_NE(out.str().find("Filter(university = 'NIT Goa')"), std::string::npos);
    EXPECT_NE(out.str().find("cached 5 block(s) of faculty1"), std::string::npos);
    EXPECT_NE(err.str().find("unknown command !bogus"), std::string::npos);
}

TEST(Repl, MultiLineStatementsAndErrors)
{
    Session s;
    s.ingest(fixture_path, "faculty1");
    std::istringstream in("SELECT COUNT(*)\nFROM faculty1\nWHERE university = 'a;b'; SELECT nope FROM faculty1;\n"
                          "SELECT COUNT(*) FROM faculty1");
    std::ostringstream out, err;
    EXPECT_EQ(s.repl(in, out, err), 0);
    EXPECT_NE(err.str().find("NO_SUCH_COLUMN"), std::string::npos);
    const std::string o = out.str();
    std::size_t footers = 0;
    for (std::size_t p = o.find("row selected"); p != std::string::npos; p = o.find("row selected", p + 1))
        ++footers;
    EXPECT_EQ(footers, 2u);
}

TEST(Repl, InteractivePrompt)
{
    Session s;
    std::istringstream in("\n");
    std::ostringstream out, err;
    s.repl(in, out, err, true);
    EXPECT_EQ(out.str(), "fair> fair> \n");
}

TEST(Session, CacheOnlyForCachedTables)
{
    Session s;
    s.ingest(fixture_path, "faculty1");
    auto before = s.cluster().total_reads();
    s.query("SELECT * FROM faculty1");
    s.query("SELECT * FROM faculty1");
    EXPECT_EQ(s.cluster().total_reads() - before, 2 * s.cluster().blocks_of("faculty1").size());
    s.cache_table("faculty1");
    before = s.cluster().total_reads();
    s.query("SELECT * FROM faculty1");
    EXPECT_EQ(s.cluster().total_reads(), before);
}
