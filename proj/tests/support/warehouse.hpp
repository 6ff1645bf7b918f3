// A table stored in a fresh cluster, for tests that drive the engine directly.
#ifndef FAIR_TESTS_WAREHOUSE_HPP
#define FAIR_TESTS_WAREHOUSE_HPP

#include <memory>
#include <string>
#include <vector>

#include "fair/engine.hpp"
#include "fair/ingest.hpp"
#include "fair/query.hpp"
#include "support/oracle.hpp"

namespace testing_support {

struct Warehouse
{
    fair::ClusterState cluster;
    fair::Catalog catalog;
    fair::TableCache cache;
    fair::ExecOptions options;

    Warehouse(const std::vector<fair::FacultyRecord>& records, fair::StorageConfig config = {}, std::size_t workers = 4,
              const std::string& table = "faculty1")
        : cluster(config)
    {
        auto shared = std::make_shared<const std::vector<fair::FacultyRecord>>(records);
        cluster.store_file(table, *shared);
        catalog.add({table, table, shared});
        options.workers = workers;
    }

    fair::ResultTable run(const std::string& sql, bool use_cache = false)
    {
        return fair::run_query({catalog, cluster, use_cache ? &cache : nullptr, options}, sql);
    }

    fair::ResultTable run(const fair::query::QueryAst& ast, bool use_cache = false)
    {
        return fair::execute(fair::plan(ast, catalog), cluster, use_cache ? &cache : nullptr, options);
    }
};

inline std::vector<fair::FacultyRecord> fixture_records()
{
    return fair::ingest_file(std::string(FAIR_FIXTURE_DIR) + "/nit_faculty.csv").records;
}

// Oracle output expressed as a ResultTable for direct comparison.
inline fair::ResultTable oracle_table(const fair::query::QueryAst& ast, const std::vector<fair::FacultyRecord>& records)
{
    oracle::Result r = oracle::evaluate(ast, records);
    fair::ResultTable t;
    t.columns = std::move(r.columns);
    t.rows = std::move(r.rows);
    t.rows_selected = t.rows.size();
    return t;
}

} // namespace testing_support

#endif // FAIR_TESTS_WAREHOUSE_HPP
