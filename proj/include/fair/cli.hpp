#ifndef FAIR_CLI_HPP
#define FAIR_CLI_HPP

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fair/engine.hpp"
#include "fair/error.hpp"
#include "fair/ingest.hpp"
#include "fair/kmeans.hpp"
#include "fair/query.hpp"
#include "fair/record.hpp"
#include "fair/report.hpp"
#include "fair/storage.hpp"

#ifndef FAIR_DEFAULT_DATA
#define FAIR_DEFAULT_DATA "fixtures/nit_faculty.csv"
#endif

namespace fair::cli {

/// Catalog, simulated cluster and table cache for one shell or command invocation.
/// Tables are stored under a file of the same name. Only tables explicitly
/// cached (cache_table) are scanned from memory.
class Session
{
  public:
    explicit Session(StorageConfig config = {}) : cluster_(config) {}

    Session(const Session&) = delete;
    Session& operator=(const Session&) = delete;

    const StorageConfig& config() const { return cluster_.config(); }
    ClusterState& cluster() { return cluster_; }
    const ClusterState& cluster() const { return cluster_; }
    const Catalog& catalog() const { return catalog_; }
    TableCache& cache() { return cache_; }
    ExecOptions& exec_options() { return options_; }

    IngestReport ingest(const std::string& path, const std::string& table)
    {
        IngestResult result = ingest_file(path);
        add_table(table, std::move(result.records), path);
        return result.report;
    }

    void add_table(const std::string& table, std::vector<FacultyRecord> records, const std::string& source = {})
    {
        if (catalog_.find(table))
            throw Error(ErrorCode::file_exists, "table '" + table + "' already exists");
        auto shared = std::make_shared<const std::vector<FacultyRecord>>(std::move(records));
        cluster_.store_file(table, *shared);
        catalog_.add({table, table, shared});
        sources_[table] = source;
    }

    const std::vector<FacultyRecord>& records(const std::string& table) const { return *catalog_.at(table).records; }

    QueryContext context(const std::string& table)
    {
        return {catalog_, cluster_, cached_.contains(table) ? &cache_ : nullptr, options_};
    }

    ResultTable query(std::string_view sql)
    {
        const query::QueryAst ast = query::fold_constants(query::parse(sql));
        return execute(fair::plan(ast, catalog_), cluster_, cached_.contains(ast.table) ? &cache_ : nullptr, options_);
    }

    std::size_t cache_table(const std::string& table)
    {
        const TableInfo& info = catalog_.at(table);
        const std::size_t n = fair::cache_table(cache_, cluster_, info.file);
        cached_.insert(table);
        return n;
    }

    /// Canonical query text followed by the plan stages.
    std::string explain(std::string_view sql) const
    {
        const query::QueryAst ast = query::fold_constants(query::parse(sql));
        return query::to_string(ast) + "\n" + fair::explain(fair::plan(ast, catalog_));
    }

    nlohmann::json save() const
    {
        const nlohmann::json snap = cluster_.snapshot();
        nlohmann::json j;
        j["config"] = snap["config"];
        j["nodes"] = snap["nodes"];
        j["tables"] = nlohmann::json::array();
        for (const std::string& name : catalog_.names()) {
            const TableInfo& info = catalog_.at(name);
            nlohmann::json records = nlohmann::json::array();
            for (const FacultyRecord& r : *info.records) {
                nlohmann::json row = nlohmann::json::array({r.record_id});
                for (const FieldValue& v : r.fields)
                    row.push_back(to_json(v));
                records.push_back(std::move(row));
            }
            j["tables"].push_back({{"name", name},
                                   {"source", sources_.at(name)},
                                   {"manifest", cluster_.manifest(info.file)},
                                   {"records", std::move(records)}});
        }
        return j;
    }

    static std::unique_ptr<Session> load(const nlohmann::json& j)
    {
        try {
            const auto& c = j.at("config");
            StorageConfig config{c.at("replication_factor").get<std::size_t>(), c.at("block_row_capacity").get<std::size_t>(),
                                 c.at("node_count").get<std::size_t>()};
            auto session = std::make_unique<Session>(config);
            for (const auto& t : j.at("tables")) {
                std::vector<FacultyRecord> records;
                for (const auto& row : t.at("records")) {
                    FacultyRecord r;
                    r.record_id = row.at(0).get<std::uint64_t>();
                    for (std::size_t i = 0; i < column_count; ++i) {
                        const auto& v = row.at(i + 1);
                        if (v.is_number())
                            r.fields[i] = FieldValue::number(v.get<double>());
                        else if (v.is_string())
                            r.fields[i] = FieldValue::text(v.get<std::string>());
                    }
                    records.push_back(std::move(r));
                }
                const auto manifest = t.at("manifest").get<PlacementManifest>();
                const std::string name = t.at("name").get<std::string>();
                auto shared = std::make_shared<const std::vector<FacultyRecord>>(std::move(records));
                session->cluster_.restore_file(manifest, *shared);
                session->catalog_.add({name, manifest.file, shared});
                session->sources_[name] = t.value("source", "");
            }
            for (const auto& node : j.at("nodes"))
                if (!node.at("live").get<bool>())
                    session->cluster_.fail_node(node.at("id").get<NodeId>());
            return session;
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::invalid_argument, std::string("malformed session manifest: ") + e.what());
        }
    }

    /// Beeline-style loop: statements end with ';', lines starting with '!' are
    /// meta-commands (!tables, !explain <query>, !cache <table>, !quit). Errors
    /// are reported and the loop continues; EOF ends it.
    int repl(std::istream& in, std::ostream& out, std::ostream& err, bool interactive = false)
    {
        std::string buffer, line;
        auto prompt = [&] {
            if (interactive)
                out << (buffer.empty() ? "fair> " : "    > ") << std::flush;
        };
        auto run_statement = [&](const std::string& sql) {
            try {
                out << render_text(query(sql));
            } catch (const std::exception& e) {
                err << "Error: " << e.what() << "\n";
            }
        };

        prompt();
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            const std::string trimmed = trim(line);
            if (buffer.empty() && trimmed.empty()) {
                prompt();
                continue;
            }
            if (buffer.empty() && trimmed.front() == '!') {
                if (!meta_command(trimmed, out, err))
                    return 0;
                prompt();
                continue;
            }
            buffer += line + "\n";
            for (std::size_t end; (end = statement_end(buffer)) != std::string::npos;) {
                const std::string sql = buffer.substr(0, end);
                buffer.erase(0, end + 1);
                if (!trim(sql).empty())
                    run_statement(sql);
            }
            if (trim(buffer).empty())
                buffer.clear();
            prompt();
        }
        if (!trim(buffer).empty())
            run_statement(buffer);
        if (interactive)
            out << "\n";
        return 0;
    }

  private:
    static std::string trim(std::string_view s)
    {
        const auto b = s.find_first_not_of(" \t\r\n");
        if (b == std::string_view::npos)
            return {};
        const auto e = s.find_last_not_of(" \t\r\n");
        return std::string(s.substr(b, e - b + 1));
    }

    // Position of the first ';' outside single quotes.
    static std::size_t statement_end(const std::string& s)
    {
        bool quoted = false;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '\'')
                quoted = !quoted;
            else if (s[i] == ';' && !quoted)
                return i;
        }
        return std::string::npos;
    }

    // Returns false on !quit.
    bool meta_command(const std::string& text, std::ostream& out, std::ostream& err)
    {
        const auto space = text.find_first_of(" \t");
        const std::string cmd = text.substr(0, space);
        std::string arg = space == std::string::npos ? "" : trim(text.substr(space));
        if (!arg.empty() && arg.back() == ';')
            arg = trim(arg.substr(0, arg.size() - 1));
        try {
            if (cmd == "!quit" || cmd == "!q" || cmd == "!exit") {
                return false;
            } else if (cmd == "!tables") {
                for (const std::string& name : catalog_.names())
                    out << name << "\n";
            } else if (cmd == "!explain") {
                out << explain(arg);
            } else if (cmd == "!cache") {
                const std::size_t n = cache_table(arg);
                out << "cached " << n << " block(s) of " << arg << "\n";
            } else if (cmd == "!help") {
                out << "!tables  !explain <query>  !cache <table>  !quit\n";
            } else {
                err << "Error: unknown command " << cmd << " (try !help)\n";
            }
        } catch (const std::exception& e) {
            err << "Error: " << e.what() << "\n";
        }
        return true;
    }

    ClusterState cluster_;
    Catalog catalog_;
    TableCache cache_;
    ExecOptions options_;
    std::set<std::string> cached_;
    std::map<std::string, std::string> sources_;
};

inline int exit_code_for(ErrorCode code)
{
    switch (code) {
        case ErrorCode::io_error:
        case ErrorCode::block_unavailable:
            return 2;
        default:
            return 1;
    }
}

/// Entry point shared by the `fair` binary and the tests. `args` excludes the program name.
/// Returns 0 on success, 1 on user error, 2 on I/O or internal error.
inline int run_command(std::vector<std::string> args, std::ostream& out, std::ostream& err, std::istream& in,
                       bool interactive = false)
{
    CLI::App app{"Faculty information warehouse: replicated block store, HiveQL-subset queries, k-means, reports", "fair"};
    app.require_subcommand(1);
    app.fallthrough();

    StorageConfig config;
    std::string data = FAIR_DEFAULT_DATA;
    std::string table = "faculty1";
    std::string load_manifest, save_manifest;
    std::size_t workers = 4;
    app.add_option("--partitions-capacity", config.block_row_capacity, "Rows per storage block")->check(CLI::PositiveNumber);
    app.add_option("--nodes", config.node_count, "Simulated data nodes")->check(CLI::PositiveNumber);
    app.add_option("--replication", config.replication_factor, "Replicas per block")->check(CLI::PositiveNumber);
    app.add_option("--workers", workers, "Map-task worker threads")->check(CLI::PositiveNumber);
    app.add_option("--data", data, "CSV loaded when no session manifest is given");
    app.add_option("--table", table, "Table name");
    app.add_option("--load-manifest", load_manifest, "Restore a session saved with --save-manifest");
    app.add_option("--save-manifest", save_manifest, "Write the session (placement + records) as JSON");

    std::string ingest_path;
    bool print_manifest = false;
    auto* ingest_cmd = app.add_subcommand("ingest", "Load a faculty CSV into a table");
    ingest_cmd->add_option("csv", ingest_path, "CSV file")->required();
    ingest_cmd->add_flag("--print-manifest", print_manifest, "Print the block placement as JSON");

    std::string sql, query_format = "text";
    auto* query_cmd = app.add_subcommand("query", "Run one query");
    query_cmd->add_option("sql", sql, "Query text")->required();
    query_cmd->add_option("--format", query_format)->check(CLI::IsMember({"text", "json"}));

    auto* repl_cmd = app.add_subcommand("repl", "Interactive shell");

    kmeans::FitOptions fit;
    auto* cluster_cmd = app.add_subcommand("cluster", "k-means over university coordinates");
    cluster_cmd->add_option("--k", fit.k)->required();
    cluster_cmd->add_option("--seed", fit.seed)->required();
    cluster_cmd->add_option("--max-iters", fit.max_iters);
    cluster_cmd->add_option("--tol", fit.tol);

    std::string by = "university", report_format = "csv";
    bool chart = false;
    std::size_t chart_width = 40;
    auto* report_cmd = app.add_subcommand("report", "Aggregate reports");
    report_cmd->require_subcommand(1);
    auto* counts_cmd = report_cmd->add_subcommand("counts", "Faculty counts");
    counts_cmd->add_option("--by", by)->check(CLI::IsMember({"university", "department"}));
    counts_cmd->add_flag("--chart", chart, "Render a text bar chart");
    counts_cmd->add_option("--width", chart_width)->check(CLI::Range(10, 1000));
    counts_cmd->add_option("--format", report_format)->check(CLI::IsMember({"csv", "json"}));

    std::string geo_format = "json";
    auto* export_cmd = app.add_subcommand("export", "Data exports");
    export_cmd->require_subcommand(1);
    auto* geo_cmd = export_cmd->add_subcommand("geo", "One coordinate pair per university");
    geo_cmd->add_option("--format", geo_format)->check(CLI::IsMember({"json", "csv"}));

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 1;
    }

    try {
        std::unique_ptr<Session> session;
        if (!load_manifest.empty()) {
            std::ifstream f(load_manifest);
            if (!f)
                throw Error(ErrorCode::io_error, "cannot open '" + load_manifest + "'");
            nlohmann::json j;
            try {
                f >> j;
            } catch (const nlohmann::json::exception& e) {
                throw Error(ErrorCode::io_error, "cannot parse '" + load_manifest + "': " + e.what());
            }
            session = Session::load(j);
        } else {
            session = std::make_unique<Session>(config);
        }
        session->exec_options().workers = workers;

        if (ingest_cmd->parsed()) {
            const IngestReport report = session->ingest(ingest_path, table);
            for (const IngestWarning& w : report.warnings)
                err << "WARN line " << w.line << ": " << to_string(w.code) << ": " << w.message << "\n";
            err << "ingested " << ingest_path << " into " << table << ": rows_read=" << report.rows_read
                << " records_produced=" << report.records_produced << " rows_rejected=" << report.rows_rejected
                << " warnings=" << report.warnings.size() << "\n";
            if (print_manifest)
                out << nlohmann::json(session->cluster().manifest(table)).dump(2) << "\n";
        } else if (load_manifest.empty()) {
            session->ingest(data, table);
        }

        if (query_cmd->parsed()) {
            const ResultTable result = session->query(sql);
            if (query_format == "json")
                out << to_json(result).dump() << "\n";
            else
                out << render_text(result);
        } else if (repl_cmd->parsed()) {
            session->repl(in, out, err, interactive);
        } else if (cluster_cmd->parsed()) {
            const report::GeoExport geo = report::geo_export(session->records(table));
            for (const std::string& w : geo.warnings)
                err << "WARN " << w << "\n";
            const auto points = report::to_geo_points(geo);
            out << kmeans::to_json(kmeans::fit(points, fit), points).dump(2) << "\n";
        } else if (counts_cmd->parsed()) {
            const auto grouping = by == "university" ? report::Grouping::university : report::Grouping::department;
            const report::CountReport counts = report::faculty_counts(session->context(table), table, grouping);
            if (chart)
                out << report::render_bar_chart(counts, chart_width);
            else if (report_format == "json")
                out << report::to_json(counts).dump(2) << "\n";
            else
                out << report::to_csv(counts);
        } else if (geo_cmd->parsed()) {
            const report::GeoExport geo = report::geo_export(session->records(table));
            for (const std::string& w : geo.warnings)
                err << "WARN " << w << "\n";
            if (geo_format == "csv")
                out << report::to_csv(geo);
            else
                out << report::to_json(geo).dump(2) << "\n";
        }

        if (!save_manifest.empty()) {
            std::ofstream f(save_manifest);
            if (!f)
                throw Error(ErrorCode::io_error, "cannot write '" + save_manifest + "'");
            f << session->save().dump(2) << "\n";
        }
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace fair::cli

#endif // FAIR_CLI_HPP
