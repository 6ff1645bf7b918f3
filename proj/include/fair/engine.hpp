#ifndef FAIR_ENGINE_HPP
#define FAIR_ENGINE_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "fair/error.hpp"
#include "fair/query.hpp"
#include "fair/record.hpp"
#include "fair/storage.hpp"
#include "fair/utf8.hpp"

namespace fair {

/*======================================================================================================================
 * Catalog and cache
 *====================================================================================================================*/

struct TableInfo
{
    std::string name;
    std::string file; ///< storage file backing the table
    std::shared_ptr<const std::vector<FacultyRecord>> records;

    std::size_t row_count() const { return records ? records->size() : 0; }
};

class Catalog
{
  public:
    void add(TableInfo info)
    {
        if (tables_.contains(info.name))
            throw Error(ErrorCode::file_exists, "table '" + info.name + "' already exists");
        std::string name = info.name;
        tables_.emplace(std::move(name), std::move(info));
    }

    const TableInfo* find(const std::string& name) const
    {
        auto it = tables_.find(name);
        return it == tables_.end() ? nullptr : &it->second;
    }

    const TableInfo& at(const std::string& name) const
    {
        if (const TableInfo* t = find(name))
            return *t;
        throw Error(ErrorCode::no_such_table, "table '" + name + "' does not exist");
    }

    std::vector<std::string> names() const
    {
        std::vector<std::string> out;
        for (const auto& [name, _] : tables_)
            out.push_back(name);
        return out;
    }

  private:
    std::map<std::string, TableInfo> tables_;
};

using BlockList = std::vector<std::shared_ptr<const Block>>;

/// In-memory materialization of whole tables, keyed by storage file name.
class TableCache
{
  public:
    TableCache() = default;
    TableCache(const TableCache&) = delete;
    TableCache& operator=(const TableCache&) = delete;

    /// Counts a hit or a miss.
    std::optional<BlockList> lookup(const std::string& file)
    {
        std::lock_guard lock(mutex_);
        auto it = tables_.find(file);
        if (it == tables_.end()) {
            ++misses_;
            return std::nullopt;
        }
        ++hits_;
        return it->second;
    }

    bool contains(const std::string& file) const
    {
        std::lock_guard lock(mutex_);
        return tables_.contains(file);
    }

    void store(const std::string& file, BlockList blocks)
    {
        std::lock_guard lock(mutex_);
        tables_.try_emplace(file, std::move(blocks));
    }

    std::size_t block_count(const std::string& file) const
    {
        std::lock_guard lock(mutex_);
        auto it = tables_.find(file);
        return it == tables_.end() ? 0 : it->second.size();
    }

    std::uint64_t hits() const
    {
        std::lock_guard lock(mutex_);
        return hits_;
    }

    std::uint64_t misses() const
    {
        std::lock_guard lock(mutex_);
        return misses_;
    }

  private:
    mutable std::mutex mutex_;
    std::map<std::string, BlockList> tables_;
    std::uint64_t hits_ = 0;
    std::uint64_t misses_ = 0;
};

/// Loads every block of `file` into the cache. A second call is a no-op.
inline std::size_t cache_table(TableCache& cache, const ClusterState& cluster, const std::string& file)
{
    if (cache.contains(file))
        return cache.block_count(file);
    if (!cluster.has_file(file))
        throw Error(ErrorCode::no_such_table, "table '" + file + "' is not stored");
    BlockList blocks;
    for (BlockId id : cluster.blocks_of(file))
        blocks.push_back(cluster.read_block(id));
    const std::size_t n = blocks.size();
    cache.store(file, std::move(blocks));
    return n;
}

/*======================================================================================================================
 * Physical plan
 *====================================================================================================================*/

/// Predicate with column names resolved to schema indices.
struct BoundPredicate
{
    query::Predicate::Kind kind;
    std::size_t column = 0;
    std::string pattern;
    FieldValue literal;
    std::vector<BoundPredicate> children;

    // Two-valued: LIKE, = and <> are false on Missing; NOT negates.
    bool matches(const FacultyRecord& row) const
    {
        using K = query::Predicate::Kind;
        switch (kind) {
            case K::like: return query::like_match(row.fields[column], pattern);
            case K::eq:
                return !row.fields[column].is_missing() && value_compare(row.fields[column], literal) == 0;
            case K::neq:
                return !row.fields[column].is_missing() && value_compare(row.fields[column], literal) != 0;
            case K::and_: return children[0].matches(row) && children[1].matches(row);
            case K::or_:  return children[0].matches(row) || children[1].matches(row);
            case K::not_: return !children[0].matches(row);
        }
        return false;
    }
};

struct ScanStage
{
    std::string table;
    std::string file;
};

struct FilterStage
{
    BoundPredicate predicate;
    std::string text;
};

/// Columns a map task emits per row, as schema indices.
struct ProjectStage
{
    std::vector<std::size_t> columns;
    std::vector<std::string> names;
};

/// Group key as positions within the projected row.
struct ShuffleStage
{
    std::vector<std::size_t> key;
};

struct OutputColumn
{
    enum class Kind { key, count_star, count_column };
    Kind kind;
    std::size_t index = 0; ///< key position, or projected-row position for count_column
    std::string name;
};

struct AggregateStage
{
    std::vector<OutputColumn> outputs;
    bool global = false; ///< COUNT without GROUP BY: exactly one output row
};

struct SortKey
{
    std::size_t column; ///< output column
    bool descending = false;
};

struct SortStage
{
    std::vector<SortKey> keys;
};

struct LimitStage
{
    std::size_t n;
};

using Stage = std::variant<ScanStage, FilterStage, ProjectStage, ShuffleStage, AggregateStage, SortStage, LimitStage>;

struct PhysicalPlan
{
    std::vector<Stage> stages;
    std::vector<std::string> output_columns;

    template <class T>
    const T* find() const
    {
        for (const Stage& s : stages)
            if (const T* t = std::get_if<T>(&s))
                return t;
        return nullptr;
    }

    const ScanStage& scan() const { return std::get<ScanStage>(stages.front()); }
};

inline std::string stage_name(const Stage& s)
{
    return std::visit(
        [](const auto& st) -> std::string {
            using T = std::decay_t<decltype(st)>;
            if constexpr (std::is_same_v<T, ScanStage>) return "Scan";
            else if constexpr (std::is_same_v<T, FilterStage>) return "Filter";
            else if constexpr (std::is_same_v<T, ProjectStage>) return "Project";
            else if constexpr (std::is_same_v<T, ShuffleStage>) return "Shuffle";
            else if constexpr (std::is_same_v<T, AggregateStage>) return "Aggregate";
            else if constexpr (std::is_same_v<T, SortStage>) return "Sort";
            else return "Limit";
        },
        s);
}

/// One line per stage, e.g. "Filter(research_area LIKE '%data%')".
inline std::string explain(const PhysicalPlan& plan)
{
    const Schema& schema = Schema::faculty();
    std::ostringstream out;
    const ProjectStage* project = plan.find<ProjectStage>();
    auto projected_name = [&](std::size_t pos) { return std::string(schema[project->columns.at(pos)].name); };
    for (const Stage& s : plan.stages) {
        out << stage_name(s) << "(";
        std::visit(
            [&](const auto& st) {
                using T = std::decay_t<decltype(st)>;
                if constexpr (std::is_same_v<T, ScanStage>) {
                    out << st.table;
                } else if constexpr (std::is_same_v<T, FilterStage>) {
                    out << st.text;
                } else if constexpr (std::is_same_v<T, ProjectStage>) {
                    for (std::size_t i = 0; i < st.columns.size(); ++i)
                        out << (i ? ", " : "") << schema[st.columns[i]].name;
                } else if constexpr (std::is_same_v<T, ShuffleStage>) {
                    for (std::size_t i = 0; i < st.key.size(); ++i)
                        out << (i ? ", " : "") << projected_name(st.key[i]);
                } else if constexpr (std::is_same_v<T, AggregateStage>) {
                    for (std::size_t i = 0; i < st.outputs.size(); ++i)
                        out << (i ? ", " : "") << st.outputs[i].name;
                } else if constexpr (std::is_same_v<T, SortStage>) {
                    for (std::size_t i = 0; i < st.keys.size(); ++i)
                        out << (i ? ", " : "") << plan.output_columns[st.keys[i].column]
                            << (st.keys[i].descending ? " DESC" : " ASC");
                } else {
                    out << st.n;
                }
            },
            s);
        out << ")\n";
    }
    return out.str();
}

namespace detail {

inline std::size_t resolve_column(const std::string& name)
{
    if (auto idx = Schema::faculty().index_of(name))
        return *idx;
    throw Error(ErrorCode::no_such_column, "column '" + name + "' does not exist");
}

inline BoundPredicate bind(const query::Predicate& p)
{
    using K = query::Predicate::Kind;
    BoundPredicate b{p.kind, 0, {}, p.literal, {}};
    if (p.kind == K::like || p.kind == K::eq || p.kind == K::neq)
        b.column = resolve_column(p.column);
    if (p.kind == K::like) {
        if (p.pattern.kind != query::PatternExpr::Kind::literal)
            throw Error(ErrorCode::unsupported_expression, "LIKE pattern is not a string literal");
        b.pattern = p.pattern.text;
    }
    for (const query::Predicate& child : p.children)
        b.children.push_back(bind(child));
    return b;
}

} // namespace detail

/// Validates names against the catalog and lays out the stage pipeline.
inline PhysicalPlan plan(const query::QueryAst& input, const Catalog& catalog)
{
    using query::QueryAst, query::SelectItem, query::ColumnRef, query::CountAgg, query::OrderItem;
    const QueryAst ast = fold_constants(input);
    const TableInfo& table = catalog.at(ast.table);
    const Schema& schema = Schema::faculty();

    PhysicalPlan out;
    out.stages.push_back(ScanStage{table.name, table.file});
    if (ast.predicate)
        out.stages.push_back(FilterStage{fair::detail::bind(*ast.predicate), query::to_string(*ast.predicate)});

    const bool aggregate = ast.has_aggregate() || !ast.group_by.empty();
    std::vector<SortKey> sort_keys;

    if (!aggregate) {
        ProjectStage project;
        if (ast.star) {
            for (std::size_t i = 0; i < schema.size(); ++i) {
                project.columns.push_back(i);
                project.names.emplace_back(schema[i].name);
            }
        } else {
            for (const SelectItem& item : ast.select_list) {
                project.columns.push_back(fair::detail::resolve_column(std::get<ColumnRef>(item.expr).name));
                project.names.push_back(query::output_name(item));
            }
        }
        for (const OrderItem& item : ast.order_by) {
            const auto* col = std::get_if<ColumnRef>(&item.expr);
            if (!col)
                throw Error(ErrorCode::invalid_query, "ORDER BY COUNT requires an aggregate query");
            std::optional<std::size_t> pos;
            if (ast.star) {
                pos = fair::detail::resolve_column(col->name);
            } else {
                for (std::size_t i = 0; i < ast.select_list.size() && !pos; ++i)
                    if (ast.select_list[i].alias == col->name)
                        pos = i;
                for (std::size_t i = 0; i < ast.select_list.size() && !pos; ++i)
                    if (ast.select_list[i].expr == item.expr)
                        pos = i;
            }
            if (!pos)
                throw Error(ErrorCode::invalid_query, "ORDER BY column '" + col->name + "' is not in the select list");
            sort_keys.push_back({*pos, item.descending});
        }
        out.output_columns = project.names;
        out.stages.push_back(std::move(project));
    } else {
        ProjectStage project;
        auto project_pos = [&](std::size_t schema_idx) {
            for (std::size_t i = 0; i < project.columns.size(); ++i)
                if (project.columns[i] == schema_idx)
                    return i;
            project.columns.push_back(schema_idx);
            project.names.emplace_back(schema[schema_idx].name);
            return project.columns.size() - 1;
        };
        ShuffleStage shuffle;
        std::vector<std::size_t> group_schema;
        for (const std::string& g : ast.group_by) {
            const std::size_t idx = fair::detail::resolve_column(g);
            if (std::find(group_schema.begin(), group_schema.end(), idx) != group_schema.end())
                continue;
            group_schema.push_back(idx);
            shuffle.key.push_back(project_pos(idx));
        }
        AggregateStage agg;
        agg.global = ast.group_by.empty();
        for (const SelectItem& item : ast.select_list) {
            OutputColumn oc{OutputColumn::Kind::key, 0, query::output_name(item)};
            if (const auto* col = std::get_if<ColumnRef>(&item.expr)) {
                const std::size_t idx = fair::detail::resolve_column(col->name);
                oc.index = static_cast<std::size_t>(
                    std::find(group_schema.begin(), group_schema.end(), idx) - group_schema.begin());
            } else if (const auto& count = std::get<CountAgg>(item.expr); count.column) {
                oc.kind = OutputColumn::Kind::count_column;
                oc.index = project_pos(fair::detail::resolve_column(*count.column));
            } else {
                oc.kind = OutputColumn::Kind::count_star;
            }
            agg.outputs.push_back(std::move(oc));
        }
        for (const OrderItem& item : ast.order_by) {
            std::optional<std::size_t> pos;
            const auto* col = std::get_if<ColumnRef>(&item.expr);
            for (std::size_t i = 0; col && i < ast.select_list.size() && !pos; ++i)
                if (ast.select_list[i].alias == col->name)
                    pos = i;
            for (std::size_t i = 0; i < ast.select_list.size() && !pos; ++i)
                if (ast.select_list[i].expr == item.expr)
                    pos = i;
            if (!pos)
                throw Error(ErrorCode::invalid_query, "ORDER BY item is not in the select list");
            sort_keys.push_back({*pos, item.descending});
        }
        for (const OutputColumn& oc : agg.outputs)
            out.output_columns.push_back(oc.name);
        out.stages.push_back(std::move(project));
        out.stages.push_back(std::move(shuffle));
        out.stages.push_back(std::move(agg));
    }

    if (!sort_keys.empty())
        out.stages.push_back(SortStage{std::move(sort_keys)});
    if (ast.limit)
        out.stages.push_back(LimitStage{*ast.limit});
    return out;
}

/*======================================================================================================================
 * Map / shuffle / reduce
 *====================================================================================================================*/

using Row = std::vector<FieldValue>;

struct KeyValue
{
    Row key;
    Row value;
    std::uint64_t record_id = 0;

    friend bool operator==(const KeyValue&, const KeyValue&) = default;
};

struct KeyValueBatch
{
    BlockId block = 0;
    std::size_t block_index = 0; ///< position of the block within the table
    std::vector<KeyValue> pairs;
};

/// Filters, projects and keys one block's rows, in record_id order.
inline KeyValueBatch map_task(const Block& block, const BoundPredicate* filter, const ProjectStage& project,
                              const std::vector<std::size_t>& key)
{
    KeyValueBatch batch;
    batch.block = block.id;
    for (const FacultyRecord& row : block.rows) {
        if (filter && !filter->matches(row))
            continue;
        KeyValue kv;
        kv.record_id = row.record_id;
        kv.value.reserve(project.columns.size());
        for (std::size_t c : project.columns)
            kv.value.push_back(row.fields[c]);
        for (std::size_t k : key)
            kv.key.push_back(kv.value[k]);
        batch.pairs.push_back(std::move(kv));
    }
    return batch;
}

using ShuffleResult = std::map<Row, std::vector<KeyValue>, TupleLess>;

/// Groups pairs by exact key equality. Within a group, values are ordered by
/// (block_index, position in batch) whatever order the batches arrive in.
inline ShuffleResult shuffle(std::vector<KeyValueBatch> batches)
{
    std::stable_sort(batches.begin(), batches.end(),
                     [](const KeyValueBatch& a, const KeyValueBatch& b) { return a.block_index < b.block_index; });
    ShuffleResult groups;
    for (KeyValueBatch& batch : batches)
        for (KeyValue& kv : batch.pairs)
            groups[kv.key].push_back(std::move(kv));
    return groups;
}

/// Reduces one shuffled group to its output row.
inline Row reduce_task(const Row& key, const std::vector<KeyValue>& values, const AggregateStage& aggregate)
{
    Row out;
    for (const OutputColumn& oc : aggregate.outputs) {
        switch (oc.kind) {
            case OutputColumn::Kind::key:
                out.push_back(key.at(oc.index));
                break;
            case OutputColumn::Kind::count_star:
                out.push_back(FieldValue::number(static_cast<double>(values.size())));
                break;
            case OutputColumn::Kind::count_column: {
                const auto n = std::count_if(values.begin(), values.end(),
                                             [&](const KeyValue& kv) { return !kv.value[oc.index].is_missing(); });
                out.push_back(FieldValue::number(static_cast<double>(n)));
                break;
            }
        }
    }
    return out;
}

namespace detail {

inline bool sort_less(const Row& a, std::uint64_t a_id, const Row& b, std::uint64_t b_id, const std::vector<SortKey>& keys)
{
    for (const SortKey& k : keys) {
        const auto c = value_compare(a[k.column], b[k.column]);
        if (c != 0)
            return k.descending ? c > 0 : c < 0;
    }
    return a_id < b_id;
}

} // namespace detail

/// Sorts one map task's output by `keys`, ties by record_id.
inline void sort_run(KeyValueBatch& batch, const std::vector<SortKey>& keys)
{
    std::sort(batch.pairs.begin(), batch.pairs.end(), [&](const KeyValue& a, const KeyValue& b) {
        return detail::sort_less(a.value, a.record_id, b.value, b.record_id, keys);
    });
}

/// K-way merge of sorted runs.
inline std::vector<KeyValue> merge_runs(std::vector<KeyValueBatch> runs, const std::vector<SortKey>& keys)
{
    using Cursor = std::pair<std::size_t, std::size_t>; // run, position
    auto greater = [&](const Cursor& x, const Cursor& y) {
        const KeyValue& a = runs[x.first].pairs[x.second];
        const KeyValue& b = runs[y.first].pairs[y.second];
        return detail::sort_less(b.value, b.record_id, a.value, a.record_id, keys);
    };
    std::priority_queue<Cursor, std::vector<Cursor>, decltype(greater)> heap(greater);
    for (std::size_t r = 0; r < runs.size(); ++r)
        if (!runs[r].pairs.empty())
            heap.emplace(r, 0);
    std::vector<KeyValue> out;
    while (!heap.empty()) {
        auto [r, i] = heap.top();
        heap.pop();
        out.push_back(std::move(runs[r].pairs[i]));
        if (i + 1 < runs[r].pairs.size())
            heap.emplace(r, i + 1);
    }
    return out;
}

/*======================================================================================================================
 * Results
 *====================================================================================================================*/

struct ResultTable
{
    std::vector<std::string> columns;
    std::vector<Row> rows;
    std::size_t rows_selected = 0;
    double elapsed_seconds = 0;

    /// Equality ignores elapsed time.
    friend bool operator==(const ResultTable& a, const ResultTable& b)
    {
        return a.columns == b.columns && a.rows == b.rows && a.rows_selected == b.rows_selected;
    }
};

inline std::string footer(const ResultTable& result)
{
    char secs[32];
    std::snprintf(secs, sizeof(secs), "%.3f", result.elapsed_seconds);
    return std::to_string(result.rows_selected) + (result.rows_selected == 1 ? " row" : " rows") + " selected ("
           + secs + " seconds)";
}

/// Console rendering: '+---+' borders, one '|' delimited line per row, then the footer.
inline std::string render_text(const ResultTable& result)
{
    std::vector<std::size_t> width(result.columns.size(), 0);
    for (std::size_t c = 0; c < result.columns.size(); ++c)
        width[c] = utf8::length(result.columns[c]);
    for (const Row& row : result.rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            width[c] = std::max(width[c], utf8::length(row[c].to_display()));

    std::string border = "+";
    for (std::size_t w : width)
        border += std::string(w + 2, '-') + "+";
    border += "\n";

    auto line = [&](auto&& cell) {
        std::string out = "|";
        for (std::size_t c = 0; c < width.size(); ++c) {
            const std::string text = cell(c);
            out += " " + text + std::string(width[c] - utf8::length(text), ' ') + " |";
        }
        return out + "\n";
    };

    std::string out = border;
    out += line([&](std::size_t c) { return result.columns[c]; });
    out += border;
    for (const Row& row : result.rows)
        out += line([&](std::size_t c) { return row[c].to_display(); });
    out += border;
    out += footer(result) + "\n";
    return out;
}

inline nlohmann::json to_json(const FieldValue& v)
{
    if (v.is_missing())
        return nullptr;
    if (v.is_number()) {
        const double x = v.as_number();
        if (std::trunc(x) == x && std::fabs(x) < 9007199254740992.0)
            return static_cast<std::int64_t>(x);
        return x;
    }
    return v.as_text();
}

inline nlohmann::json to_json(const ResultTable& result)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const Row& row : result.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (const FieldValue& v : row)
            r.push_back(to_json(v));
        rows.push_back(std::move(r));
    }
    return {{"columns", result.columns}, {"rows", std::move(rows)}, {"rows_selected", result.rows_selected}};
}

/*======================================================================================================================
 * Execution
 *====================================================================================================================*/

struct ExecOptions
{
    std::size_t workers = 4; ///< fixed map-task pool; task i runs on worker i % workers
};

/// Runs the plan over the table's blocks: concurrent map tasks, a shuffle
/// barrier, then reduce (COUNT per group) or merge (ORDER BY). With a cache, a
/// hit scans cached blocks and a miss reads storage and then populates it.
inline ResultTable execute(const PhysicalPlan& plan, const ClusterState& cluster, TableCache* cache = nullptr,
                           ExecOptions options = {})
{
    const auto started = std::chrono::steady_clock::now();
    const ScanStage& scan = plan.scan();
    const FilterStage* filter = plan.find<FilterStage>();
    const ProjectStage* project = plan.find<ProjectStage>();
    const ShuffleStage* shuffle_stage = plan.find<ShuffleStage>();
    const AggregateStage* aggregate = plan.find<AggregateStage>();
    const SortStage* sort = plan.find<SortStage>();
    const LimitStage* limit = plan.find<LimitStage>();

    std::optional<BlockList> cached = cache ? cache->lookup(scan.file) : std::nullopt;
    const std::vector<BlockId> block_ids = cached ? std::vector<BlockId>{} : cluster.blocks_of(scan.file);
    const std::size_t task_count = cached ? cached->size() : block_ids.size();

    std::vector<KeyValueBatch> batches(task_count);
    BlockList loaded(task_count);
    std::vector<std::exception_ptr> errors(task_count);
    const std::vector<std::size_t> no_key;

    auto run_task = [&](std::size_t t) {
        try {
            std::shared_ptr<const Block> block = cached ? (*cached)[t] : cluster.read_block(block_ids[t]);
            batches[t] = map_task(*block, filter ? &filter->predicate : nullptr, *project,
                                  shuffle_stage ? shuffle_stage->key : no_key);
            batches[t].block_index = t;
            if (!aggregate && sort)
                sort_run(batches[t], sort->keys);
            loaded[t] = std::move(block);
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(options.workers, task_count));
    if (workers <= 1) {
        for (std::size_t t = 0; t < task_count; ++t)
            run_task(t);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t t = w; t < task_count; t += workers)
                    run_task(t);
            });
    }
    for (const std::exception_ptr& e : errors)
        if (e)
            std::rethrow_exception(e);
    if (cache && !cached)
        cache->store(scan.file, std::move(loaded));

    ResultTable result;
    result.columns = plan.output_columns;

    if (aggregate) {
        ShuffleResult groups = shuffle(std::move(batches));
        if (groups.empty() && aggregate->global)
            groups.emplace(Row{}, std::vector<KeyValue>{});
        for (const auto& [key, values] : groups)
            result.rows.push_back(reduce_task(key, values, *aggregate));
        if (sort) {
            std::stable_sort(result.rows.begin(), result.rows.end(), [&](const Row& a, const Row& b) {
                for (const SortKey& k : sort->keys) {
                    const auto c = value_compare(a[k.column], b[k.column]);
                    if (c != 0)
                        return k.descending ? c > 0 : c < 0;
                }
                return false;
            });
        }
    } else {
        std::vector<KeyValue> merged;
        if (sort) {
            merged = merge_runs(std::move(batches), sort->keys);
        } else {
            for (KeyValueBatch& b : batches)
                for (KeyValue& kv : b.pairs)
                    merged.push_back(std::move(kv));
        }
        result.rows.reserve(merged.size());
        for (KeyValue& kv : merged)
            result.rows.push_back(std::move(kv.value));
    }

    if (limit && result.rows.size() > limit->n)
        result.rows.resize(limit->n);
    result.rows_selected = result.rows.size();
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
    result.elapsed_seconds = elapsed.count();
    return result;
}

/// Storage, catalog and optional cache that a query runs against.
struct QueryContext
{
    const Catalog& catalog;
    const ClusterState& cluster;
    TableCache* cache = nullptr;
    ExecOptions options = {};
};

/// parse -> fold_constants -> plan -> execute.
inline ResultTable run_query(const QueryContext& ctx, std::string_view sql)
{
    const query::QueryAst ast = query::fold_constants(query::parse(sql));
    return execute(plan(ast, ctx.catalog), ctx.cluster, ctx.cache, ctx.options);
}

} // namespace fair

#endif // FAIR_ENGINE_HPP
