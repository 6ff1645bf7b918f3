#ifndef FAIR_STORAGE_HPP
#define FAIR_STORAGE_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fair/error.hpp"
#include "fair/record.hpp"

namespace fair {

using NodeId = std::uint32_t;
using BlockId = std::uint64_t;

struct StorageConfig
{
    std::size_t replication_factor = 3;
    std::size_t block_row_capacity = 64;
    std::size_t node_count = 4;

    void validate() const
    {
        if (replication_factor == 0 || block_row_capacity == 0 || node_count == 0)
            throw Error(ErrorCode::invalid_argument, "storage config values must be positive");
    }

    friend bool operator==(const StorageConfig&, const StorageConfig&) = default;
};

/// An immutable chunk of consecutive rows; replicas share one instance.
struct Block
{
    BlockId id = 0;
    std::vector<FacultyRecord> rows;
    std::size_t row_capacity = 0;
};

struct BlockPlacement
{
    BlockId id = 0;
    std::size_t rows = 0;
    std::vector<NodeId> replicas; ///< read preference order

    friend bool operator==(const BlockPlacement&, const BlockPlacement&) = default;
};

struct PlacementManifest
{
    std::string file;
    std::vector<BlockPlacement> blocks;
    bool degraded = false;

    friend bool operator==(const PlacementManifest&, const PlacementManifest&) = default;
};

inline void to_json(nlohmann::json& j, const PlacementManifest& m)
{
    j = nlohmann::json{{"file", m.file}, {"blocks", nlohmann::json::array()}, {"degraded", m.degraded}};
    for (const BlockPlacement& b : m.blocks)
        j["blocks"].push_back({{"id", b.id}, {"rows", b.rows}, {"replicas", b.replicas}});
}

inline void from_json(const nlohmann::json& j, PlacementManifest& m)
{
    m.file = j.at("file").get<std::string>();
    m.degraded = j.at("degraded").get<bool>();
    m.blocks.clear();
    for (const auto& b : j.at("blocks"))
        m.blocks.push_back({b.at("id").get<BlockId>(), b.at("rows").get<std::size_t>(),
                            b.at("replicas").get<std::vector<NodeId>>()});
}

struct ReplicationReport
{
    std::size_t created = 0;
    std::vector<BlockId> lost;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// FNV-1a over the file name, mixed with the block ordinal and draw counter.
inline std::uint64_t placement_hash(std::string_view file, std::uint64_t block_ordinal, std::uint64_t draw)
{
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : file) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    h = splitmix64(h ^ splitmix64(block_ordinal));
    return splitmix64(h ^ splitmix64(draw + 0x632BE59BD9B4E019ull));
}

} // namespace detail

/// Simulated HDFS: a name node (file -> blocks -> replica nodes) and data nodes.
///
/// Metadata has a single writer and many readers (guarded by a shared mutex);
/// read_block may be called concurrently and updates per-node read counters atomically.
class ClusterState
{
  public:
    explicit ClusterState(StorageConfig config = {})
        : config_(config),
          mutex_(std::make_unique<std::shared_mutex>()),
          reads_(std::make_unique<std::atomic<std::uint64_t>[]>(config.node_count))
    {
        config_.validate();
        live_.assign(config_.node_count, true);
        node_blocks_.resize(config_.node_count);
        for (std::size_t i = 0; i < config_.node_count; ++i)
            reads_[i].store(0);
    }

    const StorageConfig& config() const noexcept { return config_; }
    std::size_t node_count() const noexcept { return config_.node_count; }

    bool is_live(NodeId node) const
    {
        std::shared_lock lock(*mutex_);
        return live_.at(node);
    }

    std::size_t live_count() const
    {
        std::shared_lock lock(*mutex_);
        return live_nodes().size();
    }

    /// Splits `records` into blocks of block_row_capacity rows and places each on
    /// min(replication_factor, live nodes) distinct nodes.
    PlacementManifest store_file(const std::string& file_name, std::span<const FacultyRecord> records)
    {
        std::unique_lock lock(*mutex_);
        if (files_.contains(file_name))
            throw Error(ErrorCode::file_exists, "file '" + file_name + "' already stored");
        const std::vector<NodeId> live = live_nodes();
        if (live.empty())
            throw Error(ErrorCode::no_capacity, "no live data nodes");

        std::vector<BlockId>& block_list = files_[file_name];
        const std::size_t cap = config_.block_row_capacity;
        for (std::size_t start = 0, ordinal = 0; start < records.size(); start += cap, ++ordinal) {
            auto block = std::make_shared<Block>();
            block->id = next_block_id_++;
            block->row_capacity = cap;
            const std::size_t end = std::min(records.size(), start + cap);
            block->rows.assign(records.begin() + static_cast<std::ptrdiff_t>(start),
                               records.begin() + static_cast<std::ptrdiff_t>(end));

            BlockMeta meta{file_name, ordinal, {}, block};
            add_replicas(meta, live, std::min(config_.replication_factor, live.size()));
            block_list.push_back(block->id);
            blocks_.emplace(block->id, std::move(meta));
        }
        return manifest_locked(file_name);
    }

    /// Re-creates a file from a saved manifest, keeping its block ids and replica sets.
    void restore_file(const PlacementManifest& manifest, std::span<const FacultyRecord> records)
    {
        std::unique_lock lock(*mutex_);
        if (files_.contains(manifest.file))
            throw Error(ErrorCode::file_exists, "file '" + manifest.file + "' already stored");
        std::size_t start = 0, ordinal = 0;
        std::vector<BlockId> block_list;
        for (const BlockPlacement& bp : manifest.blocks) {
            if (bp.rows == 0 || bp.rows > config_.block_row_capacity || start + bp.rows > records.size()
                || blocks_.contains(bp.id))
                throw Error(ErrorCode::invalid_argument, "manifest for '" + manifest.file + "' does not match its records");
            auto block = std::make_shared<Block>();
            block->id = bp.id;
            block->row_capacity = config_.block_row_capacity;
            block->rows.assign(records.begin() + static_cast<std::ptrdiff_t>(start),
                               records.begin() + static_cast<std::ptrdiff_t>(start + bp.rows));
            start += bp.rows;
            BlockMeta meta{manifest.file, ordinal++, {}, block};
            for (NodeId n : bp.replicas) {
                if (n >= config_.node_count
                    || std::find(meta.replicas.begin(), meta.replicas.end(), n) != meta.replicas.end())
                    throw Error(ErrorCode::invalid_argument, "manifest replica list is invalid");
                meta.replicas.push_back(n);
                node_blocks_[n].insert(bp.id);
            }
            next_block_id_ = std::max(next_block_id_, bp.id + 1);
            block_list.push_back(bp.id);
            blocks_.emplace(bp.id, std::move(meta));
        }
        if (start != records.size())
            throw Error(ErrorCode::invalid_argument, "manifest for '" + manifest.file + "' does not cover all records");
        files_[manifest.file] = std::move(block_list);
    }

    bool has_file(const std::string& file_name) const
    {
        std::shared_lock lock(*mutex_);
        return files_.contains(file_name);
    }

    std::vector<std::string> files() const
    {
        std::shared_lock lock(*mutex_);
        std::vector<std::string> out;
        for (const auto& [name, _] : files_)
            out.push_back(name);
        return out;
    }

    PlacementManifest manifest(const std::string& file_name) const
    {
        std::shared_lock lock(*mutex_);
        if (!files_.contains(file_name))
            throw Error(ErrorCode::no_such_table, "file '" + file_name + "' is not stored");
        return manifest_locked(file_name);
    }

    std::vector<BlockId> blocks_of(const std::string& file_name) const
    {
        std::shared_lock lock(*mutex_);
        auto it = files_.find(file_name);
        if (it == files_.end())
            throw Error(ErrorCode::no_such_table, "file '" + file_name + "' is not stored");
        return it->second;
    }

    /// Serves the block from the first live replica in preference order.
    std::shared_ptr<const Block> read_block(BlockId id) const
    {
        std::shared_lock lock(*mutex_);
        auto it = blocks_.find(id);
        if (it == blocks_.end())
            throw Error(ErrorCode::invalid_argument, "unknown block " + std::to_string(id));
        for (NodeId n : it->second.replicas) {
            if (live_[n]) {
                reads_[n].fetch_add(1, std::memory_order_relaxed);
                return it->second.data;
            }
        }
        throw Error(ErrorCode::block_unavailable, "block " + std::to_string(id) + " has no live replica");
    }

    /// Marks a node dead. Failing an already-dead node is a no-op.
    void fail_node(NodeId node)
    {
        std::unique_lock lock(*mutex_);
        if (node >= config_.node_count)
            throw Error(ErrorCode::invalid_argument, "no node " + std::to_string(node));
        live_[node] = false;
    }

    /// Drops replicas on dead nodes and tops every block back up to
    /// min(replication_factor, live nodes) using the placement rule.
    ReplicationReport re_replicate()
    {
        std::unique_lock lock(*mutex_);
        ReplicationReport report;
        const std::vector<NodeId> live = live_nodes();
        const std::size_t target = std::min(config_.replication_factor, live.size());
        for (auto& [id, meta] : blocks_) {
            std::vector<NodeId> surviving;
            for (NodeId n : meta.replicas)
                if (live_[n])
                    surviving.push_back(n);
            if (surviving.empty()) {
                report.lost.push_back(id);
                continue;
            }
            for (NodeId n : meta.replicas)
                if (!live_[n])
                    node_blocks_[n].erase(id);
            meta.replicas = std::move(surviving);
            if (meta.replicas.size() < target) {
                const std::size_t before = meta.replicas.size();
                add_replicas(meta, live, target);
                report.created += meta.replicas.size() - before;
            }
        }
        return report;
    }

    /// True when some block has fewer live replicas than the replication factor.
    bool degraded() const
    {
        std::shared_lock lock(*mutex_);
        for (const auto& [id, meta] : blocks_)
            if (live_replicas(meta) < config_.replication_factor)
                return true;
        return false;
    }

    std::uint64_t read_count(NodeId node) const { return reads_[node].load(std::memory_order_relaxed); }

    std::uint64_t total_reads() const
    {
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < config_.node_count; ++i)
            total += reads_[i].load(std::memory_order_relaxed);
        return total;
    }

    /// Block ids whose replica the node currently holds.
    std::set<BlockId> blocks_on(NodeId node) const
    {
        std::shared_lock lock(*mutex_);
        return node_blocks_.at(node);
    }

    /// Name-node metadata snapshot (the secondary name node's backup copy).
    nlohmann::json snapshot() const
    {
        std::shared_lock lock(*mutex_);
        nlohmann::json j;
        j["config"] = {{"replication_factor", config_.replication_factor},
                       {"block_row_capacity", config_.block_row_capacity},
                       {"node_count", config_.node_count}};
        j["nodes"] = nlohmann::json::array();
        for (std::size_t n = 0; n < config_.node_count; ++n)
            j["nodes"].push_back({{"id", n}, {"live", static_cast<bool>(live_[n])}});
        j["files"] = nlohmann::json::array();
        for (const auto& [name, _] : files_)
            j["files"].push_back(manifest_locked(name));
        return j;
    }

  private:
    struct BlockMeta
    {
        std::string file;
        std::size_t ordinal = 0;
        std::vector<NodeId> replicas;
        std::shared_ptr<const Block> data;
    };

    std::vector<NodeId> live_nodes() const
    {
        std::vector<NodeId> out;
        for (std::size_t n = 0; n < live_.size(); ++n)
            if (live_[n])
                out.push_back(static_cast<NodeId>(n));
        return out;
    }

    std::size_t live_replicas(const BlockMeta& meta) const
    {
        return static_cast<std::size_t>(std::count_if(meta.replicas.begin(), meta.replicas.end(),
                                                      [&](NodeId n) { return live_[n]; }));
    }

    // Replica i draws hash(file, ordinal, i') mod |live| for i' = i, i+1, ...
    // until it lands on a node not yet holding the block.
    void add_replicas(BlockMeta& meta, const std::vector<NodeId>& live, std::size_t target)
    {
        auto holds = [&](NodeId n) { return std::find(meta.replicas.begin(), meta.replicas.end(), n) != meta.replicas.end(); };
        while (meta.replicas.size() < target) {
            const std::uint64_t replica = meta.replicas.size();
            NodeId chosen = live.front();
            bool found = false;
            for (std::uint64_t draw = replica; draw < replica + 16 * live.size(); ++draw) {
                const NodeId candidate = live[detail::placement_hash(meta.file, meta.ordinal, draw) % live.size()];
                if (!holds(candidate)) {
                    chosen = candidate;
                    found = true;
                    break;
                }
            }
            if (!found) {
                for (NodeId n : live) {
                    if (!holds(n)) {
                        chosen = n;
                        break;
                    }
                }
            }
            meta.replicas.push_back(chosen);
            node_blocks_[chosen].insert(meta.data->id);
        }
    }

    PlacementManifest manifest_locked(const std::string& file_name) const
    {
        PlacementManifest m;
        m.file = file_name;
        for (BlockId id : files_.at(file_name)) {
            const BlockMeta& meta = blocks_.at(id);
            m.blocks.push_back({id, meta.data->rows.size(), meta.replicas});
            if (live_replicas(meta) < config_.replication_factor)
                m.degraded = true;
        }
        return m;
    }

    StorageConfig config_;
    std::unique_ptr<std::shared_mutex> mutex_;
    std::unique_ptr<std::atomic<std::uint64_t>[]> reads_;
    std::vector<char> live_;
    std::vector<std::set<BlockId>> node_blocks_;
    std::map<std::string, std::vector<BlockId>> files_;
    std::map<BlockId, BlockMeta> blocks_;
    BlockId next_block_id_ = 0;
};

inline ClusterState create_cluster(const StorageConfig& config = {}) { return ClusterState(config); }

} // namespace fair

#endif // FAIR_STORAGE_HPP
