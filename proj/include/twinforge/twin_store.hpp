#pragma once
// Spatiotemporal twin store: one time-stamped record per (pt, generation tick),
// chained by temporal edges within a pt and linked by spatial edges across pts.
// Two interchangeable backends implement the same contract:
//   GraphNativeStore — records hold features inline with per-record adjacency
//   JoinTableStore   — three normalized row tables, reads re-join by key
// Record ids are assigned sequentially in creation order by both backends, so
// identical mutation sequences produce identical ids.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "twinforge/types.hpp"

namespace twinforge {

enum class EdgeKind : std::uint8_t { temporal, spatial };

/// Canonical edge row as exported/fetched: dt for temporal, meters for spatial.
struct EdgeRow {
    EdgeKind kind;
    RecordId src;
    RecordId dst;
    double weight_or_dt;

    friend bool operator==(const EdgeRow&, const EdgeRow&) = default;
};

struct FetchedRecord {
    RecordId id;
    PtId pt;
    Tick gen_tick;
    std::vector<double> features;
    std::vector<EdgeRow> out_edges;  // sorted by (kind, dst)

    friend bool operator==(const FetchedRecord&, const FetchedRecord&) = default;
};

using QueryResult = std::vector<FetchedRecord>;

/// Records in (t_lo, t_hi], grouped per pt, each list ascending by gen_tick.
struct WindowEntry {
    RecordId id;
    Tick gen_tick;
    std::vector<double> features;

    friend bool operator==(const WindowEntry&, const WindowEntry&) = default;
};

struct WindowResult {
    std::vector<std::vector<WindowEntry>> per_pt;

    friend bool operator==(const WindowResult&, const WindowResult&) = default;
};

struct StoreStats {
    std::uint64_t record_count = 0;
    std::uint64_t temporal_edge_count = 0;
    std::uint64_t spatial_edge_count = 0;
    std::uint64_t memory_ops = 0;
    std::uint64_t ram_proxy_bytes = 0;
};

// Accounting constants behind the resident-size proxy.
inline constexpr std::uint64_t kRecordBaseCost = 16;   // + 8 per feature
inline constexpr std::uint64_t kEdgeCost = 24;
inline constexpr std::uint64_t kQueuedMsgBaseCost = 16;  // + payload bytes

class TwinStore {
public:
    TwinStore(const SpatialGraph& topology, std::size_t feature_dim);
    virtual ~TwinStore() = default;

    virtual std::string_view backend_name() const = 0;

    std::uint32_t n_nodes() const { return topology_->n_nodes(); }
    std::size_t feature_dim() const { return feature_dim_; }
    const SpatialGraph& topology() const { return *topology_; }

    // -- mutations (each successful call counts one memory op) --

    RecordId create_record(PtId pt, Tick gen_tick, std::span<const double> features);
    EdgeRow link_temporal(RecordId newer, RecordId older);
    EdgeRow link_spatial(RecordId from, RecordId to);
    /// Removes one spatial edge (newest matching instance). Counts a memory op.
    void remove_spatial(RecordId from, RecordId to);

    // -- reads (never touch the memory-op counter) --

    std::optional<RecordId> latest_record(PtId pt) const;
    /// Per-pt features of the record with maximal gen_tick <= t. Throws
    /// MissingPtAt listing pts that have no record at or before t.
    GraphSignal snapshot(Tick t) const;
    /// Like snapshot but pads: a pt with no record at or before t falls back
    /// to its earliest record, and to zeros if it has no records at all.
    GraphSignal padded_snapshot(Tick t) const;
    /// Latest-known features per pt (zeros where a pt has no records).
    GraphSignal latest_view(Tick stamp) const;
    WindowResult query_window(Tick t_lo, Tick t_hi) const;
    /// Benchmark read path: each record with features and 1-hop out-edges.
    QueryResult fetch_records(std::span<const RecordId> ids) const;

    PtId record_pt(RecordId id) const;
    Tick record_gen(RecordId id) const;
    std::uint64_t record_count() const { return next_id_; }

    StoreStats stats(std::uint64_t queued_bytes = 0) const;

    /// CSV dumps: record_id,pt_id,gen_tick,f0..f{F-1} / edge_kind,src,dst,weight_or_dt
    void export_records_csv(std::ostream& os) const;
    void export_edges_csv(std::ostream& os) const;

protected:
    virtual void do_insert_record(RecordId id, PtId pt, Tick gen_tick,
                                  std::span<const double> features) = 0;
    virtual void do_insert_edge(const EdgeRow& e) = 0;
    virtual bool do_remove_spatial(RecordId from, RecordId to) = 0;

    virtual std::optional<RecordId> find_record(PtId pt, Tick gen_tick) const = 0;
    virtual std::optional<RecordId> latest_at_or_before(PtId pt, Tick t) const = 0;
    virtual std::optional<RecordId> earliest_record(PtId pt) const = 0;
    virtual void copy_features(RecordId id, std::span<double> out) const = 0;
    virtual void collect_window(Tick t_lo, Tick t_hi, WindowResult& out) const = 0;
    virtual void fetch_one(RecordId id, FetchedRecord& out) const = 0;

    void require_pt(PtId pt) const;
    void require_record(RecordId id) const;

    const SpatialGraph* topology_;
    std::size_t feature_dim_;
    RecordId next_id_ = 0;
    std::uint64_t memory_ops_ = 0;
    std::uint64_t temporal_edges_ = 0;
    std::uint64_t spatial_edges_ = 0;
    // id -> (pt, gen) kept by the base so contract checks cost the same for
    // both backends and never sit on a timed read path
    std::vector<PtId> pt_of_;
    std::vector<Tick> gen_of_;
};

/// Seeded benchmark query: picks query_size distinct record ids (sorted),
/// fetches them with their 1-hop neighborhood, and reports monotonic-clock
/// elapsed time for the fetch alone.
struct TimedQueryResult {
    QueryResult records;
    double elapsed_us;
};
TimedQueryResult timed_query(const TwinStore& store, std::size_t query_size,
                             std::uint64_t seed);

}  // namespace twinforge
