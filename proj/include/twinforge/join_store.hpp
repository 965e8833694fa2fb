#pragma once

#include <vector>

#include "twinforge/twin_store.hpp"

namespace twinforge {

/// Relational-style backend: three normalized tables. Every read re-assembles
/// its answer by joining rows across tables — records by binary search on the
/// id-ordered table, properties by an equal-range pass, edges through a
/// src-sorted secondary index. No record keeps its data in one place.
class JoinTableStore final : public TwinStore {
public:
    JoinTableStore(const SpatialGraph& topology, std::size_t feature_dim);

    std::string_view backend_name() const override { return "join-table"; }

protected:
    void do_insert_record(RecordId id, PtId pt, Tick gen_tick,
                          std::span<const double> features) override;
    void do_insert_edge(const EdgeRow& e) override;
    bool do_remove_spatial(RecordId from, RecordId to) override;

    std::optional<RecordId> find_record(PtId pt, Tick gen_tick) const override;
    std::optional<RecordId> latest_at_or_before(PtId pt, Tick t) const override;
    std::optional<RecordId> earliest_record(PtId pt) const override;
    void copy_features(RecordId id, std::span<double> out) const override;
    void collect_window(Tick t_lo, Tick t_hi, WindowResult& out) const override;
    void fetch_one(RecordId id, FetchedRecord& out) const override;

private:
    struct RecordRow {
        RecordId id;
        PtId pt;
        Tick gen_tick;
    };
    struct PropertyRow {
        RecordId record_id;
        std::uint32_t feature_idx;
        double value;
    };
    struct EdgeTableRow {
        RecordId src;
        RecordId dst;
        EdgeKind kind;
        double weight_or_dt;
    };

    // rows append in insertion order; records_ and properties_ are therefore
    // already ordered by record id
    std::vector<RecordRow> records_;
    std::vector<PropertyRow> properties_;
    std::vector<EdgeTableRow> edges_;
    std::vector<std::uint32_t> edges_by_src_;  // row indices ordered by (src, insertion)

    std::size_t property_lower_bound(RecordId id) const;
    std::pair<std::size_t, std::size_t> edge_range_for_src(RecordId src) const;
};

}  // namespace twinforge
