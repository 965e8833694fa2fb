#pragma once

#include <vector>

#include "twinforge/twin_store.hpp"

namespace twinforge {

/// Graph-native backend: each record keeps its features and outgoing adjacency
/// inline, with a per-pt index ordered by generation tick.
class GraphNativeStore final : public TwinStore {
public:
    GraphNativeStore(const SpatialGraph& topology, std::size_t feature_dim);

    std::string_view backend_name() const override { return "graph-native"; }

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
    struct Node {
        PtId pt;
        Tick gen_tick;
        std::vector<double> features;
        std::vector<EdgeRow> out;
    };

    std::vector<Node> nodes_;
    std::vector<std::vector<RecordId>> by_pt_;  // ascending by gen_tick
};

}  // namespace twinforge
