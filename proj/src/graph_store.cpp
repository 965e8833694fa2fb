#include "twinforge/graph_store.hpp"

#include <algorithm>

namespace twinforge {

GraphNativeStore::GraphNativeStore(const SpatialGraph& topology, std::size_t feature_dim)
    : TwinStore(topology, feature_dim), by_pt_(topology.n_nodes()) {}

void GraphNativeStore::do_insert_record(RecordId id, PtId pt, Tick gen_tick,
                                        std::span<const double> features) {
    nodes_.push_back(Node{pt, gen_tick, {features.begin(), features.end()}, {}});
    auto& idx = by_pt_[pt];
    auto it = std::upper_bound(idx.begin(), idx.end(), gen_tick,
                               [&](Tick t, RecordId r) { return t < nodes_[r].gen_tick; });
    idx.insert(it, id);
}

void GraphNativeStore::do_insert_edge(const EdgeRow& e) {
    nodes_[e.src].out.push_back(e);
}

bool GraphNativeStore::do_remove_spatial(RecordId from, RecordId to) {
    auto& out = nodes_[from].out;
    for (auto it = out.rbegin(); it != out.rend(); ++it) {
        if (it->kind == EdgeKind::spatial && it->dst == to) {
            out.erase(std::next(it).base());
            return true;
        }
    }
    return false;
}

std::optional<RecordId> GraphNativeStore::find_record(PtId pt, Tick gen_tick) const {
    const auto& idx = by_pt_[pt];
    auto it = std::lower_bound(idx.begin(), idx.end(), gen_tick,
                               [&](RecordId r, Tick t) { return nodes_[r].gen_tick < t; });
    if (it != idx.end() && nodes_[*it].gen_tick == gen_tick) return *it;
    return std::nullopt;
}

std::optional<RecordId> GraphNativeStore::latest_at_or_before(PtId pt, Tick t) const {
    const auto& idx = by_pt_[pt];
    auto it = std::upper_bound(idx.begin(), idx.end(), t,
                               [&](Tick tick, RecordId r) { return tick < nodes_[r].gen_tick; });
    if (it == idx.begin()) return std::nullopt;
    return *std::prev(it);
}

std::optional<RecordId> GraphNativeStore::earliest_record(PtId pt) const {
    const auto& idx = by_pt_[pt];
    if (idx.empty()) return std::nullopt;
    return idx.front();
}

void GraphNativeStore::copy_features(RecordId id, std::span<double> out) const {
    const auto& f = nodes_[id].features;
    std::copy(f.begin(), f.end(), out.begin());
}

void GraphNativeStore::collect_window(Tick t_lo, Tick t_hi, WindowResult& out) const {
    for (PtId pt = 0; pt < by_pt_.size(); ++pt) {
        const auto& idx = by_pt_[pt];
        auto lo = std::upper_bound(idx.begin(), idx.end(), t_lo,
                                   [&](Tick t, RecordId r) { return t < nodes_[r].gen_tick; });
        for (auto it = lo; it != idx.end() && nodes_[*it].gen_tick <= t_hi; ++it) {
            const Node& nd = nodes_[*it];
            out.per_pt[pt].push_back(WindowEntry{*it, nd.gen_tick, nd.features});
        }
    }
}

void GraphNativeStore::fetch_one(RecordId id, FetchedRecord& out) const {
    const Node& nd = nodes_[id];
    out.id = id;
    out.pt = nd.pt;
    out.gen_tick = nd.gen_tick;
    out.features = nd.features;
    out.out_edges = nd.out;
    std::sort(out.out_edges.begin(), out.out_edges.end(), [](const EdgeRow& a, const EdgeRow& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.dst < b.dst;
    });
}

}  // namespace twinforge
