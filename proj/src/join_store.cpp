#include "twinforge/join_store.hpp"

#include <algorithm>

namespace twinforge {

JoinTableStore::JoinTableStore(const SpatialGraph& topology, std::size_t feature_dim)
    : TwinStore(topology, feature_dim) {}

void JoinTableStore::do_insert_record(RecordId id, PtId pt, Tick gen_tick,
                                      std::span<const double> features) {
    records_.push_back(RecordRow{id, pt, gen_tick});
    for (std::uint32_t j = 0; j < features.size(); ++j)
        properties_.push_back(PropertyRow{id, j, features[j]});
}

void JoinTableStore::do_insert_edge(const EdgeRow& e) {
    const std::uint32_t row = static_cast<std::uint32_t>(edges_.size());
    edges_.push_back(EdgeTableRow{e.src, e.dst, e.kind, e.weight_or_dt});
    auto it = std::upper_bound(edges_by_src_.begin(), edges_by_src_.end(), e.src,
                               [&](RecordId src, std::uint32_t r) { return src < edges_[r].src; });
    edges_by_src_.insert(it, row);
}

bool JoinTableStore::do_remove_spatial(RecordId from, RecordId to) {
    const auto [lo, hi] = edge_range_for_src(from);
    for (std::size_t k = hi; k-- > lo;) {
        const std::uint32_t row = edges_by_src_[k];
        if (edges_[row].kind == EdgeKind::spatial && edges_[row].dst == to) {
            edges_.erase(edges_.begin() + row);
            edges_by_src_.erase(edges_by_src_.begin() + k);
            for (auto& r : edges_by_src_)
                if (r > row) --r;
            return true;
        }
    }
    return false;
}

std::optional<RecordId> JoinTableStore::find_record(PtId pt, Tick gen_tick) const {
    // no (pt, gen) index; table scan
    for (const auto& r : records_)
        if (r.pt == pt && r.gen_tick == gen_tick) return r.id;
    return std::nullopt;
}

std::optional<RecordId> JoinTableStore::latest_at_or_before(PtId pt, Tick t) const {
    std::optional<RecordId> best;
    Tick best_gen = 0;
    for (const auto& r : records_) {
        if (r.pt != pt || r.gen_tick > t) continue;
        if (!best || r.gen_tick > best_gen) {
            best = r.id;
            best_gen = r.gen_tick;
        }
    }
    return best;
}

std::optional<RecordId> JoinTableStore::earliest_record(PtId pt) const {
    std::optional<RecordId> best;
    Tick best_gen = 0;
    for (const auto& r : records_) {
        if (r.pt != pt) continue;
        if (!best || r.gen_tick < best_gen) {
            best = r.id;
            best_gen = r.gen_tick;
        }
    }
    return best;
}

std::size_t JoinTableStore::property_lower_bound(RecordId id) const {
    auto it = std::lower_bound(properties_.begin(), properties_.end(), id,
                               [](const PropertyRow& p, RecordId v) { return p.record_id < v; });
    return static_cast<std::size_t>(it - properties_.begin());
}

std::pair<std::size_t, std::size_t> JoinTableStore::edge_range_for_src(RecordId src) const {
    auto lo = std::lower_bound(edges_by_src_.begin(), edges_by_src_.end(), src,
                               [&](std::uint32_t r, RecordId v) { return edges_[r].src < v; });
    auto hi = std::upper_bound(lo, edges_by_src_.end(), src,
                               [&](RecordId v, std::uint32_t r) { return v < edges_[r].src; });
    return {static_cast<std::size_t>(lo - edges_by_src_.begin()),
            static_cast<std::size_t>(hi - edges_by_src_.begin())};
}

void JoinTableStore::copy_features(RecordId id, std::span<double> out) const {
    std::size_t k = property_lower_bound(id);
    for (; k < properties_.size() && properties_[k].record_id == id; ++k)
        out[properties_[k].feature_idx] = properties_[k].value;
}

void JoinTableStore::collect_window(Tick t_lo, Tick t_hi, WindowResult& out) const {
    // join pass: filter the record table, then pull each row's properties
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < records_.size(); ++i)
        if (records_[i].gen_tick > t_lo && records_[i].gen_tick <= t_hi) hits.push_back(i);
    std::sort(hits.begin(), hits.end(), [&](std::size_t a, std::size_t b) {
        if (records_[a].pt != records_[b].pt) return records_[a].pt < records_[b].pt;
        return records_[a].gen_tick < records_[b].gen_tick;
    });
    for (std::size_t i : hits) {
        const auto& r = records_[i];
        WindowEntry e{r.id, r.gen_tick, std::vector<double>(feature_dim_, 0.0)};
        copy_features(r.id, e.features);
        out.per_pt[r.pt].push_back(std::move(e));
    }
}

void JoinTableStore::fetch_one(RecordId id, FetchedRecord& out) const {
    // record row by binary search on the id-ordered table
    auto it = std::lower_bound(records_.begin(), records_.end(), id,
                               [](const RecordRow& r, RecordId v) { return r.id < v; });
    out.id = id;
    out.pt = it->pt;
    out.gen_tick = it->gen_tick;
    out.features.assign(feature_dim_, 0.0);
    copy_features(id, out.features);
    out.out_edges.clear();
    const auto [lo, hi] = edge_range_for_src(id);
    for (std::size_t k = lo; k < hi; ++k) {
        const auto& row = edges_[edges_by_src_[k]];
        out.out_edges.push_back(EdgeRow{row.kind, row.src, row.dst, row.weight_or_dt});
    }
    std::sort(out.out_edges.begin(), out.out_edges.end(), [](const EdgeRow& a, const EdgeRow& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.dst < b.dst;
    });
}

}  // namespace twinforge
