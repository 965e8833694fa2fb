#include "twinforge/twin_store.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <string>

#include "twinforge/rng.hpp"

namespace twinforge {

TwinStore::TwinStore(const SpatialGraph& topology, std::size_t feature_dim)
    : topology_(&topology), feature_dim_(feature_dim) {
    if (feature_dim_ == 0) throw BadFeatureVector("feature dimension must be > 0");
}

void TwinStore::require_pt(PtId pt) const {
    if (pt >= topology_->n_nodes())
        throw UnknownPt("pt " + std::to_string(pt) + " not in a " +
                        std::to_string(topology_->n_nodes()) + "-node topology");
}

void TwinStore::require_record(RecordId id) const {
    if (id >= next_id_) throw MissingRecord("record " + std::to_string(id) + " does not exist");
}

RecordId TwinStore::create_record(PtId pt, Tick gen_tick, std::span<const double> features) {
    require_pt(pt);
    if (features.size() != feature_dim_)
        throw BadFeatureVector("expected " + std::to_string(feature_dim_) + " features, got " +
                               std::to_string(features.size()));
    for (double v : features)
        if (!std::isfinite(v)) throw BadFeatureVector("non-finite feature value");
    if (find_record(pt, gen_tick))
        throw DuplicateRecord("record for pt " + std::to_string(pt) + " at tick " +
                              std::to_string(gen_tick) + " already exists");

    const RecordId id = next_id_++;
    pt_of_.push_back(pt);
    gen_of_.push_back(gen_tick);
    do_insert_record(id, pt, gen_tick, features);
    ++memory_ops_;
    return id;
}

EdgeRow TwinStore::link_temporal(RecordId newer, RecordId older) {
    require_record(newer);
    require_record(older);
    if (pt_of_[newer] != pt_of_[older])
        throw CrossPtTemporal("temporal edge endpoints belong to different pts");
    if (gen_of_[newer] <= gen_of_[older])
        throw NonPositiveDt("temporal edge must run newer -> older");

    EdgeRow e{EdgeKind::temporal, newer, older,
              static_cast<double>(gen_of_[newer] - gen_of_[older])};
    do_insert_edge(e);
    ++temporal_edges_;
    ++memory_ops_;
    return e;
}

EdgeRow TwinStore::link_spatial(RecordId from, RecordId to) {
    require_record(from);
    require_record(to);
    const PtId a = pt_of_[from], b = pt_of_[to];
    const auto w = topology_->edge_weight(a, b);
    if (!w)
        throw NoSuchSpatialRelation("no topology edge " + std::to_string(a) + "->" +
                                    std::to_string(b));

    EdgeRow e{EdgeKind::spatial, from, to, *w};
    do_insert_edge(e);
    ++spatial_edges_;
    ++memory_ops_;
    return e;
}

void TwinStore::remove_spatial(RecordId from, RecordId to) {
    require_record(from);
    require_record(to);
    if (!do_remove_spatial(from, to))
        throw MissingRecord("no spatial edge " + std::to_string(from) + "->" +
                            std::to_string(to) + " to remove");
    --spatial_edges_;
    ++memory_ops_;
}

std::optional<RecordId> TwinStore::latest_record(PtId pt) const {
    require_pt(pt);
    return latest_at_or_before(pt, ~Tick{0});
}

GraphSignal TwinStore::snapshot(Tick t) const {
    const std::uint32_t n = topology_->n_nodes();
    GraphSignal sig = GraphSignal::zeros(t, n, feature_dim_);
    std::vector<PtId> missing;
    for (PtId pt = 0; pt < n; ++pt) {
        const auto rid = latest_at_or_before(pt, t);
        if (!rid) {
            missing.push_back(pt);
            continue;
        }
        copy_features(*rid, std::span<double>(sig.values.data() + pt * feature_dim_, feature_dim_));
    }
    if (!missing.empty()) throw MissingPtAt(t, std::move(missing));
    return sig;
}

GraphSignal TwinStore::padded_snapshot(Tick t) const {
    const std::uint32_t n = topology_->n_nodes();
    GraphSignal sig = GraphSignal::zeros(t, n, feature_dim_);
    for (PtId pt = 0; pt < n; ++pt) {
        auto rid = latest_at_or_before(pt, t);
        if (!rid) rid = earliest_record(pt);
        if (!rid) continue;  // stays zero
        copy_features(*rid, std::span<double>(sig.values.data() + pt * feature_dim_, feature_dim_));
    }
    return sig;
}

GraphSignal TwinStore::latest_view(Tick stamp) const {
    const std::uint32_t n = topology_->n_nodes();
    GraphSignal sig = GraphSignal::zeros(stamp, n, feature_dim_);
    for (PtId pt = 0; pt < n; ++pt) {
        const auto rid = latest_at_or_before(pt, ~Tick{0});
        if (!rid) continue;
        copy_features(*rid, std::span<double>(sig.values.data() + pt * feature_dim_, feature_dim_));
    }
    return sig;
}

WindowResult TwinStore::query_window(Tick t_lo, Tick t_hi) const {
    if (t_lo > t_hi) throw BadRange("query_window: t_lo > t_hi");
    WindowResult out;
    out.per_pt.resize(topology_->n_nodes());
    collect_window(t_lo, t_hi, out);
    return out;
}

QueryResult TwinStore::fetch_records(std::span<const RecordId> ids) const {
    for (RecordId id : ids) require_record(id);
    QueryResult out(ids.size());
    for (std::size_t k = 0; k < ids.size(); ++k) fetch_one(ids[k], out[k]);
    return out;
}

PtId TwinStore::record_pt(RecordId id) const {
    require_record(id);
    return pt_of_[id];
}

Tick TwinStore::record_gen(RecordId id) const {
    require_record(id);
    return gen_of_[id];
}

StoreStats TwinStore::stats(std::uint64_t queued_bytes) const {
    StoreStats s;
    s.record_count = next_id_;
    s.temporal_edge_count = temporal_edges_;
    s.spatial_edge_count = spatial_edges_;
    s.memory_ops = memory_ops_;
    s.ram_proxy_bytes = s.record_count * (kRecordBaseCost + 8 * feature_dim_) +
                        (s.temporal_edge_count + s.spatial_edge_count) * kEdgeCost + queued_bytes;
    return s;
}

void TwinStore::export_records_csv(std::ostream& os) const {
    os << "record_id,pt_id,gen_tick";
    for (std::size_t j = 0; j < feature_dim_; ++j) os << ",f" << j;
    os << "\n";
    std::vector<double> buf(feature_dim_);
    for (RecordId id = 0; id < next_id_; ++id) {
        copy_features(id, buf);
        os << id << "," << pt_of_[id] << "," << gen_of_[id];
        char fmt[32];
        for (double v : buf) {
            std::snprintf(fmt, sizeof(fmt), "%.17g", v);
            os << "," << fmt;
        }
        os << "\n";
    }
}

void TwinStore::export_edges_csv(std::ostream& os) const {
    os << "edge_kind,src,dst,weight_or_dt\n";
    std::vector<RecordId> ids(next_id_);
    for (RecordId id = 0; id < next_id_; ++id) ids[id] = id;
    const QueryResult all = fetch_records(ids);
    char fmt[32];
    for (const auto& rec : all) {
        for (const auto& e : rec.out_edges) {
            std::snprintf(fmt, sizeof(fmt), "%.17g", e.weight_or_dt);
            os << (e.kind == EdgeKind::temporal ? "temporal" : "spatial") << "," << e.src << ","
               << e.dst << "," << fmt << "\n";
        }
    }
}

TimedQueryResult timed_query(const TwinStore& store, std::size_t query_size,
                             std::uint64_t seed) {
    const std::uint64_t total = store.record_count();
    if (query_size > total)
        throw InsufficientData("timed_query: store holds " + std::to_string(total) +
                               " records, need " + std::to_string(query_size));

    // Seeded distinct sample, sorted; identical across backends for a given
    // (seed, query_size, record_count).
    std::vector<RecordId> ids(total);
    for (RecordId i = 0; i < total; ++i) ids[i] = i;
    Rng rng(mix_seed(seed ^ (0x71ed0000ULL + query_size)));
    for (std::size_t k = 0; k < query_size; ++k) {
        const std::size_t j = k + static_cast<std::size_t>(rng.uniform_int(total - k));
        std::swap(ids[k], ids[j]);
    }
    ids.resize(query_size);
    std::sort(ids.begin(), ids.end());

    const auto t0 = std::chrono::steady_clock::now();
    QueryResult res = store.fetch_records(ids);
    const auto t1 = std::chrono::steady_clock::now();
    const double us =
        std::chrono::duration_cast<std::chrono::duration<double, std::micro>>(t1 - t0).count();
    return TimedQueryResult{std::move(res), us};
}

}  // namespace twinforge
