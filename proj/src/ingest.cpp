#include "twinforge/ingest.hpp"

#include <algorithm>
#include <string>

namespace twinforge {

PtQueues::PtQueues(std::uint32_t n_pts, std::size_t capacity_per_pt)
    : queues_(n_pts), capacity_(capacity_per_pt) {}

void PtQueues::enqueue(const Delivery& d) {
    if (d.m.pt >= queues_.size())
        throw UnknownPt("delivery addressed to unknown pt " + std::to_string(d.m.pt));
    auto& q = queues_[d.m.pt];
    if (q.size() == capacity_) {
        queued_bytes_ -= kQueuedMsgBaseCost + q.front().m.payload_bytes;
        q.pop_front();
        ++overflow_drops_;
    }
    q.push_back(d);
    queued_bytes_ += kQueuedMsgBaseCost + d.m.payload_bytes;
}

std::optional<Delivery> PtQueues::pop_head(PtId pt) {
    auto& q = queues_.at(pt);
    if (q.empty()) return std::nullopt;
    Delivery d = q.front();
    q.pop_front();
    queued_bytes_ -= kQueuedMsgBaseCost + d.m.payload_bytes;
    return d;
}

const std::deque<Delivery>& PtQueues::queue(PtId pt) const { return queues_.at(pt); }

AppliedResult apply_action(TwinStore& store, PtQueues& queues, const UpdateAction& action,
                           Tick now, bool literal_rule) {
    const std::uint32_t n = store.n_nodes();
    if (action.bits.size() != n)
        throw ShapeMismatch("action length " + std::to_string(action.bits.size()) +
                            " != node count " + std::to_string(n));

    const std::uint64_t ops_before = store.stats().memory_ops;
    AppliedResult res;

    struct Fresh {
        RecordId rec;
        std::optional<RecordId> prev;  // latest before this tick's insert
    };
    std::vector<std::optional<Fresh>> fresh(n);

    // first pass: pop heads, create records and temporal chain links
    for (PtId i = 0; i < n; ++i) {
        if (queues.empty(i)) continue;
        if (!action.bits[i]) {
            queues.pop_head(i);
            res.dropped_pts.push_back(i);
            continue;
        }
        const Delivery d = *queues.pop_head(i);
        const auto prev = store.latest_record(i);
        const RecordId rec = store.create_record(i, d.m.gen_tick, d.m.features);
        // out-of-order heads (older generation than the stored latest) enter
        // the store unchained
        if (prev && store.record_gen(rec) > store.record_gen(*prev))
            store.link_temporal(rec, *prev);
        fresh[i] = Fresh{rec, prev};
        res.updated_pts.push_back(i);
        res.bytes_applied += d.m.payload_bytes;
    }

    // second pass: spatial edges, now that every fresh record exists
    const auto& topo = store.topology();
    for (PtId i : res.updated_pts) {
        const RecordId rec = fresh[i]->rec;
        for (std::uint32_t eidx : topo.out_edge_indices(i)) {
            const PtId j = topo.edges()[eidx].dst;
            if (fresh[j]) {
                if (literal_rule) {
                    if (fresh[j]->prev) {
                        store.link_spatial(rec, *fresh[j]->prev);
                        store.remove_spatial(rec, *fresh[j]->prev);
                    }
                } else {
                    store.link_spatial(rec, fresh[j]->rec);
                }
            } else if (const auto latest = store.latest_record(j)) {
                store.link_spatial(rec, *latest);
            }
            // neighbor with no records at all: nothing to link yet
        }
    }

    res.memory_ops_delta = store.stats().memory_ops - ops_before;
    res.new_signal = store.latest_view(now);
    return res;
}

TraditionalModel::TraditionalModel(std::uint32_t n_pts, std::size_t feature_dim,
                                   std::uint32_t budget_per_tick)
    : n_(n_pts),
      f_(feature_dim),
      budget_(budget_per_tick),
      table_(std::size_t{n_pts} * feature_dim, 0.0),
      seen_(n_pts, false),
      applied_at_(n_pts, {0, 0}) {}

void TraditionalModel::on_arrival(const Delivery& d) {
    if (d.m.pt >= n_) throw UnknownPt("arrival for unknown pt " + std::to_string(d.m.pt));
    backlog_.push_back(d);
    backlog_bytes_ += kQueuedMsgBaseCost + d.m.payload_bytes;
}

void TraditionalModel::process_tick(Tick now) {
    for (std::uint32_t used = 0; used < budget_ && !backlog_.empty(); ++used) {
        const Delivery d = backlog_.front();
        backlog_.pop_front();
        backlog_bytes_ -= kQueuedMsgBaseCost + d.m.payload_bytes;
        for (std::size_t j = 0; j < f_ && j < d.m.features.size(); ++j)
            table_[d.m.pt * f_ + j] = d.m.features[j];
        seen_[d.m.pt] = true;
        applied_at_[d.m.pt] = {d.m.gen_tick, now};
        ++applied_count_;
    }
}

GraphSignal TraditionalModel::table_view(Tick stamp) const {
    GraphSignal sig = GraphSignal::zeros(stamp, n_, f_);
    sig.values = table_;
    return sig;
}

std::optional<std::pair<Tick, Tick>> TraditionalModel::last_applied(PtId pt) const {
    if (pt >= n_ || !seen_[pt]) return std::nullopt;
    return applied_at_[pt];
}

}  // namespace twinforge
