#pragma once
// Update ingestion: per-device FIFO queues for delivered measurements, the
// gated ETL that turns queue heads into store records and edges, and the
// update-on-arrival baseline with a per-tick processing budget.

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "twinforge/sim.hpp"
#include "twinforge/twin_store.hpp"

namespace twinforge {

struct Delivery {
    Measurement m;
    Tick arrival_tick;
    std::uint64_t seq;  // emission order, tie-break for equal arrival ticks
};

/// Bounded per-pt FIFO in arrival-processing order. Overflow drops the oldest
/// entry and counts it.
class PtQueues {
public:
    PtQueues(std::uint32_t n_pts, std::size_t capacity_per_pt = 4096);

    void enqueue(const Delivery& d);  // UnknownPt
    std::optional<Delivery> pop_head(PtId pt);
    const std::deque<Delivery>& queue(PtId pt) const;
    bool empty(PtId pt) const { return queue(pt).empty(); }

    std::uint64_t queued_bytes() const { return queued_bytes_; }
    std::uint64_t overflow_drops() const { return overflow_drops_; }

private:
    std::vector<std::deque<Delivery>> queues_;
    std::size_t capacity_;
    std::uint64_t queued_bytes_ = 0;
    std::uint64_t overflow_drops_ = 0;
};

struct UpdateAction {
    std::vector<std::uint8_t> bits;  // length N, entries 0/1

    std::size_t count_selected() const {
        std::size_t c = 0;
        for (auto b : bits) c += b;
        return c;
    }
    static UpdateAction zeros(std::size_t n) { return {std::vector<std::uint8_t>(n, 0)}; }
    static UpdateAction ones(std::size_t n) { return {std::vector<std::uint8_t>(n, 1)}; }
};

struct AppliedResult {
    std::vector<PtId> updated_pts;
    std::vector<PtId> dropped_pts;
    std::uint64_t memory_ops_delta = 0;
    std::uint64_t bytes_applied = 0;  // payload bytes loaded into the store
    GraphSignal new_signal;
};

/// Applies one batch action: selected pts with a queued head get a new record,
/// a temporal edge to their previous latest record (when generation order
/// allows one), and spatial edges to each out-neighbor — to the neighbor's
/// fresh record when it updates in the same tick, otherwise to its latest
/// stored one. Unselected pts with a queued head drop it. When literal_rule
/// is set, the both-update case instead writes an edge to the neighbor's
/// previous record and immediately removes it (two counted ops, no surviving
/// edge).
AppliedResult apply_action(TwinStore& store, PtQueues& queues, const UpdateAction& action,
                           Tick now, bool literal_rule = false);

/// Update-on-arrival baseline: one mutable value row per pt, overwritten in
/// arrival order under a per-tick budget; arrivals beyond the budget wait in
/// a global backlog. No generation ticks are stored.
class TraditionalModel {
public:
    TraditionalModel(std::uint32_t n_pts, std::size_t feature_dim,
                     std::uint32_t budget_per_tick);

    void on_arrival(const Delivery& d);  // UnknownPt
    /// Applies up to budget backlog entries, oldest first.
    void process_tick(Tick now);

    GraphSignal table_view(Tick stamp) const;
    std::size_t backlog_size() const { return backlog_.size(); }
    std::uint64_t backlog_bytes() const { return backlog_bytes_; }
    std::uint64_t applied_count() const { return applied_count_; }

    /// Generation and apply tick of the value currently visible for pt.
    std::optional<std::pair<Tick, Tick>> last_applied(PtId pt) const;

private:
    std::uint32_t n_;
    std::size_t f_;
    std::uint32_t budget_;
    std::vector<double> table_;
    std::vector<bool> seen_;
    std::vector<std::pair<Tick, Tick>> applied_at_;  // (gen, applied)
    std::deque<Delivery> backlog_;
    std::uint64_t backlog_bytes_ = 0;
    std::uint64_t applied_count_ = 0;
};

}  // namespace twinforge
