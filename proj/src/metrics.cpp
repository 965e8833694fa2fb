#include "twinforge/metrics.hpp"

#include <string>

#include "twinforge/errors.hpp"

namespace twinforge {

double mse(const GraphSignal& a, const GraphSignal& b) {
    if (!a.same_shape(b))
        throw ShapeMismatch("mse: " + std::to_string(a.n) + "x" + std::to_string(a.f) +
                            " vs " + std::to_string(b.n) + "x" + std::to_string(b.f));
    double sum = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        const double d = a.values[k] - b.values[k];
        sum += d * d;
    }
    return a.values.empty() ? 0.0 : sum / static_cast<double>(a.values.size());
}

double energy_proxy(std::uint64_t mem_ops, std::uint64_t bytes, const EnergyModel& m) {
    return m.c_op * static_cast<double>(mem_ops) + m.c_byte * static_cast<double>(bytes);
}

std::vector<SyncPoint> sync_series(const SyncRunLog& log, Tick hit_threshold) {
    if (log.ticks.empty()) throw MissingLog("sync_series: empty run log");
    std::vector<SyncPoint> out;
    out.reserve(log.ticks.size());
    double acc = log.initial_total;
    for (const auto& row : log.ticks) {
        acc += row.net_flow_reading;
        SyncPoint p;
        p.tick = row.tick;
        p.baseline = row.baseline_total;
        p.dt_value = acc;
        if (row.sampled) {
            if (!row.sample_applied) {
                p.label = SyncLabel::none;
            } else {
                const Tick lag = row.sample_applied_at >= row.sample_gen
                                     ? row.sample_applied_at - row.sample_gen
                                     : 0;
                p.label = lag <= hit_threshold ? SyncLabel::hit : SyncLabel::miss;
            }
        }
        out.push_back(p);
    }
    return out;
}

const char* to_string(SyncLabel l) {
    switch (l) {
        case SyncLabel::hit: return "hit";
        case SyncLabel::miss: return "miss";
        case SyncLabel::none: return "none";
    }
    return "?";
}

}  // namespace twinforge
