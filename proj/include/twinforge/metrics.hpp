#pragma once
// Evaluation quantities: snapshot error, synthetic energy/RAM proxies, and
// synchronization trajectories with hit/miss labels on sampled observations.

#include <cstdint>
#include <string>
#include <vector>

#include "twinforge/types.hpp"

namespace twinforge {

/// Mean over N*F of squared elementwise differences.
double mse(const GraphSignal& a, const GraphSignal& b);  // ShapeMismatch

/// Linear cost model standing in for measured millijoules. The coefficients
/// are synthetic by construction; only ratios are meaningful.
struct EnergyModel {
    double c_op = 1.0;     // mJ per store memory operation
    double c_byte = 0.001; // mJ per payload byte loaded
};

double energy_proxy(std::uint64_t mem_ops, std::uint64_t bytes, const EnergyModel& m);

enum class SyncLabel { none, hit, miss };

struct SyncPoint {
    Tick tick = 0;
    double baseline = 0.0;  // true total vehicle count
    double dt_value = 0.0;  // running vehicle-count estimate accumulated from
                            // the twin's net-flow readings
    SyncLabel label = SyncLabel::none;
};

/// Per-tick raw material for one mode's synchronization series.
struct SyncTickLog {
    Tick tick = 0;
    double baseline_total = 0.0;
    double net_flow_reading = 0.0;        // sum_i (incoming - outgoing) seen by the twin
    bool sampled = false;                 // an observation is inspected at this tick
    bool sample_applied = false;          // false when the gate dropped it
    Tick sample_gen = 0, sample_applied_at = 0;
};

struct SyncRunLog {
    double initial_total = 0.0;
    std::vector<SyncTickLog> ticks;
};

/// Accumulates net-flow readings into a vehicle-count trajectory and labels
/// sampled observations hit/miss by capture lag against hit_threshold.
std::vector<SyncPoint> sync_series(const SyncRunLog& log, Tick hit_threshold);  // MissingLog

const char* to_string(SyncLabel l);

}  // namespace twinforge
