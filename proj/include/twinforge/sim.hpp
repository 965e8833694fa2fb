#pragma once
// Deterministic seeded traffic process over a junction topology. Macroscopic:
// per-junction vehicle counts, per-tick Poisson demand with a slow sinusoidal
// profile, service-rate-limited movement along turn probabilities, retirement
// at sinks plus a per-junction exit fraction. Measurements carry
// [current_density, incoming_flow, outgoing_flow] and travel through a lossy,
// jittered channel.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "twinforge/rng.hpp"
#include "twinforge/types.hpp"

namespace twinforge {

inline constexpr std::size_t kFeatureDim = 3;  // density, incoming, outgoing

enum class Topology { ring, grid, random_geometric };

Topology topology_from_string(std::string_view name);  // BadTopologyArgs
std::string_view to_string(Topology t);

struct RoadNetwork {
    SpatialGraph spatial;
    // turn_probs[i][k] matches spatial.out_edge_indices(i)[k]; sums to 1 per
    // junction with outgoing edges, empty for sinks
    std::vector<std::vector<double>> turn_probs;
    std::vector<PtId> entries;  // junctions that receive demand
};

/// Deterministic for fixed (n, topology, seed). Edge weights in [50, 500] m.
RoadNetwork generate_network(std::uint32_t n, Topology topology, std::uint64_t seed);

struct SimParams {
    double insertion_rate = 60.0;   // mean vehicles/tick per entry at profile peak midpoint
    double service_rate = 1e9;      // max vehicles leaving one junction per tick
    double exit_fraction = 0.25;    // share of serviced outflow that retires
    double demand_amplitude = 0.9;  // relative swing of the demand profile
    double demand_period = 400.0;   // ticks per demand cycle
    std::uint32_t sampling_interval = 1;
    std::uint32_t payload_bytes = 600;
};

struct TrafficState {
    Tick tick = 0;
    std::vector<double> vehicle_count;
    std::vector<double> incoming;  // arrivals into each junction this tick
    std::vector<double> outgoing;  // departures out of each junction this tick
    double total_inserted = 0.0;
    double total_exited = 0.0;
};

struct Measurement {
    PtId pt;
    Tick gen_tick;
    std::array<double, kFeatureDim> features;
    std::uint32_t payload_bytes;
};

struct ChannelConfig {
    double latency_mean = 1.0;   // ticks
    double latency_jitter = 2.0; // ticks, uniform in [-jitter, +jitter]
    double loss_prob = 0.05;
};

/// One delivery attempt. Lost with probability loss_prob, otherwise arrives at
/// gen_tick + max(0, round(latency_mean + jitter_draw)).
std::optional<Tick> deliver(const Measurement& m, const ChannelConfig& ch, Rng& rng);

class TrafficSim {
public:
    TrafficSim(const RoadNetwork& network, SimParams params, std::uint64_t seed);

    /// Place vehicles before the first step. Counts toward the initial total.
    void seed_vehicles(PtId pt, double count);

    const TrafficState& step();
    const TrafficState& state() const { return state_; }
    Tick current_tick() const { return state_.tick; }

    /// Exact N x 3 feature matrix at tick t. Retention spans every stepped
    /// tick of this run.
    GraphSignal ground_truth(Tick t) const;

    /// One measurement per junction at ticks divisible by sampling_interval.
    std::vector<Measurement> emit_measurements() const;

    double total_vehicles() const;
    double initial_total() const { return initial_total_; }

    /// CSV dump of retained history: tick,pt_id,current,incoming,outgoing
    void export_history_csv(std::ostream& os) const;

private:
    const RoadNetwork* net_;
    SimParams params_;
    Rng rng_;
    TrafficState state_;
    std::vector<double> demand_phase_;
    std::vector<GraphSignal> history_;
    double initial_total_ = 0.0;

    void check_conservation() const;
};

}  // namespace twinforge
