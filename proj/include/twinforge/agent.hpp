#pragma once
// Adaptive update gating: a value network scores each device per tick, a
// binary step turns scores into the update action, and the composite action
// value Q(s,a) = sum_i a_i q_i is trained against r + gamma * sum_i
// max(q'_i, 0) with replay memory and a periodically synced frozen target.

#include <cstdint>
#include <optional>
#include <vector>

#include "twinforge/ingest.hpp"
#include "twinforge/metrics.hpp"
#include "twinforge/qnet.hpp"
#include "twinforge/rng.hpp"
#include "twinforge/sim.hpp"
#include "twinforge/twin_store.hpp"

namespace twinforge {

struct AgentConfig {
    std::size_t delta = 4;  // state window length in ticks
    double lr = 0.06;
    double gamma = 0.95;
    double epsilon_start = 1.0;
    double epsilon_end = 0.05;
    double epsilon_decay = 0.995;  // multiplicative, per episode
    std::size_t replay_capacity = 10000;
    std::size_t batch_size = 32;
    std::uint64_t update_interval = 100;  // ticks between target syncs
    std::vector<std::size_t> hidden_sizes{64, 64};
    int reward_sign = +1;
    double penalty_weight = 1.0;

    void validate() const;
};

/// Stacked window of the last delta stored signals ending at some tick,
/// time-major: values[(k*N + i)*F + j] with k oldest-first. Ticks with no
/// stored history fall back per pt to its earliest record, then to zero.
struct State {
    std::size_t n = 0, f = 0, delta = 0;
    std::vector<double> values;

    static State from_store(const TwinStore& store, Tick t, std::size_t delta);
    std::size_t flat_size() const { return n * f * delta; }
};

/// Binary step over q with per-node epsilon exploration: exploited bits are
/// 1 iff q[i] > 0 (ties at zero select 0); with probability epsilon a bit is
/// replaced by a fair coin.
UpdateAction select_action(std::span<const double> q, double epsilon, Rng& rng);

/// Memory-operation cost of an action: per selected node, retrieval + node
/// creation + temporal edge + one per outgoing spatial edge.
double penalty(const UpdateAction& a, const SpatialGraph& g);

/// reward_sign * mean absolute one-step change (normalized by N + F) minus
/// penalty_weight * penalty(a).
double reward(const GraphSignal& x_t, const GraphSignal& x_next, const UpdateAction& a,
              const SpatialGraph& g, const AgentConfig& cfg);

struct Experience {
    State s;
    UpdateAction a;
    double r = 0.0;
    State s_next;
    bool terminal = false;
};

/// Fixed-capacity ring buffer with uniform without-replacement batch sampling.
class ReplayMemory {
public:
    explicit ReplayMemory(std::size_t capacity);

    void remember(Experience e);
    std::vector<const Experience*> sample_batch(std::size_t batch_size, Rng& rng) const;

    std::size_t size() const { return buf_.size(); }
    std::size_t capacity() const { return capacity_; }

private:
    std::size_t capacity_;
    std::size_t write_pos_ = 0;
    std::vector<Experience> buf_;
};

/// One SGD step of the squared Bellman error over the batch. Returns the
/// pre-step loss. The target network is never touched.
double optimize(const std::vector<const Experience*>& batch, QNetwork& net,
                const QNetwork& target, const AgentConfig& cfg);

struct TrainingLogRow {
    std::uint32_t episode = 0;
    double lr = 0.0;
    double cumulative_reward = 0.0;
    double mean_loss = 0.0;
    std::uint64_t actions_taken = 0;  // records created by gated updates
    std::uint64_t mem_ops = 0;
    double energy_mj = 0.0;
};

struct TrainSetup {
    std::uint32_t n_junctions = 20;
    Topology topology = Topology::ring;
    SimParams sim;
    ChannelConfig channel;
    AgentConfig agent;
    EnergyModel energy;
    std::uint32_t episodes = 200;
    Tick horizon = 100;
    bool literal_etl = false;
    std::uint64_t seed = 1;
};

struct TrainResult {
    std::vector<TrainingLogRow> log;
    QNetwork net;
    double final_epsilon = 0.0;
};

/// Full training loop: per tick, retrieve the window state, act, gate the
/// queued updates, score the transition, and fit the network from replay,
/// syncing the target every update_interval ticks (global tick count).
/// Episodes reseed the traffic process; the agent persists across them.
TrainResult train(const TrainSetup& setup);

}  // namespace twinforge
