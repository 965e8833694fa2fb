#include "twinforge/agent.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "twinforge/graph_store.hpp"

namespace twinforge {

void AgentConfig::validate() const {
    if (delta < 1) throw Error("agent: delta must be >= 1");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw Error("agent: gamma must be in [0,1)");
    for (double e : {epsilon_start, epsilon_end})
        if (!(e >= 0.0 && e <= 1.0)) throw Error("agent: epsilon must be in [0,1]");
    if (update_interval < 1) throw Error("agent: update_interval must be >= 1");
    if (reward_sign != 1 && reward_sign != -1) throw Error("agent: reward_sign must be +1 or -1");
    if (penalty_weight < 0.0) throw Error("agent: penalty_weight must be >= 0");
    if (batch_size == 0 || replay_capacity == 0) throw Error("agent: zero batch or capacity");
}

State State::from_store(const TwinStore& store, Tick t, std::size_t delta) {
    State s;
    s.n = store.n_nodes();
    s.f = store.feature_dim();
    s.delta = delta;
    s.values.resize(s.flat_size());
    for (std::size_t kk = 0; kk < delta; ++kk) {
        const std::size_t back = delta - 1 - kk;  // kk ordered oldest-first
        const Tick tick_k = t >= back ? t - back : 0;
        const GraphSignal sig = store.padded_snapshot(tick_k);
        std::copy(sig.values.begin(), sig.values.end(),
                  s.values.begin() + static_cast<std::ptrdiff_t>(kk * s.n * s.f));
    }
    return s;
}

UpdateAction select_action(std::span<const double> q, double epsilon, Rng& rng) {
    UpdateAction a;
    a.bits.resize(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        std::uint8_t bit = q[i] > 0.0 ? 1 : 0;
        if (epsilon > 0.0 && rng.uniform01() < epsilon) bit = rng.coin() ? 1 : 0;
        a.bits[i] = bit;
    }
    return a;
}

double penalty(const UpdateAction& a, const SpatialGraph& g) {
    if (a.bits.size() != g.n_nodes())
        throw ShapeMismatch("penalty: action length != node count");
    double p = 0.0;
    for (PtId i = 0; i < g.n_nodes(); ++i)
        if (a.bits[i]) p += 3.0 + static_cast<double>(g.out_degree(i));
    return p;
}

double reward(const GraphSignal& x_t, const GraphSignal& x_next, const UpdateAction& a,
              const SpatialGraph& g, const AgentConfig& cfg) {
    if (!x_t.same_shape(x_next)) throw ShapeMismatch("reward: signal shapes differ");
    double change = 0.0;
    for (std::size_t k = 0; k < x_t.values.size(); ++k)
        change += std::abs(x_next.values[k] - x_t.values[k]);
    const double norm = static_cast<double>(x_t.n + x_t.f);
    const double change_term = norm > 0.0 ? change / norm : 0.0;
    return cfg.reward_sign * change_term - cfg.penalty_weight * penalty(a, g);
}

ReplayMemory::ReplayMemory(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw Error("replay capacity must be > 0");
    buf_.reserve(capacity_);
}

void ReplayMemory::remember(Experience e) {
    if (buf_.size() < capacity_) {
        buf_.push_back(std::move(e));
    } else {
        buf_[write_pos_] = std::move(e);  // overwrite oldest
    }
    write_pos_ = (write_pos_ + 1) % capacity_;
}

std::vector<const Experience*> ReplayMemory::sample_batch(std::size_t batch_size,
                                                          Rng& rng) const {
    if (buf_.size() < batch_size)
        throw InsufficientExperience("replay holds " + std::to_string(buf_.size()) +
                                     " experiences, need " + std::to_string(batch_size));
    std::vector<std::size_t> idx(buf_.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::vector<const Experience*> out;
    out.reserve(batch_size);
    for (std::size_t k = 0; k < batch_size; ++k) {
        const std::size_t j = k + static_cast<std::size_t>(rng.uniform_int(idx.size() - k));
        std::swap(idx[k], idx[j]);
        out.push_back(&buf_[idx[k]]);
    }
    return out;
}

namespace {
constexpr double kGradClipNorm = 5.0;
}

double optimize(const std::vector<const Experience*>& batch, QNetwork& net,
                const QNetwork& target, const AgentConfig& cfg) {
    if (batch.empty()) throw EmptyBatch("optimize: empty batch");
    const double inv_b = 1.0 / static_cast<double>(batch.size());

    Gradients grads = Gradients::zeros_like(net);
    double loss = 0.0;
    std::vector<double> dq(net.output_dim(), 0.0);

    for (const Experience* e : batch) {
        const ForwardTrace tr = forward_trace(net, e->s.values);
        const std::vector<double>& q = tr.post.back();
        double q_sa = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i)
            if (e->a.bits[i]) q_sa += q[i];

        double y = e->r;
        if (!e->terminal) {
            const std::vector<double> qn = target.forward(e->s_next.values);
            double best = 0.0;  // greedy successor value; empty action scores 0
            for (double v : qn) best += std::max(v, 0.0);
            y += cfg.gamma * best;
        }

        const double err = q_sa - y;
        loss += err * err;
        for (std::size_t i = 0; i < dq.size(); ++i)
            dq[i] = e->a.bits[i] ? 2.0 * inv_b * err : 0.0;
        backward(net, tr, dq, grads);
    }

    sgd_step(net, grads, cfg.lr, kGradClipNorm);
    return loss * inv_b;
}

TrainResult train(const TrainSetup& setup) {
    setup.agent.validate();
    const RoadNetwork net_topo = generate_network(setup.n_junctions, setup.topology, setup.seed);
    const std::uint32_t n = setup.n_junctions;
    const std::size_t input_dim = std::size_t{n} * kFeatureDim * setup.agent.delta;

    QNetwork qnet = QNetwork::make(input_dim, setup.agent.hidden_sizes, n,
                                   mix_seed(setup.seed ^ 0xa11ceULL));
    QNetwork target = qnet;

    Rng explore_rng = Rng(setup.seed).fork("explore");
    Rng replay_rng = Rng(setup.seed).fork("replay");
    ReplayMemory replay(setup.agent.replay_capacity);

    TrainResult result{.log = {}, .net = qnet, .final_epsilon = setup.agent.epsilon_start};
    double epsilon = setup.agent.epsilon_start;
    std::uint64_t global_tick = 0;
    bool scale_frozen = false;

    for (std::uint32_t ep = 0; ep < setup.episodes; ++ep) {
        TrafficSim sim(net_topo, setup.sim, mix_seed(setup.seed ^ (0x5150000ULL + ep)));
        Rng channel_rng = Rng(mix_seed(setup.seed ^ (0xc4a70000ULL + ep))).fork("channel");
        GraphNativeStore store(net_topo.spatial, kFeatureDim);
        PtQueues queues(n);

        using Scheduled = std::pair<std::pair<Tick, std::uint64_t>, Measurement>;
        auto cmp = [](const Scheduled& a, const Scheduled& b) { return a.first > b.first; };
        std::priority_queue<Scheduled, std::vector<Scheduled>, decltype(cmp)> in_flight(cmp);
        std::uint64_t seq = 0;

        GraphSignal x_cur = GraphSignal::zeros(0, n, kFeatureDim);
        State s_t = State::from_store(store, 0, setup.agent.delta);

        TrainingLogRow row;
        row.episode = ep;
        row.lr = setup.agent.lr;
        double loss_sum = 0.0;
        std::uint64_t loss_count = 0;
        std::uint64_t bytes_applied = 0;
        const std::uint64_t ops_at_start = store.stats().memory_ops;

        for (Tick t = 1; t <= setup.horizon; ++t) {
            sim.step();
            for (const Measurement& m : sim.emit_measurements()) {
                const std::uint64_t s = seq++;
                if (const auto arrival = deliver(m, setup.channel, channel_rng))
                    in_flight.push({{*arrival, s}, m});
            }
            while (!in_flight.empty() && in_flight.top().first.first <= t) {
                const auto& [key, m] = in_flight.top();
                queues.enqueue(Delivery{m, key.first, key.second});
                in_flight.pop();
            }

            // freeze the input gain on the first informative state
            if (!scale_frozen) {
                double mean_abs = 0.0;
                for (double v : s_t.values) mean_abs += std::abs(v);
                mean_abs /= static_cast<double>(std::max<std::size_t>(1, s_t.values.size()));
                if (mean_abs > 0.0) {
                    qnet.input_scale = 1.0 / (1.0 + mean_abs);
                    target.input_scale = qnet.input_scale;
                    scale_frozen = true;
                }
            }

            const std::vector<double> q = qnet.forward(s_t.values);
            const UpdateAction a = select_action(q, epsilon, explore_rng);
            const AppliedResult applied =
                apply_action(store, queues, a, t, setup.literal_etl);
            const double r =
                reward(x_cur, applied.new_signal, a, net_topo.spatial, setup.agent);
            x_cur = applied.new_signal;

            State s_next = State::from_store(store, t + 1, setup.agent.delta);
            replay.remember(
                Experience{std::move(s_t), a, r, s_next, t == setup.horizon});
            s_t = std::move(s_next);

            if (replay.size() >= setup.agent.batch_size) {
                const auto batch = replay.sample_batch(setup.agent.batch_size, replay_rng);
                loss_sum += optimize(batch, qnet, target, setup.agent);
                ++loss_count;
            }

            ++global_tick;
            if (global_tick % setup.agent.update_interval == 0) sync_target(qnet, target);

            row.cumulative_reward += r;
            row.actions_taken += applied.updated_pts.size();
            bytes_applied += applied.bytes_applied;
        }

        row.mem_ops = store.stats().memory_ops - ops_at_start;
        row.mean_loss = loss_count ? loss_sum / static_cast<double>(loss_count) : 0.0;
        row.energy_mj = energy_proxy(row.mem_ops, bytes_applied, setup.energy);
        result.log.push_back(row);

        epsilon = std::max(setup.agent.epsilon_end, epsilon * setup.agent.epsilon_decay);
    }

    result.net = std::move(qnet);
    result.final_epsilon = epsilon;
    return result;
}

}  // namespace twinforge
