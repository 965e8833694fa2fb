#include "twinforge/sim.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace twinforge {

Topology topology_from_string(std::string_view name) {
    if (name == "ring") return Topology::ring;
    if (name == "grid") return Topology::grid;
    if (name == "random-geometric") return Topology::random_geometric;
    throw BadTopologyArgs("unknown topology '" + std::string(name) + "'");
}

std::string_view to_string(Topology t) {
    switch (t) {
        case Topology::ring: return "ring";
        case Topology::grid: return "grid";
        case Topology::random_geometric: return "random-geometric";
    }
    return "?";
}

namespace {

std::vector<std::vector<double>> draw_turn_probs(const SpatialGraph& g, Rng& rng) {
    std::vector<std::vector<double>> probs(g.n_nodes());
    for (PtId i = 0; i < g.n_nodes(); ++i) {
        const auto out = g.out_edge_indices(i);
        if (out.empty()) continue;
        auto& p = probs[i];
        p.resize(out.size());
        double sum = 0.0;
        for (auto& v : p) {
            v = 0.1 + rng.uniform01();
            sum += v;
        }
        for (auto& v : p) v /= sum;
    }
    return probs;
}

}  // namespace

RoadNetwork generate_network(std::uint32_t n, Topology topology, std::uint64_t seed) {
    if (n < 2) throw BadTopologyArgs("need at least 2 junctions");
    Rng rng(mix_seed(seed ^ 0x6e657477ULL));
    std::vector<DirectedEdge> edges;

    switch (topology) {
        case Topology::ring: {
            for (PtId i = 0; i < n; ++i)
                edges.push_back({i, (i + 1) % n, rng.uniform(50.0, 500.0)});
            break;
        }
        case Topology::grid: {
            const auto side = static_cast<std::uint32_t>(std::lround(std::sqrt(double(n))));
            if (side * side != n)
                throw BadTopologyArgs("grid needs a square junction count, got " +
                                      std::to_string(n));
            auto at = [side](std::uint32_t r, std::uint32_t c) { return r * side + c; };
            for (std::uint32_t r = 0; r < side; ++r) {
                for (std::uint32_t c = 0; c < side; ++c) {
                    if (c + 1 < side) {
                        const double w = rng.uniform(50.0, 500.0);
                        edges.push_back({at(r, c), at(r, c + 1), w});
                        edges.push_back({at(r, c + 1), at(r, c), w});
                    }
                    if (r + 1 < side) {
                        const double w = rng.uniform(50.0, 500.0);
                        edges.push_back({at(r, c), at(r + 1, c), w});
                        edges.push_back({at(r + 1, c), at(r, c), w});
                    }
                }
            }
            break;
        }
        case Topology::random_geometric: {
            std::vector<std::pair<double, double>> pts(n);
            for (auto& p : pts) p = {rng.uniform01(), rng.uniform01()};
            // radius targets ~5 expected neighbors
            const double radius = std::sqrt(5.0 / (M_PI * n));
            for (PtId i = 0; i < n; ++i) {
                for (PtId j = i + 1; j < n; ++j) {
                    const double dx = pts[i].first - pts[j].first;
                    const double dy = pts[i].second - pts[j].second;
                    const double d = std::sqrt(dx * dx + dy * dy);
                    if (d <= radius) {
                        const double w = 50.0 + 450.0 * (d / radius);
                        edges.push_back({i, j, w});
                        edges.push_back({j, i, w});
                    }
                }
            }
            break;
        }
    }

    RoadNetwork net{SpatialGraph(n, std::move(edges)), {}, {}};
    net.turn_probs = draw_turn_probs(net.spatial, rng);
    net.entries.resize(n);
    for (PtId i = 0; i < n; ++i) net.entries[i] = i;
    return net;
}

std::optional<Tick> deliver(const Measurement& m, const ChannelConfig& ch, Rng& rng) {
    if (rng.uniform01() < ch.loss_prob) return std::nullopt;
    const double jitter = ch.latency_jitter > 0.0
                              ? rng.uniform(-ch.latency_jitter, ch.latency_jitter)
                              : 0.0;
    const long long lat = std::llround(ch.latency_mean + jitter);
    return m.gen_tick + static_cast<Tick>(std::max(0LL, lat));
}

TrafficSim::TrafficSim(const RoadNetwork& network, SimParams params, std::uint64_t seed)
    : net_(&network), params_(params), rng_(Rng(seed).fork("traffic")) {
    const std::uint32_t n = net_->spatial.n_nodes();
    state_.vehicle_count.assign(n, 0.0);
    state_.incoming.assign(n, 0.0);
    state_.outgoing.assign(n, 0.0);
    demand_phase_.resize(n);
    Rng phase_rng = Rng(seed).fork("demand-phase");
    for (auto& p : demand_phase_) p = phase_rng.uniform(0.0, 2.0 * M_PI);
}

void TrafficSim::seed_vehicles(PtId pt, double count) {
    if (state_.tick != 0) throw Error("seed_vehicles only valid before the first step");
    if (pt >= state_.vehicle_count.size()) throw UnknownPt("seed_vehicles: bad pt");
    if (count < 0.0) throw Error("seed_vehicles: negative count");
    state_.vehicle_count[pt] += count;
    initial_total_ += count;
}

const TrafficState& TrafficSim::step() {
    const std::uint32_t n = net_->spatial.n_nodes();
    const Tick t = state_.tick + 1;

    std::vector<double> arrivals(n, 0.0);
    std::vector<double> departures(n, 0.0);
    double inserted = 0.0, exited = 0.0;

    // demand
    for (PtId i : net_->entries) {
        const double phase = 2.0 * M_PI * static_cast<double>(t) / params_.demand_period;
        const double lambda = params_.insertion_rate *
                              std::max(0.0, 1.0 + params_.demand_amplitude *
                                                      std::sin(phase + demand_phase_[i]));
        const double v = static_cast<double>(rng_.poisson(lambda));
        arrivals[i] += v;
        inserted += v;
    }

    // movement: serviced outflow splits into retiring and routed shares
    for (PtId i = 0; i < n; ++i) {
        const double serviced = std::min(state_.vehicle_count[i], params_.service_rate);
        if (serviced <= 0.0) continue;
        departures[i] = serviced;
        const auto out = net_->spatial.out_edge_indices(i);
        if (out.empty()) {
            exited += serviced;  // sink
            continue;
        }
        const double retiring = serviced * params_.exit_fraction;
        exited += retiring;
        const double moved = serviced - retiring;
        const auto& probs = net_->turn_probs[i];
        for (std::size_t k = 0; k < out.size(); ++k)
            arrivals[net_->spatial.edges()[out[k]].dst] += moved * probs[k];
    }

    for (PtId i = 0; i < n; ++i)
        state_.vehicle_count[i] += arrivals[i] - departures[i];
    state_.incoming = std::move(arrivals);
    state_.outgoing = std::move(departures);
    state_.total_inserted += inserted;
    state_.total_exited += exited;
    state_.tick = t;

    check_conservation();

    GraphSignal snap = GraphSignal::zeros(t, n, kFeatureDim);
    for (PtId i = 0; i < n; ++i) {
        snap.at(i, 0) = state_.vehicle_count[i];
        snap.at(i, 1) = state_.incoming[i];
        snap.at(i, 2) = state_.outgoing[i];
    }
    history_.push_back(std::move(snap));
    return state_;
}

void TrafficSim::check_conservation() const {
    const double expect = initial_total_ + state_.total_inserted - state_.total_exited;
    const double got = total_vehicles();
    const double tol = 1e-6 * std::max(1.0, std::abs(expect));
    if (std::abs(expect - got) > tol)
        throw Error("vehicle conservation violated at tick " + std::to_string(state_.tick) +
                    ": have " + std::to_string(got) + ", expected " + std::to_string(expect));
}

double TrafficSim::total_vehicles() const {
    double sum = 0.0;
    for (double v : state_.vehicle_count) sum += v;
    return sum;
}

GraphSignal TrafficSim::ground_truth(Tick t) const {
    if (t == 0 || t > state_.tick || history_.empty() || t < history_.front().tick)
        throw OutOfRetention("no retained ground truth for tick " + std::to_string(t));
    return history_[t - history_.front().tick];
}

std::vector<Measurement> TrafficSim::emit_measurements() const {
    std::vector<Measurement> out;
    const Tick t = state_.tick;
    if (t == 0 || params_.sampling_interval == 0 || t % params_.sampling_interval != 0)
        return out;
    const std::uint32_t n = net_->spatial.n_nodes();
    out.reserve(n);
    for (PtId i = 0; i < n; ++i) {
        out.push_back(Measurement{
            i, t,
            {state_.vehicle_count[i], state_.incoming[i], state_.outgoing[i]},
            params_.payload_bytes});
    }
    return out;
}

void TrafficSim::export_history_csv(std::ostream& os) const {
    os << "tick,pt_id,current,incoming,outgoing\n";
    char buf[32];
    for (const auto& sig : history_) {
        for (std::size_t i = 0; i < sig.n; ++i) {
            os << sig.tick << "," << i;
            for (std::size_t j = 0; j < sig.f; ++j) {
                std::snprintf(buf, sizeof(buf), "%.17g", sig.at(i, j));
                os << "," << buf;
            }
            os << "\n";
        }
    }
}

}  // namespace twinforge
