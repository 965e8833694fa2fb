#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "twinforge/errors.hpp"

namespace twinforge {

using Tick = std::uint64_t;
using PtId = std::uint32_t;
using RecordId = std::uint64_t;

struct DirectedEdge {
    PtId src;
    PtId dst;
    double weight_m;  // junction-to-junction distance, meters
};

/// Static weighted directed junction topology. Node ids are dense 0..n-1,
/// weights strictly positive, self-edges rejected.
class SpatialGraph {
public:
    SpatialGraph(std::uint32_t n_nodes, std::vector<DirectedEdge> edges);

    std::uint32_t n_nodes() const { return n_; }
    const std::vector<DirectedEdge>& edges() const { return edges_; }

    std::span<const std::uint32_t> out_edge_indices(PtId src) const;
    std::size_t out_degree(PtId src) const { return out_edge_indices(src).size(); }
    bool has_edge(PtId src, PtId dst) const;
    std::optional<double> edge_weight(PtId src, PtId dst) const;

private:
    std::uint32_t n_;
    std::vector<DirectedEdge> edges_;
    std::vector<std::vector<std::uint32_t>> out_;  // per-src indices into edges_
};

/// One N x F feature matrix stamped with the tick it describes. Row-major.
struct GraphSignal {
    Tick tick = 0;
    std::size_t n = 0;
    std::size_t f = 0;
    std::vector<double> values;

    static GraphSignal zeros(Tick tick, std::size_t n, std::size_t f) {
        return GraphSignal{tick, n, f, std::vector<double>(n * f, 0.0)};
    }

    double& at(std::size_t i, std::size_t j) { return values[i * f + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * f + j]; }
    bool same_shape(const GraphSignal& o) const { return n == o.n && f == o.f; }
};

}  // namespace twinforge
