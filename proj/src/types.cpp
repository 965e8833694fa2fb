#include "twinforge/types.hpp"

#include <string>

namespace twinforge {

SpatialGraph::SpatialGraph(std::uint32_t n_nodes, std::vector<DirectedEdge> edges)
    : n_(n_nodes), edges_(std::move(edges)), out_(n_nodes) {
    for (std::uint32_t idx = 0; idx < edges_.size(); ++idx) {
        const auto& e = edges_[idx];
        if (e.src >= n_ || e.dst >= n_)
            throw BadTopologyArgs("edge endpoint out of range: " + std::to_string(e.src) +
                                  "->" + std::to_string(e.dst));
        if (e.src == e.dst)
            throw BadTopologyArgs("self-edge at node " + std::to_string(e.src));
        if (!(e.weight_m > 0.0))
            throw BadTopologyArgs("non-positive edge weight on " + std::to_string(e.src) +
                                  "->" + std::to_string(e.dst));
        out_[e.src].push_back(idx);
    }
}

std::span<const std::uint32_t> SpatialGraph::out_edge_indices(PtId src) const {
    if (src >= n_) throw UnknownPt("node id " + std::to_string(src) + " out of range");
    return out_[src];
}

bool SpatialGraph::has_edge(PtId src, PtId dst) const {
    return edge_weight(src, dst).has_value();
}

std::optional<double> SpatialGraph::edge_weight(PtId src, PtId dst) const {
    if (src >= n_ || dst >= n_) return std::nullopt;
    for (std::uint32_t idx : out_[src]) {
        if (edges_[idx].dst == dst) return edges_[idx].weight_m;
    }
    return std::nullopt;
}

}  // namespace twinforge
