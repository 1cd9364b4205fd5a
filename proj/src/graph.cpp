#include "netdisrupt/graph.hpp"

#include <algorithm>
#include <bit>
#include <utility>

#include "netdisrupt/errors.hpp"

namespace netdisrupt {

WeightedGraph::WeightedGraph(std::size_t n, std::vector<Edge> edges, std::vector<NodeInfo> info)
    : present_(n, true), edges_(std::move(edges)), info_(std::move(info)) {
    if (info_.empty()) {
        info_.resize(n);
        for (std::size_t v = 0; v < n; ++v) info_[v].label = std::to_string(v);
    }
    if (info_.size() != n) throw InputError("node metadata count does not match node count");

    node_list_.resize(n);
    for (std::size_t v = 0; v < n; ++v) node_list_[v] = static_cast<NodeId>(v);

    for (auto& e : edges_) {
        if (e.u >= n || e.v >= n)
            throw InputError("edge endpoint out of range: " + std::to_string(e.u) + "-" +
                             std::to_string(e.v));
        if (e.u == e.v) throw InputError("self-loop on node " + std::to_string(e.u));
        if (!(e.weight > 0.0))
            throw InputError("non-positive weight on edge " + std::to_string(e.u) + "-" +
                             std::to_string(e.v));
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
            throw InputError("duplicate edge " + std::to_string(edges_[i].u) + "-" +
                             std::to_string(edges_[i].v));
    }
    build_adjacency();
}

void WeightedGraph::build_adjacency() {
    const std::size_t n = present_.size();
    offsets_.assign(n + 1, 0);
    for (const Edge& e : edges_) {
        ++offsets_[e.u + 1];
        ++offsets_[e.v + 1];
    }
    for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
    adj_.resize(offsets_[n]);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const Edge& e : edges_) {
        adj_[cursor[e.u]++] = {e.v, e.weight};
        adj_[cursor[e.v]++] = {e.u, e.weight};
    }
    for (std::size_t v = 0; v < n; ++v) {
        std::sort(adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
                  adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]),
                  [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });
    }
}

std::span<const Neighbor> WeightedGraph::neighbors(NodeId v) const {
    if (v >= present_.size()) throw InputError("unknown node id " + std::to_string(v));
    return {adj_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::size_t WeightedGraph::degree(NodeId v) const { return neighbors(v).size(); }

double WeightedGraph::strength(NodeId v) const {
    double s = 0.0;
    for (const Neighbor& nb : neighbors(v)) s += nb.weight;
    return s;
}

const NodeInfo& WeightedGraph::info(NodeId v) const {
    if (v >= info_.size()) throw InputError("unknown node id " + std::to_string(v));
    return info_[v];
}

NodeId WeightedGraph::id_of_label(const std::string& label) const {
    for (NodeId v : node_list_) {
        if (info_[v].label == label) return v;
    }
    throw InputError("unknown node label '" + label + "'");
}

WeightedGraph WeightedGraph::remove_nodes(std::span<const NodeId> removed) const {
    WeightedGraph out;
    out.present_ = present_;
    for (NodeId v : removed) {
        if (v >= present_.size() || !present_[v])
            throw InputError("cannot remove unknown node id " + std::to_string(v));
        if (!out.present_[v])
            throw InputError("node id " + std::to_string(v) + " listed twice for removal");
        out.present_[v] = false;
    }
    out.node_list_.reserve(node_list_.size() - removed.size());
    for (NodeId v : node_list_) {
        if (out.present_[v]) out.node_list_.push_back(v);
    }
    out.edges_.reserve(edges_.size());
    for (const Edge& e : edges_) {
        if (out.present_[e.u] && out.present_[e.v]) out.edges_.push_back(e);
    }
    out.info_ = info_;
    out.build_adjacency();
    return out;
}

std::uint64_t WeightedGraph::structure_hash() const {
    std::uint64_t h = 0x243F6A8885A308D3ull;
    auto mix = [&h](std::uint64_t x) {
        h ^= x + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    };
    mix(present_.size());
    for (NodeId v : node_list_) mix(v);
    for (const Edge& e : edges_) {
        mix(e.u);
        mix(e.v);
        mix(std::bit_cast<std::uint64_t>(e.weight));
    }
    return h;
}

std::size_t ComponentPartition::largest() const {
    std::size_t best = 0;
    for (std::uint32_t s : sizes) best = std::max(best, static_cast<std::size_t>(s));
    return best;
}

ComponentPartition connected_components(const WeightedGraph& g) {
    ComponentPartition part;
    part.assignment.assign(g.id_limit(), -1);
    std::vector<NodeId> stack;
    for (NodeId root : g.nodes()) {
        if (part.assignment[root] != -1) continue;
        const auto comp = static_cast<std::int32_t>(part.sizes.size());
        std::uint32_t size = 0;
        part.assignment[root] = comp;
        stack.push_back(root);
        while (!stack.empty()) {
            NodeId v = stack.back();
            stack.pop_back();
            ++size;
            for (const Neighbor& nb : g.neighbors(v)) {
                if (part.assignment[nb.to] == -1) {
                    part.assignment[nb.to] = comp;
                    stack.push_back(nb.to);
                }
            }
        }
        part.sizes.push_back(size);
    }
    return part;
}

std::size_t lcc_size(const WeightedGraph& g) { return connected_components(g).largest(); }

}  // namespace netdisrupt
