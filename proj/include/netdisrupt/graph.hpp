#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace netdisrupt {

/// Dense node index, stable for one loaded dataset.
using NodeId = std::uint32_t;

struct Neighbor {
    NodeId to;
    double weight;
};

/// Canonical undirected edge, u < v.
struct Edge {
    NodeId u;
    NodeId v;
    double weight;
};

struct NodeInfo {
    std::string label;  // original dataset label
    std::string role;   // optional metadata, carried through reports
};

// Immutable weighted undirected interaction network. Node ids live in a fixed
// id space [0, id_limit); removal views keep the id space and clear presence,
// so centrality scores and removal sets stay comparable across views.
// Immutable after construction: safe to share across concurrent workers.
class WeightedGraph {
public:
    WeightedGraph() = default;

    /// Nodes 0..n-1 all present. Rejects self-loops, duplicate edges,
    /// out-of-range endpoints and non-positive weights.
    WeightedGraph(std::size_t n, std::vector<Edge> edges, std::vector<NodeInfo> info = {});

    std::size_t id_limit() const { return present_.size(); }
    std::size_t node_count() const { return node_list_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    bool contains(NodeId v) const { return v < present_.size() && present_[v]; }

    /// Present node ids, ascending.
    std::span<const NodeId> nodes() const { return node_list_; }
    std::span<const Edge> edges() const { return edges_; }
    std::span<const Neighbor> neighbors(NodeId v) const;

    std::size_t degree(NodeId v) const;
    /// Sum of incident edge weights.
    double strength(NodeId v) const;

    const NodeInfo& info(NodeId v) const;
    /// Label -> id for every present node.
    NodeId id_of_label(const std::string& label) const;

    /// Pure node-removal view: same id space, removed ids absent, edges filtered.
    WeightedGraph remove_nodes(std::span<const NodeId> removed) const;

    /// Order-independent hash of (presence, edges, weights); used to assert purity.
    std::uint64_t structure_hash() const;

private:
    void build_adjacency();

    std::vector<bool> present_;
    std::vector<NodeId> node_list_;
    std::vector<Edge> edges_;
    std::vector<NodeInfo> info_;
    std::vector<std::size_t> offsets_;
    std::vector<Neighbor> adj_;
};

struct ComponentPartition {
    /// Per id; -1 for absent nodes. Component indices are contiguous from 0.
    std::vector<std::int32_t> assignment;
    /// Component index -> node count.
    std::vector<std::uint32_t> sizes;

    std::size_t count() const { return sizes.size(); }
    std::size_t largest() const;
};

ComponentPartition connected_components(const WeightedGraph& g);

/// Size of the largest connected component; 0 for an empty graph.
std::size_t lcc_size(const WeightedGraph& g);

}  // namespace netdisrupt
