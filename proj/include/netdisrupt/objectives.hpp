#pragma once

#include <span>
#include <vector>

#include "netdisrupt/graph.hpp"
#include "netdisrupt/spatial.hpp"

namespace netdisrupt {

/// Distinct nodes selected for removal; stored sorted ascending.
struct RemovalSet {
    std::vector<NodeId> nodes;

    std::size_t budget() const { return nodes.size(); }

    /// Validates distinctness, membership in g and 1 <= |nodes| <= |V|.
    static RemovalSet of(std::vector<NodeId> nodes, const WeightedGraph& g);
};

/// Fitness pair plus raw diagnostics. Field order is a contract: f_rho first,
/// f_spatial second, everywhere objectives are treated as a vector.
struct ObjectiveVector {
    double f_rho = 0.0;      // 1 - rho
    double f_spatial = 0.0;  // 1 - D
    double rho = 0.0;        // LCC(G_i)/LCC(G_0)
    double D = 0.0;          // mean normalized nearest-HQ distance of removed nodes
    double raw_mean_distance = 0.0;
};

// Evaluates removal sets against both objectives. LCC(G_0) and the per-node
// normalized distances are cached once at construction; evaluate() is pure and
// reentrant, so genomes may be scored concurrently against a shared instance.
class Evaluator {
public:
    Evaluator(const WeightedGraph& g0, const SpatialLayout& layout);

    const WeightedGraph& graph() const { return *g0_; }
    const SpatialLayout& layout() const { return *layout_; }
    std::size_t lcc0() const { return lcc0_; }

    /// rho of the removal view; an empty removal is the i=0 diagnostic (rho=1).
    double rho(std::span<const NodeId> removal) const;
    /// Mean normalized nearest-HQ distance over the removed nodes; 0 when empty.
    double spatial_distance(std::span<const NodeId> removal) const;
    ObjectiveVector evaluate(std::span<const NodeId> removal) const;

private:
    std::size_t lcc_after_removal(std::span<const NodeId> removal) const;

    const WeightedGraph* g0_;
    const SpatialLayout* layout_;
    std::size_t lcc0_ = 0;
    std::vector<double> norm_dist_;
    std::vector<double> raw_dist_;
};

}  // namespace netdisrupt
