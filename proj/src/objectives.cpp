#include "netdisrupt/objectives.hpp"

#include <algorithm>

#include "netdisrupt/errors.hpp"

namespace netdisrupt {

RemovalSet RemovalSet::of(std::vector<NodeId> nodes, const WeightedGraph& g) {
    if (nodes.empty()) throw InputError("removal set is empty");
    std::sort(nodes.begin(), nodes.end());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i > 0 && nodes[i] == nodes[i - 1])
            throw InputError("duplicate node id " + std::to_string(nodes[i]) + " in removal set");
        if (!g.contains(nodes[i]))
            throw InputError("removal set references unknown node id " + std::to_string(nodes[i]));
    }
    return RemovalSet{std::move(nodes)};
}

namespace {

// Union-find scratch reused across evaluations; one instance per thread so a
// shared Evaluator can score genomes concurrently.
struct UfScratch {
    std::vector<NodeId> parent;
    std::vector<std::uint32_t> size;
    std::vector<char> removed;
    std::vector<NodeId> sorted;
};

UfScratch& scratch() {
    static thread_local UfScratch s;
    return s;
}

NodeId uf_find(std::vector<NodeId>& parent, NodeId v) {
    while (parent[v] != v) {
        parent[v] = parent[parent[v]];  // path halving
        v = parent[v];
    }
    return v;
}

}  // namespace

Evaluator::Evaluator(const WeightedGraph& g0, const SpatialLayout& layout)
    : g0_(&g0), layout_(&layout) {
    bind_layout(layout, g0);
    lcc0_ = lcc_size(g0);
    if (lcc0_ == 0) throw InputError("cannot evaluate removals on an empty graph");
    norm_dist_.resize(g0.id_limit(), 0.0);
    raw_dist_.resize(g0.id_limit(), 0.0);
    for (NodeId v : g0.nodes()) {
        norm_dist_[v] = layout.normalized_distance(v);
        raw_dist_[v] = layout.nearest_hq[v];
    }
}

std::size_t Evaluator::lcc_after_removal(std::span<const NodeId> removal) const {
    auto& s = scratch();
    const std::size_t nid = g0_->id_limit();
    s.parent.resize(nid);
    s.size.resize(nid);
    s.removed.assign(nid, 0);
    for (NodeId v : removal) {
        if (!g0_->contains(v))
            throw InputError("removal references unknown node id " + std::to_string(v));
        s.removed[v] = 1;
    }
    std::size_t remaining = 0;
    for (NodeId v : g0_->nodes()) {
        if (!s.removed[v]) {
            s.parent[v] = v;
            s.size[v] = 1;
            ++remaining;
        }
    }
    if (remaining == 0) return 0;
    std::size_t best = 1;
    for (const Edge& e : g0_->edges()) {
        if (s.removed[e.u] || s.removed[e.v]) continue;
        NodeId ru = uf_find(s.parent, e.u);
        NodeId rv = uf_find(s.parent, e.v);
        if (ru == rv) continue;
        if (s.size[ru] < s.size[rv]) std::swap(ru, rv);
        s.parent[rv] = ru;
        s.size[ru] += s.size[rv];
        best = std::max(best, static_cast<std::size_t>(s.size[ru]));
    }
    return best;
}

double Evaluator::rho(std::span<const NodeId> removal) const {
    if (removal.empty()) return 1.0;  // i = 0 diagnostic
    return static_cast<double>(lcc_after_removal(removal)) / static_cast<double>(lcc0_);
}

double Evaluator::spatial_distance(std::span<const NodeId> removal) const {
    if (removal.empty()) return 0.0;
    auto& s = scratch();
    // Sum in sorted order so the mean is invariant under member reordering.
    s.sorted.assign(removal.begin(), removal.end());
    std::sort(s.sorted.begin(), s.sorted.end());
    double sum = 0.0;
    for (NodeId v : s.sorted) {
        if (!g0_->contains(v))
            throw InputError("removal references unknown node id " + std::to_string(v));
        sum += norm_dist_[v];
    }
    return sum / static_cast<double>(removal.size());
}

ObjectiveVector Evaluator::evaluate(std::span<const NodeId> removal) const {
    const double r = rho(removal);
    ObjectiveVector out;
    out.rho = r;
    out.f_rho = 1.0 - r;
    if (removal.empty()) {
        out.D = 0.0;
        out.raw_mean_distance = 0.0;
    } else {
        auto& s = scratch();
        s.sorted.assign(removal.begin(), removal.end());
        std::sort(s.sorted.begin(), s.sorted.end());
        double sum_norm = 0.0, sum_raw = 0.0;
        for (std::size_t i = 0; i < s.sorted.size(); ++i) {
            NodeId v = s.sorted[i];
            if (i > 0 && v == s.sorted[i - 1])
                throw InputError("duplicate node id " + std::to_string(v) + " in removal");
            if (!g0_->contains(v))
                throw InputError("removal references unknown node id " + std::to_string(v));
            sum_norm += norm_dist_[v];
            sum_raw += raw_dist_[v];
        }
        out.D = sum_norm / static_cast<double>(s.sorted.size());
        out.raw_mean_distance = sum_raw / static_cast<double>(s.sorted.size());
    }
    out.f_spatial = 1.0 - out.D;
    return out;
}

}  // namespace netdisrupt
