#include "netdisrupt/baselines.hpp"

#include <algorithm>

#include "netdisrupt/errors.hpp"

namespace netdisrupt {

namespace {

CentralityScores compute_measure(const WeightedGraph& g, const BaselineStrategy& s) {
    switch (s.measure) {
        case CentralityMeasure::degree: return degree_centrality(g, s.weighted);
        case CentralityMeasure::betweenness:
            return betweenness_centrality(g, s.weighted, s.transform);
        case CentralityMeasure::katz: return katz_centrality(g, s.weighted, s.katz);
        case CentralityMeasure::collective_influence:
            return collective_influence(g, s.ci_radius, s.weighted);
    }
    throw ConfigError("unknown centrality measure");
}

// Highest score wins; score ties resolve to the lower node id.
NodeId argmax_score(const WeightedGraph& g, const std::vector<double>& values) {
    auto nodes = g.nodes();
    NodeId best = nodes.front();
    for (NodeId v : nodes) {
        if (values[v] > values[best]) best = v;
    }
    return best;
}

}  // namespace

std::string BaselineStrategy::label() const {
    std::string s = mode == RemovalMode::sequential ? "seq-" : "block-";
    s += measure_name(measure);
    if (weighted) s += "-w";
    return s;
}

std::optional<BaselineStrategy> parse_baseline_label(const std::string& label) {
    BaselineStrategy s;
    std::string rest;
    if (label.rfind("seq-", 0) == 0) {
        s.mode = RemovalMode::sequential;
        rest = label.substr(4);
    } else if (label.rfind("block-", 0) == 0) {
        s.mode = RemovalMode::block;
        rest = label.substr(6);
    } else {
        return std::nullopt;
    }
    if (rest.size() > 2 && rest.compare(rest.size() - 2, 2, "-w") == 0) {
        s.weighted = true;
        rest = rest.substr(0, rest.size() - 2);
    }
    auto m = parse_measure(rest);
    if (!m) return std::nullopt;
    s.measure = *m;
    return s;
}

RemovalSet block_removal(const WeightedGraph& g0, const BaselineStrategy& strategy,
                         std::size_t budget) {
    if (budget < 1 || budget > g0.node_count())
        throw ConfigError("removal budget " + std::to_string(budget) + " must be in [1, " +
                          std::to_string(g0.node_count()) + "]");
    const auto scores = compute_measure(g0, strategy);
    std::vector<NodeId> ranked(g0.nodes().begin(), g0.nodes().end());
    std::stable_sort(ranked.begin(), ranked.end(), [&](NodeId a, NodeId b) {
        return scores.values[a] > scores.values[b];
    });
    ranked.resize(budget);
    return RemovalSet::of(std::move(ranked), g0);
}

SequentialTrace sequential_removal(const Evaluator& eval, const BaselineStrategy& strategy,
                                   std::size_t budget) {
    const WeightedGraph& g0 = eval.graph();
    if (budget < 1 || budget > g0.node_count())
        throw ConfigError("removal budget " + std::to_string(budget) + " must be in [1, " +
                          std::to_string(g0.node_count()) + "]");
    SequentialTrace trace;
    trace.steps.reserve(budget);
    WeightedGraph current = g0;
    std::vector<NodeId> removed;
    removed.reserve(budget);
    for (std::size_t step = 1; step <= budget; ++step) {
        NodeId pick;
        if (current.node_count() < 2) {
            pick = current.nodes().front();  // measures degenerate to ties; id rule applies
        } else {
            const auto scores = compute_measure(current, strategy);
            pick = argmax_score(current, scores.values);
        }
        removed.push_back(pick);
        current = current.remove_nodes(std::span<const NodeId>(&pick, 1));
        trace.steps.push_back(
            {step, pick, eval.rho(removed), eval.spatial_distance(removed)});
    }
    trace.removal = RemovalSet::of(std::move(removed), g0);
    return trace;
}

RemovalSet removal_from_labels(const WeightedGraph& g, const std::vector<std::string>& labels) {
    std::vector<NodeId> nodes;
    nodes.reserve(labels.size());
    for (const std::string& label : labels) nodes.push_back(g.id_of_label(label));
    return RemovalSet::of(std::move(nodes), g);
}

}  // namespace netdisrupt
