#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netdisrupt/centrality.hpp"
#include "netdisrupt/objectives.hpp"

namespace netdisrupt {

enum class RemovalMode { sequential, block };

/// Centrality-driven removal strategy of the competing approach. Spatial cost
/// is recorded against the shared layout but never drives selection.
struct BaselineStrategy {
    CentralityMeasure measure = CentralityMeasure::betweenness;
    bool weighted = false;
    RemovalMode mode = RemovalMode::sequential;
    int ci_radius = 2;
    KatzParams katz{};
    WeightTransform transform = WeightTransform::inverse;

    /// Canonical label, e.g. "seq-betweenness", "block-degree-w".
    std::string label() const;
};

/// Parses labels of the form {seq|block}-{degree|betweenness|katz|ci}[-w].
std::optional<BaselineStrategy> parse_baseline_label(const std::string& label);

/// Rank once on g0, remove the top i. Ties break by ascending NodeId.
RemovalSet block_removal(const WeightedGraph& g0, const BaselineStrategy& strategy,
                         std::size_t budget);

struct SequentialStep {
    std::size_t step = 0;  // 1-based
    NodeId removed = 0;
    double rho = 0.0;
    double spatial = 0.0;
};

struct SequentialTrace {
    RemovalSet removal;
    std::vector<SequentialStep> steps;
};

/// Repeat i times: recompute the measure on the remnant (isolated nodes stay
/// candidates), remove the argmax (ties -> ascending NodeId), record (rho, D).
SequentialTrace sequential_removal(const Evaluator& eval, const BaselineStrategy& strategy,
                                   std::size_t budget);

/// User-supplied removal list by original labels (the "real-world" strategy).
RemovalSet removal_from_labels(const WeightedGraph& g,
                               const std::vector<std::string>& labels);

}  // namespace netdisrupt
