#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netdisrupt/graph.hpp"

namespace netdisrupt {

enum class CentralityMeasure { degree, betweenness, katz, collective_influence };

std::string measure_name(CentralityMeasure m);
std::optional<CentralityMeasure> parse_measure(const std::string& name);

/// How edge weights map to shortest-path lengths. Interaction frequency reads
/// as closeness, so the default inverts: distance = 1/weight.
enum class WeightTransform { inverse, raw };

struct CentralityScores {
    CentralityMeasure measure;
    bool weighted = false;
    std::vector<double> values;  // indexed by NodeId over the graph's id space
};

/// Unweighted: deg(v)/(|V|-1) (requires |V| >= 2). Weighted: raw strength.
CentralityScores degree_centrality(const WeightedGraph& g, bool weighted);

/// Shortest-path pair-dependency accumulation, normalized by (n-1)(n-2)/2.
/// Parallelized over source nodes; results are identical for any worker count.
CentralityScores betweenness_centrality(const WeightedGraph& g, bool weighted,
                                        WeightTransform transform = WeightTransform::inverse);

struct KatzParams {
    /// Attenuation. When unset, alpha = alpha_scale / lambda_max(A) with
    /// lambda_max estimated by power iteration.
    std::optional<double> alpha;
    double alpha_scale = 0.9;
    double beta = 1.0;
    double tol = 1e-10;
    int max_iter = 1000;
};

struct KatzDiag {
    double alpha_used = 0.0;
    double residual = 0.0;  // ||x - (alpha*A*x + beta)||_inf of the pre-normalization solution
    double scale = 0.0;     // L2 norm removed by normalization
    int iterations = 0;
};

/// Fixed point of x = alpha*A*x + beta*1 by iteration, L2-normalized.
/// Throws ComputeError when the residual has not fallen below tol in max_iter.
CentralityScores katz_centrality(const WeightedGraph& g, bool weighted,
                                 const KatzParams& params = {}, KatzDiag* diag = nullptr);

/// CI_l(v) = (deg(v)-1) * sum over the exact hop-l frontier of (deg(u)-1),
/// clamped to 0 for deg(v) <= 1. The weighted variant substitutes strength
/// for degree (factors clamped at 0); hop balls stay unweighted.
CentralityScores collective_influence(const WeightedGraph& g, int radius, bool weighted = false);

/// Average local clustering coefficient; nodes with deg < 2 contribute 0.
double clustering_coefficient(const WeightedGraph& g);

/// Mean geodesic (hop) distance over reachable unordered pairs only.
/// Throws ComputeError when no pair is reachable.
double average_path_length(const WeightedGraph& g);

}  // namespace netdisrupt
