#pragma once

// Deliberately naive serial implementations of the library's kernels. These
// trade asymptotics for obviousness: dense matrices, Floyd-Warshall, explicit
// enumeration. Tests pin the fast OpenMP code against them; the benchmark
// target measures the gap. Keep them boring.

#include <cstdint>
#include <span>
#include <vector>

#include "netdisrupt/graph.hpp"
#include "netdisrupt/objectives.hpp"

namespace netdisrupt::reference {

/// Betweenness via Floyd-Warshall distances + path counting over all pairs.
/// Matches the contract of betweenness_centrality (pair-normalized, inverse
/// weight transform when weighted).
std::vector<double> betweenness(const WeightedGraph& g, bool weighted);

/// Connected components via repeated transitive closure over a boolean
/// reachability matrix.
ComponentPartition components(const WeightedGraph& g);

/// Katz centrality by dense Gaussian elimination on (I - alpha A) x = beta 1.
std::vector<double> katz(const WeightedGraph& g, bool weighted, double alpha, double beta);

/// Average local clustering coefficient by explicit triangle enumeration.
double clustering_coefficient(const WeightedGraph& g);

/// Average shortest path length over reachable pairs, via Floyd-Warshall.
double average_path_length(const WeightedGraph& g);

/// Exhaustively enumerates all C(|V|, budget) removal sets and returns the
/// best by weighted sum (ties: lexicographically smallest node set). Only
/// sane for tiny graphs; used to certify GA optima.
struct ExhaustiveBest {
    std::vector<NodeId> nodes;
    ObjectiveVector objectives{};
};
ExhaustiveBest exhaustive_best_removal(const Evaluator& eval, int budget, double w_rho,
                                       double w_spatial);

/// All non-dominated objective vectors (maximize both), by pairwise scan.
std::vector<std::size_t> pareto_filter(std::span<const ObjectiveVector> objs);

/// Non-dominated sorting by repeated extraction of the current pareto set.
std::vector<std::vector<std::size_t>> nondominated_sort(std::span<const ObjectiveVector> objs);

}  // namespace netdisrupt::reference
