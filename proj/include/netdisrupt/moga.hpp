#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "netdisrupt/objectives.hpp"
#include "netdisrupt/rng.hpp"

namespace netdisrupt {

/// Value-encoded genome: an ordered list of distinct node ids. Order is
/// genotypic only; the phenotype is the set.
struct Genome {
    std::vector<NodeId> genes;

    std::size_t size() const { return genes.size(); }
    std::vector<NodeId> sorted_set() const;
};

struct GaConfig {
    int generations = 500;
    int population_size = 500;
    int num_parents = 250;       // mating pool size; offspring are selected from it
    int tournament_size = 2;
    double crossover_prob = 0.9;
    double mutation_prob = 0.1;      // per-genome scramble probability
    double gene_replace_prob = 0.1;  // per-gene replacement inside a scrambled slice
    double w_rho = 0.5;
    double w_spatial = 0.5;
    std::uint64_t seed = 0;

    /// Throws ConfigError on violations (weights must be >= 0 and sum to 1).
    void validate() const;
};

struct RankedIndividual {
    Genome genome;
    ObjectiveVector objectives;
    int front = 0;              // 0 = first front
    double crowding = 0.0;      // may be +infinity
    int domination_count = 0;   // individuals dominating this one
};

/// One history row per generation; serialized to the run history CSV.
struct GenerationStats {
    int generation = 0;
    double best_f_rho = 0.0;
    double mean_f_rho = 0.0;
    double best_f_spatial = 0.0;
    double mean_f_spatial = 0.0;
    double best_weighted = 0.0;
    std::size_t front0_size = 0;  // 0 for WS-GA rows
};

struct WsgaResult {
    Genome best_genome;
    ObjectiveVector best_objectives;
    std::vector<GenerationStats> history;
};

struct Nsga2Result {
    std::vector<RankedIndividual> front;  // final first front, deduplicated by objectives
    std::size_t representative = 0;       // front index maximizing the configured weighted sum
    std::vector<GenerationStats> history;
};

std::vector<Genome> init_population(std::size_t budget, std::size_t size,
                                    std::span<const NodeId> universe, Rng& rng);

/// Segment swap between two cut points, then left-to-right repair of
/// duplicates with uniform random nodes outside the genome.
std::pair<Genome, Genome> two_point_crossover(const Genome& a, const Genome& b,
                                              std::span<const NodeId> universe, Rng& rng);

/// With probability p, shuffle a random contiguous slice and replace each
/// slice gene with probability p_gene by a random node outside the genome.
/// Pure in-place scrambling is phenotypically a no-op for set genomes, so the
/// replacement step is what makes mutation able to reach unseen nodes.
Genome scramble_mutation(const Genome& g, double p, double p_gene,
                         std::span<const NodeId> universe, Rng& rng);

/// Tournament over `k` distinct entrants drawn from pool; `better(a, b)` says
/// a strictly beats b. Ties resolve to the earliest-drawn entrant.
template <typename Better>
std::size_t tournament_select(std::span<const std::size_t> pool, int k, Rng& rng,
                              Better&& better) {
    auto picks = rng.sample_indices(pool.size(), static_cast<std::size_t>(k));
    std::size_t winner = pool[picks[0]];
    for (std::size_t j = 1; j < picks.size(); ++j) {
        std::size_t challenger = pool[picks[j]];
        if (better(challenger, winner)) winner = challenger;
    }
    return winner;
}

double weighted_sum_fitness(const ObjectiveVector& obj, double w_rho, double w_spatial);

/// a dominates b under maximization of (f_rho, f_spatial).
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Deb's fast non-dominated sort; returns fronts of indices, best first.
/// Throws ComputeError on non-finite objectives.
std::vector<std::vector<std::size_t>> fast_nondominated_sort(std::span<const ObjectiveVector> objs);

/// Crowding distances aligned with `front` order. Fronts of <= 2 members are
/// all boundary (+infinity); an objective with zero range contributes nothing.
std::vector<double> crowding_distance(std::span<const ObjectiveVector> objs,
                                      std::span<const std::size_t> front);

WsgaResult run_wsga(const Evaluator& eval, std::size_t budget, const GaConfig& config);
Nsga2Result run_nsga2(const Evaluator& eval, std::size_t budget, const GaConfig& config);

void save_history(std::span<const GenerationStats> history, const std::filesystem::path& path);

}  // namespace netdisrupt
