#include "netdisrupt/moga.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "netdisrupt/errors.hpp"

namespace netdisrupt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return {buf, ptr};
}

// Universe members not currently in the genome, in universe order. Shared by
// crossover repair and mutation replacement.
std::vector<NodeId> available_pool(const std::vector<NodeId>& genes,
                                   std::span<const NodeId> universe) {
    std::vector<char> member;
    NodeId max_id = 0;
    for (NodeId v : universe) max_id = std::max(max_id, v);
    member.assign(static_cast<std::size_t>(max_id) + 1, 0);
    for (NodeId v : genes) {
        if (v <= max_id) member[v] = 1;
    }
    std::vector<NodeId> pool;
    pool.reserve(universe.size() - genes.size());
    for (NodeId v : universe) {
        if (!member[v]) pool.push_back(v);
    }
    return pool;
}

}  // namespace

std::vector<NodeId> Genome::sorted_set() const {
    std::vector<NodeId> s = genes;
    std::sort(s.begin(), s.end());
    return s;
}

void GaConfig::validate() const {
    if (generations < 1) throw ConfigError("generations must be >= 1");
    if (population_size < 1) throw ConfigError("population size must be >= 1");
    if (num_parents < 1 || num_parents > population_size)
        throw ConfigError("num_parents must be in [1, population_size]");
    if (tournament_size < 1 || tournament_size > population_size)
        throw ConfigError("tournament size must be in [1, population_size]");
    auto prob = [](double p, const char* name) {
        if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(std::string(name) + " must be in [0, 1]");
    };
    prob(crossover_prob, "crossover probability");
    prob(mutation_prob, "mutation probability");
    prob(gene_replace_prob, "gene replacement probability");
    if (w_rho < 0.0 || w_spatial < 0.0) throw ConfigError("objective weights must be >= 0");
    if (std::abs(w_rho + w_spatial - 1.0) > 1e-9)
        throw ConfigError("objective weights must sum to 1");
}

std::vector<Genome> init_population(std::size_t budget, std::size_t size,
                                    std::span<const NodeId> universe, Rng& rng) {
    if (budget < 1) throw ConfigError("removal budget must be >= 1");
    if (budget > universe.size())
        throw ConfigError("removal budget " + std::to_string(budget) + " exceeds the " +
                          std::to_string(universe.size()) + " available nodes");
    std::vector<Genome> pop(size);
    for (auto& g : pop) {
        auto picks = rng.sample_indices(universe.size(), budget);
        g.genes.reserve(budget);
        for (std::size_t idx : picks) g.genes.push_back(universe[idx]);
    }
    return pop;
}

std::pair<Genome, Genome> two_point_crossover(const Genome& a, const Genome& b,
                                              std::span<const NodeId> universe, Rng& rng) {
    if (a.size() != b.size()) throw ConfigError("crossover parents must have equal length");
    const std::size_t len = a.size();
    std::size_t c1 = rng.index(len + 1);
    std::size_t c2 = rng.index(len + 1);
    if (c1 > c2) std::swap(c1, c2);

    auto compose = [&](const Genome& keep, const Genome& swap_in) {
        Genome child = keep;
        for (std::size_t i = c1; i < c2; ++i) child.genes[i] = swap_in.genes[i];
        return child;
    };
    auto repair = [&](Genome& child) {
        std::vector<NodeId> pool = available_pool(child.genes, universe);
        NodeId max_id = 0;
        for (NodeId v : universe) max_id = std::max(max_id, v);
        std::vector<char> seen(static_cast<std::size_t>(max_id) + 1, 0);
        for (NodeId& gene : child.genes) {
            if (!seen[gene]) {
                seen[gene] = 1;
                continue;
            }
            // Duplicate introduced by the swap: substitute a fresh node.
            const std::size_t j = rng.index(pool.size());
            gene = pool[j];
            pool[j] = pool.back();
            pool.pop_back();
            seen[gene] = 1;
        }
    };

    Genome ca = compose(a, b);
    Genome cb = compose(b, a);
    repair(ca);
    repair(cb);
    return {std::move(ca), std::move(cb)};
}

Genome scramble_mutation(const Genome& g, double p, double p_gene,
                         std::span<const NodeId> universe, Rng& rng) {
    Genome out = g;
    const std::size_t len = out.size();
    if (len == 0 || !rng.chance(p)) return out;
    std::size_t i = rng.index(len);
    std::size_t j = rng.index(len);
    if (i > j) std::swap(i, j);
    rng.shuffle(std::span<NodeId>(out.genes.data() + i, j - i + 1));

    std::vector<NodeId> pool = available_pool(out.genes, universe);
    if (pool.empty()) return out;  // budget == |V|: nothing to introduce
    for (std::size_t k = i; k <= j && !pool.empty(); ++k) {
        if (!rng.chance(p_gene)) continue;
        const std::size_t pick = rng.index(pool.size());
        out.genes[k] = pool[pick];
        pool[pick] = pool.back();
        pool.pop_back();
    }
    return out;
}

double weighted_sum_fitness(const ObjectiveVector& obj, double w_rho, double w_spatial) {
    return w_rho * obj.f_rho + w_spatial * obj.f_spatial;
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    return a.f_rho >= b.f_rho && a.f_spatial >= b.f_spatial &&
           (a.f_rho > b.f_rho || a.f_spatial > b.f_spatial);
}

std::vector<std::vector<std::size_t>> fast_nondominated_sort(
    std::span<const ObjectiveVector> objs) {
    const std::size_t n = objs.size();
    for (const auto& o : objs) {
        if (!std::isfinite(o.f_rho) || !std::isfinite(o.f_spatial))
            throw ComputeError("non-finite objective value in population");
    }
    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<std::size_t> count(n, 0);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            if (dominates(objs[p], objs[q])) {
                dominated[p].push_back(q);
                ++count[q];
            } else if (dominates(objs[q], objs[p])) {
                dominated[q].push_back(p);
                ++count[p];
            }
        }
    }
    std::vector<std::vector<std::size_t>> fronts;
    std::vector<std::size_t> current;
    for (std::size_t p = 0; p < n; ++p) {
        if (count[p] == 0) current.push_back(p);
    }
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t p : current) {
            for (std::size_t q : dominated[p]) {
                if (--count[q] == 0) next.push_back(q);
            }
        }
        fronts.push_back(std::move(current));
        std::sort(next.begin(), next.end());
        current = std::move(next);
    }
    return fronts;
}

std::vector<double> crowding_distance(std::span<const ObjectiveVector> objs,
                                      std::span<const std::size_t> front) {
    const std::size_t m = front.size();
    std::vector<double> dist(m, 0.0);
    if (m <= 2) {
        std::fill(dist.begin(), dist.end(), kInf);
        return dist;
    }
    auto accumulate = [&](auto getter) {
        std::vector<std::size_t> order(m);
        for (std::size_t i = 0; i < m; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const double va = getter(objs[front[a]]);
            const double vb = getter(objs[front[b]]);
            return va != vb ? va < vb : a < b;
        });
        const double vmin = getter(objs[front[order.front()]]);
        const double vmax = getter(objs[front[order.back()]]);
        if (vmax == vmin) return;  // degenerate objective contributes nothing
        dist[order.front()] = kInf;
        dist[order.back()] = kInf;
        const double range = vmax - vmin;
        for (std::size_t i = 1; i + 1 < m; ++i) {
            if (dist[order[i]] == kInf) continue;
            dist[order[i]] +=
                (getter(objs[front[order[i + 1]]]) - getter(objs[front[order[i - 1]]])) / range;
        }
    };
    accumulate([](const ObjectiveVector& o) { return o.f_rho; });
    accumulate([](const ObjectiveVector& o) { return o.f_spatial; });
    return dist;
}

namespace {

struct EvaluatedPop {
    std::vector<Genome> genomes;
    std::vector<ObjectiveVector> objs;
};

void evaluate_all(const Evaluator& eval, const std::vector<Genome>& genomes,
                  std::vector<ObjectiveVector>& objs) {
    objs.resize(genomes.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(genomes.size()); ++i) {
        objs[i] = eval.evaluate(genomes[i].genes);
    }
}

GenerationStats stats_row(int generation, const std::vector<ObjectiveVector>& objs, double w_rho,
                          double w_spatial, std::size_t front0) {
    GenerationStats s;
    s.generation = generation;
    s.best_f_rho = -kInf;
    s.best_f_spatial = -kInf;
    s.best_weighted = -kInf;
    double sum_rho = 0.0, sum_spatial = 0.0;
    for (const auto& o : objs) {
        s.best_f_rho = std::max(s.best_f_rho, o.f_rho);
        s.best_f_spatial = std::max(s.best_f_spatial, o.f_spatial);
        s.best_weighted = std::max(s.best_weighted, weighted_sum_fitness(o, w_rho, w_spatial));
        sum_rho += o.f_rho;
        sum_spatial += o.f_spatial;
    }
    s.mean_f_rho = sum_rho / static_cast<double>(objs.size());
    s.mean_f_spatial = sum_spatial / static_cast<double>(objs.size());
    s.front0_size = front0;
    return s;
}

// Forced instance: budget == |V| leaves a single possible genome.
bool forced_instance(std::span<const NodeId> universe, std::size_t budget, Genome& out) {
    if (budget != universe.size()) return false;
    out.genes.assign(universe.begin(), universe.end());
    return true;
}

template <typename Better>
std::vector<std::size_t> build_mating_pool(std::size_t pop_size, int num_parents, int k, Rng& rng,
                                           Better&& better) {
    std::vector<std::size_t> all(pop_size);
    for (std::size_t i = 0; i < pop_size; ++i) all[i] = i;
    std::vector<std::size_t> pool(static_cast<std::size_t>(num_parents));
    for (auto& slot : pool) slot = tournament_select(std::span<const std::size_t>(all), k, rng, better);
    return pool;
}

}  // namespace

WsgaResult run_wsga(const Evaluator& eval, std::size_t budget, const GaConfig& config) {
    config.validate();
    auto universe = eval.graph().nodes();
    Rng rng(config.seed);

    WsgaResult result;
    Genome forced;
    if (forced_instance(universe, budget, forced)) {
        result.best_genome = forced;
        result.best_objectives = eval.evaluate(forced.genes);
        result.history.push_back(stats_row(0, {result.best_objectives}, config.w_rho,
                                           config.w_spatial, 0));
        return result;
    }

    const auto n = static_cast<std::size_t>(config.population_size);
    EvaluatedPop pop;
    pop.genomes = init_population(budget, n, universe, rng);
    evaluate_all(eval, pop.genomes, pop.objs);

    auto fitness = [&](const ObjectiveVector& o) {
        return weighted_sum_fitness(o, config.w_rho, config.w_spatial);
    };
    result.history.push_back(stats_row(0, pop.objs, config.w_rho, config.w_spatial, 0));

    std::vector<double> f(n);
    for (int gen = 1; gen <= config.generations; ++gen) {
        for (std::size_t i = 0; i < n; ++i) f[i] = fitness(pop.objs[i]);
        auto better = [&](std::size_t a, std::size_t b) { return f[a] > f[b]; };
        auto pool = build_mating_pool(n, config.num_parents, config.tournament_size, rng, better);

        std::size_t elite = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (f[i] > f[elite]) elite = i;
        }

        EvaluatedPop next;
        next.genomes.reserve(n);
        next.genomes.push_back(pop.genomes[elite]);
        while (next.genomes.size() < n) {
            const Genome& pa = pop.genomes[pool[rng.index(pool.size())]];
            const Genome& pb = pop.genomes[pool[rng.index(pool.size())]];
            Genome ca = pa, cb = pb;
            if (rng.chance(config.crossover_prob))
                std::tie(ca, cb) = two_point_crossover(pa, pb, universe, rng);
            next.genomes.push_back(
                scramble_mutation(ca, config.mutation_prob, config.gene_replace_prob, universe, rng));
            if (next.genomes.size() < n)
                next.genomes.push_back(scramble_mutation(cb, config.mutation_prob,
                                                         config.gene_replace_prob, universe, rng));
        }
        evaluate_all(eval, next.genomes, next.objs);
        pop = std::move(next);
        result.history.push_back(stats_row(gen, pop.objs, config.w_rho, config.w_spatial, 0));
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (fitness(pop.objs[i]) > fitness(pop.objs[best])) best = i;
    }
    result.best_genome = pop.genomes[best];
    result.best_objectives = pop.objs[best];
    return result;
}

Nsga2Result run_nsga2(const Evaluator& eval, std::size_t budget, const GaConfig& config) {
    config.validate();
    auto universe = eval.graph().nodes();
    Rng rng(config.seed);

    Nsga2Result result;
    Genome forced;
    if (forced_instance(universe, budget, forced)) {
        RankedIndividual ind;
        ind.genome = forced;
        ind.objectives = eval.evaluate(forced.genes);
        ind.crowding = kInf;
        result.front.push_back(std::move(ind));
        result.representative = 0;
        result.history.push_back(stats_row(0, {result.front[0].objectives}, config.w_rho,
                                           config.w_spatial, 1));
        return result;
    }

    const auto n = static_cast<std::size_t>(config.population_size);
    EvaluatedPop pop;
    pop.genomes = init_population(budget, n, universe, rng);
    evaluate_all(eval, pop.genomes, pop.objs);

    // Rank and crowding for the current population, aligned by index.
    std::vector<int> rank(n, 0);
    std::vector<double> crowd(n, 0.0);
    std::vector<std::vector<std::size_t>> fronts;
    auto rank_population = [&]() {
        fronts = fast_nondominated_sort(pop.objs);
        rank.assign(n, 0);
        crowd.assign(n, 0.0);
        for (std::size_t fi = 0; fi < fronts.size(); ++fi) {
            auto cd = crowding_distance(pop.objs, fronts[fi]);
            for (std::size_t k = 0; k < fronts[fi].size(); ++k) {
                rank[fronts[fi][k]] = static_cast<int>(fi);
                crowd[fronts[fi][k]] = cd[k];
            }
        }
    };
    rank_population();
    result.history.push_back(
        stats_row(0, pop.objs, config.w_rho, config.w_spatial, fronts[0].size()));

    for (int gen = 1; gen <= config.generations; ++gen) {
        // Crowded-comparison tournament fills the mating pool.
        auto better = [&](std::size_t a, std::size_t b) {
            if (rank[a] != rank[b]) return rank[a] < rank[b];
            return crowd[a] > crowd[b];
        };
        auto pool = build_mating_pool(n, config.num_parents, config.tournament_size, rng, better);

        std::vector<Genome> offspring;
        offspring.reserve(n);
        while (offspring.size() < n) {
            const Genome& pa = pop.genomes[pool[rng.index(pool.size())]];
            const Genome& pb = pop.genomes[pool[rng.index(pool.size())]];
            Genome ca = pa, cb = pb;
            if (rng.chance(config.crossover_prob))
                std::tie(ca, cb) = two_point_crossover(pa, pb, universe, rng);
            offspring.push_back(
                scramble_mutation(ca, config.mutation_prob, config.gene_replace_prob, universe, rng));
            if (offspring.size() < n)
                offspring.push_back(scramble_mutation(cb, config.mutation_prob,
                                                      config.gene_replace_prob, universe, rng));
        }
        std::vector<ObjectiveVector> off_objs;
        evaluate_all(eval, offspring, off_objs);

        // mu+lambda: combine, re-sort, refill by whole fronts, truncate the
        // last front by crowding distance.
        std::vector<Genome> combined = std::move(pop.genomes);
        combined.insert(combined.end(), std::make_move_iterator(offspring.begin()),
                        std::make_move_iterator(offspring.end()));
        std::vector<ObjectiveVector> combined_objs = std::move(pop.objs);
        combined_objs.insert(combined_objs.end(), off_objs.begin(), off_objs.end());

        auto combined_fronts = fast_nondominated_sort(combined_objs);
        EvaluatedPop next;
        next.genomes.reserve(n);
        next.objs.reserve(n);
        for (const auto& front : combined_fronts) {
            if (next.genomes.size() == n) break;
            if (next.genomes.size() + front.size() <= n) {
                for (std::size_t idx : front) {
                    next.genomes.push_back(std::move(combined[idx]));
                    next.objs.push_back(combined_objs[idx]);
                }
                continue;
            }
            auto cd = crowding_distance(combined_objs, front);
            std::vector<std::size_t> order(front.size());
            for (std::size_t k = 0; k < front.size(); ++k) order[k] = k;
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return cd[a] != cd[b] ? cd[a] > cd[b] : front[a] < front[b];
            });
            for (std::size_t k = 0; next.genomes.size() < n; ++k) {
                next.genomes.push_back(std::move(combined[front[order[k]]]));
                next.objs.push_back(combined_objs[front[order[k]]]);
            }
            break;
        }
        pop = std::move(next);
        rank_population();
        result.history.push_back(
            stats_row(gen, pop.objs, config.w_rho, config.w_spatial, fronts[0].size()));
    }

    // Final front, deduplicated by objective vector; canonical order is by
    // descending f_rho so reports are stable.
    std::vector<std::size_t> final_front = fronts[0];
    std::sort(final_front.begin(), final_front.end(), [&](std::size_t a, std::size_t b) {
        const auto& oa = pop.objs[a];
        const auto& ob = pop.objs[b];
        if (oa.f_rho != ob.f_rho) return oa.f_rho > ob.f_rho;
        if (oa.f_spatial != ob.f_spatial) return oa.f_spatial > ob.f_spatial;
        return pop.genomes[a].sorted_set() < pop.genomes[b].sorted_set();
    });
    std::vector<std::size_t> kept;
    for (std::size_t idx : final_front) {
        if (!kept.empty()) {
            const auto& prev = pop.objs[kept.back()];
            const auto& cur = pop.objs[idx];
            if (prev.f_rho == cur.f_rho && prev.f_spatial == cur.f_spatial) continue;
        }
        kept.push_back(idx);
    }
    auto cd = crowding_distance(pop.objs, kept);
    for (std::size_t k = 0; k < kept.size(); ++k) {
        RankedIndividual ind;
        ind.genome = pop.genomes[kept[k]];
        ind.objectives = pop.objs[kept[k]];
        ind.front = 0;
        ind.crowding = cd[k];
        ind.domination_count = 0;
        result.front.push_back(std::move(ind));
    }
    result.representative = 0;
    for (std::size_t k = 1; k < result.front.size(); ++k) {
        const double cur = weighted_sum_fitness(result.front[k].objectives, config.w_rho,
                                                config.w_spatial);
        const double best = weighted_sum_fitness(result.front[result.representative].objectives,
                                                 config.w_rho, config.w_spatial);
        if (cur > best) result.representative = k;
    }
    return result;
}

void save_history(std::span<const GenerationStats> history, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write history file '" + path.string() + "'");
    out << "generation,best_f_rho,mean_f_rho,best_f_spatial,mean_f_spatial,best_weighted,front0_size\n";
    for (const auto& row : history) {
        out << row.generation << ',' << format_double(row.best_f_rho) << ','
            << format_double(row.mean_f_rho) << ',' << format_double(row.best_f_spatial) << ','
            << format_double(row.mean_f_spatial) << ',' << format_double(row.best_weighted) << ','
            << row.front0_size << "\n";
    }
    if (!out) throw ParseError("write failed for history file '" + path.string() + "'");
}

}  // namespace netdisrupt
