#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <vector>

#include "netdisrupt/errors.hpp"
#include "netdisrupt/moga.hpp"
#include "netdisrupt/reference.hpp"
#include "netdisrupt/rng.hpp"

using namespace netdisrupt;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ObjectiveVector obj(double f_rho, double f_spatial) {
    ObjectiveVector o;
    o.f_rho = f_rho;
    o.f_spatial = f_spatial;
    o.rho = 1.0 - f_rho;
    o.D = 1.0 - f_spatial;
    return o;
}

std::vector<NodeId> universe_of(std::size_t n) {
    std::vector<NodeId> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = static_cast<NodeId>(i);
    return u;
}

// A genome is well-formed iff its genes are distinct members of the universe.
void require_valid(const Genome& g, std::size_t budget, std::span<const NodeId> universe) {
    REQUIRE(g.size() == budget);
    std::set<NodeId> seen(g.genes.begin(), g.genes.end());
    REQUIRE(seen.size() == budget);
    for (NodeId v : g.genes)
        REQUIRE(std::find(universe.begin(), universe.end(), v) != universe.end());
}

struct Instance {
    WeightedGraph graph;
    SpatialLayout layout;
};

Instance small_instance(std::uint64_t seed, std::size_t n = 12) {
    Rng rng(seed);
    std::vector<Edge> edges;
    for (NodeId u = 0; u + 1 < n; ++u) edges.push_back({u, static_cast<NodeId>(u + 1), 1.0});
    for (int extra = 0; extra < static_cast<int>(n); ++extra) {
        const auto u = static_cast<NodeId>(rng.index(n));
        const auto v = static_cast<NodeId>(rng.index(n));
        if (u == v) continue;
        const auto [lo, hi] = std::minmax(u, v);
        bool dup = false;
        for (const Edge& e : edges) dup = dup || (e.u == lo && e.v == hi);
        if (!dup) edges.push_back({lo, hi, 1.0});
    }
    WeightedGraph g(n, std::move(edges));
    SpatialLayout layout = generate_layout(n, 1000.0, 1000.0, 2, seed ^ 0xabcdef);
    return {std::move(g), std::move(layout)};
}

}  // namespace

TEST_CASE("GaConfig::validate rejects bad settings") {
    GaConfig ok;
    CHECK_NOTHROW(ok.validate());

    GaConfig c = ok;
    c.generations = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = ok;
    c.population_size = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = ok;
    c.num_parents = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = ok;
    c.num_parents = c.population_size + 1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = ok;
    c.tournament_size = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = ok;
    c.crossover_prob = 1.5;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = ok;
    c.mutation_prob = -0.1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = ok;
    c.w_rho = 0.9;  // no longer sums to 1 with w_spatial = 0.5
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = ok;
    c.w_rho = -0.2;
    c.w_spatial = 1.2;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = ok;
    c.w_rho = 1.0;
    c.w_spatial = 0.0;
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("init_population builds valid deterministic genomes") {
    auto universe = universe_of(20);
    Rng a(5), b(5), c(6);
    auto pa = init_population(4, 30, universe, a);
    auto pb = init_population(4, 30, universe, b);
    auto pc = init_population(4, 30, universe, c);
    REQUIRE(pa.size() == 30);
    for (const Genome& g : pa) require_valid(g, 4, universe);

    bool identical = true, differs = false;
    for (std::size_t i = 0; i < 30; ++i) {
        identical = identical && pa[i].genes == pb[i].genes;
        differs = differs || pa[i].genes != pc[i].genes;
    }
    CHECK(identical);
    CHECK(differs);

    Rng r(1);
    CHECK_THROWS_AS(init_population(0, 5, universe, r), ConfigError);
    CHECK_THROWS_AS(init_population(21, 5, universe, r), ConfigError);
    CHECK_NOTHROW(init_population(20, 5, universe, r));  // budget == |V| is legal
}

TEST_CASE("two_point_crossover children stay valid under fuzzing") {
    auto universe = universe_of(30);
    Rng rng(42);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t budget = 1 + rng.index(10);
        auto pop = init_population(budget, 2, universe, rng);
        auto [c1, c2] = two_point_crossover(pop[0], pop[1], universe, rng);
        require_valid(c1, budget, universe);
        require_valid(c2, budget, universe);
    }
}

TEST_CASE("crossover with identical cut points copies the parents") {
    auto universe = universe_of(8);
    Genome a{{0, 1, 2}}, b{{5, 6, 7}};
    // Over many draws, some crossovers must reproduce parents exactly (the
    // cut points coincide) and some must mix genes.
    Rng rng(9);
    bool copied = false, mixed = false;
    for (int i = 0; i < 500; ++i) {
        auto [c1, c2] = two_point_crossover(a, b, universe, rng);
        if (c1.genes == a.genes && c2.genes == b.genes) copied = true;
        bool has_b = false;
        for (NodeId v : c1.genes) has_b = has_b || v >= 5;
        if (has_b) mixed = true;
    }
    CHECK(copied);
    CHECK(mixed);
}

TEST_CASE("crossover repairs overlapping parents without duplicates") {
    auto universe = universe_of(6);
    // Heavy overlap: any naive segment swap would duplicate genes.
    Genome a{{0, 1, 2, 3}}, b{{1, 2, 3, 4}};
    Rng rng(77);
    for (int trial = 0; trial < 2000; ++trial) {
        auto [c1, c2] = two_point_crossover(a, b, universe, rng);
        require_valid(c1, 4, universe);
        require_valid(c2, 4, universe);
    }
}

TEST_CASE("crossover requires equal-length parents") {
    auto universe = universe_of(6);
    Genome a{{0, 1}}, b{{2, 3, 4}};
    Rng rng(1);
    CHECK_THROWS_AS(two_point_crossover(a, b, universe, rng), ConfigError);
}

TEST_CASE("scramble_mutation respects probabilities and stays valid") {
    auto universe = universe_of(25);
    Rng rng(11);

    // p = 0: identity.
    Genome g{{3, 7, 9, 12}};
    for (int i = 0; i < 100; ++i) {
        Genome m = scramble_mutation(g, 0.0, 0.5, universe, rng);
        CHECK(m.genes == g.genes);
    }

    // p = 1 with replacement: stays valid, eventually reaches outside nodes.
    bool reached_outside = false;
    for (int i = 0; i < 2000; ++i) {
        Genome m = scramble_mutation(g, 1.0, 0.5, universe, rng);
        require_valid(m, 4, universe);
        for (NodeId v : m.genes)
            reached_outside = reached_outside || (v != 3 && v != 7 && v != 9 && v != 12);
    }
    CHECK(reached_outside);
}

TEST_CASE("scramble_mutation with the full universe keeps the set unchanged") {
    // budget == |V|: there is nothing outside the genome to swap in.
    auto universe = universe_of(5);
    Genome g{{0, 1, 2, 3, 4}};
    Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        Genome m = scramble_mutation(g, 1.0, 1.0, universe, rng);
        CHECK(m.sorted_set() == g.sorted_set());  // order may differ, set may not
    }
}

TEST_CASE("mutation fuzzing never produces an invalid genome") {
    auto universe = universe_of(40);
    Rng rng(17);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t budget = 1 + rng.index(12);
        auto pop = init_population(budget, 1, universe, rng);
        Genome m = scramble_mutation(pop[0], rng.uniform(), rng.uniform(), universe, rng);
        require_valid(m, budget, universe);
    }
}

TEST_CASE("weighted_sum_fitness combines both objectives") {
    ObjectiveVector o = obj(0.8, 0.4);
    CHECK(weighted_sum_fitness(o, 0.5, 0.5) == doctest::Approx(0.6));
    CHECK(weighted_sum_fitness(o, 1.0, 0.0) == doctest::Approx(0.8));
    CHECK(weighted_sum_fitness(o, 0.0, 1.0) == doctest::Approx(0.4));
}

TEST_CASE("dominates implements strict pareto dominance") {
    CHECK(dominates(obj(0.5, 0.5), obj(0.4, 0.4)));
    CHECK(dominates(obj(0.5, 0.4), obj(0.4, 0.4)));   // equal on one, better on other
    CHECK(dominates(obj(0.4, 0.5), obj(0.4, 0.4)));
    CHECK_FALSE(dominates(obj(0.4, 0.4), obj(0.4, 0.4)));  // equality never dominates
    CHECK_FALSE(dominates(obj(0.6, 0.3), obj(0.4, 0.4)));  // trade-off
    CHECK_FALSE(dominates(obj(0.3, 0.6), obj(0.4, 0.4)));
}

TEST_CASE("dominance is a strict partial order on random vectors") {
    Rng rng(23);
    for (int trial = 0; trial < 3000; ++trial) {
        auto a = obj(rng.uniform(), rng.uniform());
        auto b = obj(rng.uniform(), rng.uniform());
        auto c = obj(rng.uniform(), rng.uniform());
        CHECK_FALSE(dominates(a, a));                          // irreflexive
        if (dominates(a, b)) CHECK_FALSE(dominates(b, a));     // asymmetric
        if (dominates(a, b) && dominates(b, c)) CHECK(dominates(a, c));  // transitive
    }
}

TEST_CASE("fast_nondominated_sort matches the naive reference on random populations") {
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.index(64);
        std::vector<ObjectiveVector> objs;
        for (std::size_t i = 0; i < n; ++i) {
            // Quantized values force plenty of exact ties and duplicates.
            const double fr = static_cast<double>(rng.index(5)) / 4.0;
            const double fs = static_cast<double>(rng.index(5)) / 4.0;
            objs.push_back(obj(fr, fs));
        }
        auto fast = fast_nondominated_sort(objs);
        auto slow = reference::nondominated_sort(objs);
        REQUIRE(fast.size() == slow.size());
        for (std::size_t f = 0; f < fast.size(); ++f) {
            std::vector<std::size_t> a = fast[f], b = slow[f];
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            REQUIRE(a == b);
        }
    }
}

TEST_CASE("fast_nondominated_sort fronts are internally non-dominated and ordered") {
    Rng rng(37);
    std::vector<ObjectiveVector> objs;
    for (int i = 0; i < 50; ++i) objs.push_back(obj(rng.uniform(), rng.uniform()));
    auto fronts = fast_nondominated_sort(objs);

    std::size_t total = 0;
    for (std::size_t f = 0; f < fronts.size(); ++f) {
        total += fronts[f].size();
        for (std::size_t i : fronts[f])
            for (std::size_t j : fronts[f]) CHECK_FALSE(dominates(objs[i], objs[j]));
        // Every member of front f+1 is dominated by someone in front f.
        if (f + 1 < fronts.size()) {
            for (std::size_t j : fronts[f + 1]) {
                bool dominated = false;
                for (std::size_t i : fronts[f]) dominated = dominated || dominates(objs[i], objs[j]);
                CHECK(dominated);
            }
        }
    }
    CHECK(total == objs.size());
}

TEST_CASE("fast_nondominated_sort rejects non-finite objectives") {
    std::vector<ObjectiveVector> objs{obj(0.1, 0.2), obj(std::nan(""), 0.5)};
    CHECK_THROWS_AS(fast_nondominated_sort(objs), ComputeError);
}

TEST_CASE("crowding distance: the classic middle-point fixture") {
    std::vector<ObjectiveVector> objs{obj(0.0, 1.0), obj(0.5, 0.5), obj(1.0, 0.0)};
    std::vector<std::size_t> front{0, 1, 2};
    auto cd = crowding_distance(objs, front);
    CHECK(cd[0] == kInf);
    CHECK(cd[2] == kInf);
    CHECK(cd[1] == doctest::Approx(2.0));  // (1-0)/1 from each objective
}

TEST_CASE("crowding distance edge cases") {
    // Fronts of one or two members are entirely boundary.
    std::vector<ObjectiveVector> two{obj(0.1, 0.9), obj(0.9, 0.1)};
    std::vector<std::size_t> front2{0, 1};
    auto cd2 = crowding_distance(two, front2);
    CHECK(cd2[0] == kInf);
    CHECK(cd2[1] == kInf);

    // Zero-range objective contributes nothing instead of NaN.
    std::vector<ObjectiveVector> flat{obj(0.0, 0.5), obj(0.5, 0.5), obj(1.0, 0.5)};
    std::vector<std::size_t> front3{0, 1, 2};
    auto cd3 = crowding_distance(flat, front3);
    CHECK(cd3[0] == kInf);
    CHECK(cd3[2] == kInf);
    CHECK(cd3[1] == doctest::Approx(1.0));  // only f_rho contributes

    // All identical: no objective has range; interior distances are zero.
    std::vector<ObjectiveVector> same{obj(0.5, 0.5), obj(0.5, 0.5), obj(0.5, 0.5)};
    auto cd4 = crowding_distance(same, front3);
    CHECK(std::isfinite(cd4[1]));
    CHECK(cd4[1] == doctest::Approx(0.0));
}

TEST_CASE("tournament_select prefers better entrants and breaks ties early") {
    std::vector<double> score{0.1, 0.9, 0.5, 0.9};
    std::vector<std::size_t> pool{0, 1, 2, 3};
    auto better = [&](std::size_t a, std::size_t b) { return score[a] > score[b]; };
    Rng rng(3);
    // Full-pool tournament always returns an argmax (0.9 at index 1 or 3).
    for (int i = 0; i < 200; ++i) {
        const std::size_t w = tournament_select(std::span<const std::size_t>(pool), 4, rng, better);
        CHECK((w == 1 || w == 3));
    }
    // k = 1 is a uniform draw; every index must appear eventually.
    std::set<std::size_t> seen;
    for (int i = 0; i < 400; ++i)
        seen.insert(tournament_select(std::span<const std::size_t>(pool), 1, rng, better));
    CHECK(seen.size() == 4);
}

TEST_CASE("run_wsga finds the planted bridge and is deterministic") {
    // Two cliques joined by a single bridge node 4: removing it at budget 1
    // is the unique optimum for f_rho.
    std::vector<Edge> edges;
    for (NodeId u = 0; u < 4; ++u)
        for (NodeId v = u + 1; v < 4; ++v) edges.push_back({u, v, 1.0});
    for (NodeId u = 5; u < 9; ++u)
        for (NodeId v = u + 1; v < 9; ++v) edges.push_back({u, v, 1.0});
    edges.push_back({3, 4, 1.0});
    edges.push_back({4, 5, 1.0});
    WeightedGraph g(9, std::move(edges));
    SpatialLayout layout = generate_layout(9, 100.0, 100.0, 1, 4);
    Evaluator eval(g, layout);

    GaConfig cfg;
    cfg.generations = 30;
    cfg.population_size = 24;
    cfg.num_parents = 12;
    cfg.w_rho = 1.0;
    cfg.w_spatial = 0.0;
    cfg.seed = 21;
    auto res = run_wsga(eval, 1, cfg);
    REQUIRE(res.best_genome.genes.size() == 1);
    CHECK(res.best_genome.genes[0] == 4);
    CHECK(res.best_objectives.rho == doctest::Approx(4.0 / 9.0).epsilon(1e-12));

    auto res2 = run_wsga(eval, 1, cfg);
    CHECK(res2.best_genome.genes == res.best_genome.genes);
    CHECK(res2.best_objectives.f_rho == res.best_objectives.f_rho);
    REQUIRE(res2.history.size() == res.history.size());
    for (std::size_t i = 0; i < res.history.size(); ++i)
        CHECK(res2.history[i].best_weighted == res.history[i].best_weighted);
}

TEST_CASE("wsga best fitness never degrades across generations") {
    auto [g, layout] = small_instance(2025, 14);
    Evaluator eval(g, layout);
    GaConfig cfg;
    cfg.generations = 40;
    cfg.population_size = 20;
    cfg.num_parents = 10;
    cfg.seed = 5;
    auto res = run_wsga(eval, 3, cfg);
    REQUIRE(res.history.size() == 41);  // generation 0 plus one row per generation
    for (std::size_t i = 1; i < res.history.size(); ++i)
        CHECK(res.history[i].best_weighted >= res.history[i - 1].best_weighted - 1e-15);
    // The reported best matches the final history row.
    CHECK(weighted_sum_fitness(res.best_objectives, cfg.w_rho, cfg.w_spatial) ==
          doctest::Approx(res.history.back().best_weighted));
}

TEST_CASE("wsga at budget == |V| removes everything") {
    auto [g, layout] = small_instance(7, 6);
    Evaluator eval(g, layout);
    GaConfig cfg;
    cfg.generations = 2;
    cfg.population_size = 4;
    cfg.num_parents = 2;
    cfg.seed = 1;
    auto res = run_wsga(eval, 6, cfg);
    CHECK(res.best_genome.sorted_set() == std::vector<NodeId>{0, 1, 2, 3, 4, 5});
    CHECK(res.best_objectives.rho == doctest::Approx(0.0));
}

TEST_CASE("run_nsga2 produces a clean deduplicated first front") {
    auto [g, layout] = small_instance(404, 14);
    Evaluator eval(g, layout);
    GaConfig cfg;
    cfg.generations = 25;
    cfg.population_size = 28;
    cfg.num_parents = 14;
    cfg.seed = 8;
    auto res = run_nsga2(eval, 4, cfg);

    REQUIRE(!res.front.empty());
    REQUIRE(res.representative < res.front.size());
    REQUIRE(res.history.size() == 26);

    // Pairwise non-dominated and no duplicate objective pairs.
    for (std::size_t i = 0; i < res.front.size(); ++i) {
        for (std::size_t j = 0; j < res.front.size(); ++j) {
            if (i == j) continue;
            CHECK_FALSE(dominates(res.front[i].objectives, res.front[j].objectives));
            if (i < j) {
                const bool duplicate =
                    res.front[i].objectives.f_rho == res.front[j].objectives.f_rho &&
                    res.front[i].objectives.f_spatial == res.front[j].objectives.f_spatial;
                CHECK_FALSE(duplicate);
            }
        }
        CHECK(res.front[i].front == 0);
        require_valid(res.front[i].genome, 4, g.nodes());
    }

    // Representative maximizes the configured weighted sum.
    const double rep_fit = weighted_sum_fitness(res.front[res.representative].objectives,
                                                cfg.w_rho, cfg.w_spatial);
    for (const auto& ind : res.front)
        CHECK(rep_fit >= weighted_sum_fitness(ind.objectives, cfg.w_rho, cfg.w_spatial) - 1e-15);

    // Deterministic replay.
    auto res2 = run_nsga2(eval, 4, cfg);
    REQUIRE(res2.front.size() == res.front.size());
    for (std::size_t i = 0; i < res.front.size(); ++i)
        CHECK(res2.front[i].genome.genes == res.front[i].genome.genes);
}

TEST_CASE("nsga2 front is sorted by descending f_rho") {
    auto [g, layout] = small_instance(606, 12);
    Evaluator eval(g, layout);
    GaConfig cfg;
    cfg.generations = 20;
    cfg.population_size = 24;
    cfg.num_parents = 12;
    cfg.seed = 10;
    auto res = run_nsga2(eval, 3, cfg);
    for (std::size_t i = 1; i < res.front.size(); ++i) {
        CHECK(res.front[i - 1].objectives.f_rho >= res.front[i].objectives.f_rho);
        // On a clean two-objective front, descending f_rho implies ascending f_spatial.
        CHECK(res.front[i - 1].objectives.f_spatial <= res.front[i].objectives.f_spatial);
    }
}

TEST_CASE("save_history writes the documented schema") {
    GenerationStats s0;
    s0.generation = 0;
    s0.best_f_rho = 0.25;
    s0.mean_f_rho = 0.125;
    s0.best_f_spatial = 0.5;
    s0.mean_f_spatial = 0.25;
    s0.best_weighted = 0.375;
    s0.front0_size = 3;
    GenerationStats s1 = s0;
    s1.generation = 1;
    const auto path = std::filesystem::temp_directory_path() / "nd_moga_hist.csv";
    save_history(std::vector<GenerationStats>{s0, s1}, path);

    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line ==
          "generation,best_f_rho,mean_f_rho,best_f_spatial,mean_f_spatial,best_weighted,front0_size");
    std::getline(in, line);
    CHECK(line == "0,0.25,0.125,0.5,0.25,0.375,3");
    std::getline(in, line);
    CHECK(line == "1,0.25,0.125,0.5,0.25,0.375,3");
}

TEST_CASE("GA runs leave the graph untouched") {
    auto [g, layout] = small_instance(3030, 10);
    const std::uint64_t before = g.structure_hash();
    Evaluator eval(g, layout);
    GaConfig cfg;
    cfg.generations = 5;
    cfg.population_size = 8;
    cfg.num_parents = 4;
    cfg.seed = 2;
    run_wsga(eval, 2, cfg);
    run_nsga2(eval, 2, cfg);
    CHECK(g.structure_hash() == before);
}
