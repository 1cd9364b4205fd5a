// Benchmark comparing the OpenMP kernels against single-threaded runs and,
// where feasible, against the dense reference implementations. Also verifies
// that parallel and serial results are bit-identical, which is the whole
// point of the fixed-block accumulation scheme.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "netdisrupt/centrality.hpp"
#include "netdisrupt/graph.hpp"
#include "netdisrupt/moga.hpp"
#include "netdisrupt/objectives.hpp"
#include "netdisrupt/reference.hpp"
#include "netdisrupt/rng.hpp"
#include "netdisrupt/spatial.hpp"

using namespace netdisrupt;

namespace {

WeightedGraph random_graph(std::size_t n, std::size_t target_edges, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Edge> edges;
    edges.reserve(target_edges + n);
    std::set<std::pair<NodeId, NodeId>> seen;
    // Ring backbone keeps the graph connected so LCC work is non-trivial.
    for (std::size_t v = 0; v + 1 < n; ++v) {
        edges.push_back({static_cast<NodeId>(v), static_cast<NodeId>(v + 1),
                         1.0 + static_cast<double>(rng.index(5))});
        seen.insert({static_cast<NodeId>(v), static_cast<NodeId>(v + 1)});
    }
    while (edges.size() < target_edges + n - 1) {
        auto u = static_cast<NodeId>(rng.index(n));
        auto v = static_cast<NodeId>(rng.index(n));
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        if (!seen.insert({u, v}).second) continue;
        edges.push_back({u, v, 1.0 + static_cast<double>(rng.index(5))});
    }
    return WeightedGraph(n, std::move(edges));
}

template <typename Fn>
double best_of(int reps, Fn&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void row(const std::string& name, int threads, double ms, const std::string& note) {
    std::printf("%-34s %3d threads  %10.2f ms  %s\n", name.c_str(), threads, ms, note.c_str());
}

}  // namespace

int main() {
    const int max_threads = omp_get_max_threads();
    std::printf("netdisrupt benchmarks (max %d threads)\n\n", max_threads);

    // --- betweenness: parallel vs serial vs dense reference ---------------
    {
        WeightedGraph g = random_graph(1500, 6000, 11);
        CentralityScores par, ser;
        omp_set_num_threads(max_threads);
        const double t_par = best_of(3, [&] { par = betweenness_centrality(g, false); });
        omp_set_num_threads(1);
        const double t_ser = best_of(3, [&] { ser = betweenness_centrality(g, false); });
        omp_set_num_threads(max_threads);
        const bool same = par.values == ser.values;
        row("betweenness n=1500 m=6000", max_threads, t_par, "");
        row("betweenness n=1500 m=6000", 1, t_ser,
            same ? "bit-identical to parallel" : "MISMATCH vs parallel");

        WeightedGraph small = random_graph(300, 1200, 12);
        CentralityScores fast = betweenness_centrality(small, false);
        std::vector<double> slow;
        const double t_ref = best_of(1, [&] { slow = reference::betweenness(small, false); });
        double max_diff = 0.0;
        for (std::size_t v = 0; v < slow.size(); ++v)
            max_diff = std::max(max_diff, std::abs(slow[v] - fast.values[v]));
        const double t_fast = best_of(3, [&] { fast = betweenness_centrality(small, false); });
        row("betweenness n=300 (brandes)", max_threads, t_fast, "");
        char note[64];
        std::snprintf(note, sizeof note, "max |diff| vs brandes = %.2e", max_diff);
        row("betweenness n=300 (dense ref)", 1, t_ref, note);
    }

    // --- katz: row-parallel matvec vs serial -------------------------------
    {
        WeightedGraph g = random_graph(4000, 16000, 13);
        CentralityScores par, ser;
        omp_set_num_threads(max_threads);
        const double t_par = best_of(3, [&] { par = katz_centrality(g, true); });
        omp_set_num_threads(1);
        const double t_ser = best_of(3, [&] { ser = katz_centrality(g, true); });
        omp_set_num_threads(max_threads);
        const bool same = par.values == ser.values;
        row("katz n=4000 m=16000 (weighted)", max_threads, t_par, "");
        row("katz n=4000 m=16000 (weighted)", 1, t_ser,
            same ? "bit-identical to parallel" : "MISMATCH vs parallel");
    }

    // --- collective influence ----------------------------------------------
    {
        WeightedGraph g = random_graph(4000, 16000, 14);
        CentralityScores par, ser;
        omp_set_num_threads(max_threads);
        const double t_par = best_of(3, [&] { par = collective_influence(g, 2); });
        omp_set_num_threads(1);
        const double t_ser = best_of(3, [&] { ser = collective_influence(g, 2); });
        omp_set_num_threads(max_threads);
        const bool same = par.values == ser.values;
        row("collective influence l=2", max_threads, t_par, "");
        row("collective influence l=2", 1, t_ser,
            same ? "bit-identical to parallel" : "MISMATCH vs parallel");
    }

    // --- GA generation throughput ------------------------------------------
    {
        WeightedGraph g = random_graph(800, 3200, 15);
        SpatialLayout layout = generate_layout(g.id_limit(), 1000.0, 1000.0, 3, 99);
        Evaluator eval(g, layout);
        GaConfig cfg;
        cfg.generations = 10;
        cfg.population_size = 200;
        cfg.num_parents = 100;
        cfg.seed = 7;
        WsgaResult par, ser;
        omp_set_num_threads(max_threads);
        const double t_par = best_of(2, [&] { par = run_wsga(eval, 40, cfg); });
        omp_set_num_threads(1);
        const double t_ser = best_of(2, [&] { ser = run_wsga(eval, 40, cfg); });
        omp_set_num_threads(max_threads);
        const bool same = par.best_objectives.rho == ser.best_objectives.rho &&
                          par.best_genome.genes == ser.best_genome.genes;
        row("wsga 10 gens pop=200 n=800", max_threads, t_par, "");
        row("wsga 10 gens pop=200 n=800", 1, t_ser,
            same ? "bit-identical to parallel" : "MISMATCH vs parallel");
    }

    std::printf("\ndone\n");
    return 0;
}
