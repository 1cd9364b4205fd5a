#include "netdisrupt/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "netdisrupt/errors.hpp"
#include "netdisrupt/moga.hpp"

namespace netdisrupt::reference {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense index <-> NodeId mapping over the present nodes.
struct DenseMap {
    std::vector<NodeId> node;             // dense -> id
    std::vector<std::size_t> dense;       // id -> dense (unused slots undefined)

    explicit DenseMap(const WeightedGraph& g) {
        node.assign(g.nodes().begin(), g.nodes().end());
        dense.resize(g.id_limit(), 0);
        for (std::size_t i = 0; i < node.size(); ++i) dense[node[i]] = i;
    }
    std::size_t size() const { return node.size(); }
};

// All-pairs shortest distances and path counts by Floyd-Warshall.
void floyd_warshall(const WeightedGraph& g, const DenseMap& map, bool weighted,
                    std::vector<std::vector<double>>& dist,
                    std::vector<std::vector<double>>& sigma) {
    const std::size_t n = map.size();
    dist.assign(n, std::vector<double>(n, kInf));
    sigma.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        dist[i][i] = 0.0;
        sigma[i][i] = 1.0;
    }
    for (const Edge& e : g.edges()) {
        const std::size_t i = map.dense[e.u];
        const std::size_t j = map.dense[e.v];
        const double w = weighted ? 1.0 / e.weight : 1.0;
        dist[i][j] = dist[j][i] = w;
        sigma[i][j] = sigma[j][i] = 1.0;
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || dist[i][k] == kInf) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == k || j == i || dist[k][j] == kInf) continue;
                const double cand = dist[i][k] + dist[k][j];
                if (cand < dist[i][j]) {
                    dist[i][j] = cand;
                    sigma[i][j] = sigma[i][k] * sigma[k][j];
                } else if (cand == dist[i][j]) {
                    sigma[i][j] += sigma[i][k] * sigma[k][j];
                }
            }
        }
    }
}

}  // namespace

std::vector<double> betweenness(const WeightedGraph& g, bool weighted) {
    const DenseMap map(g);
    const std::size_t n = map.size();
    std::vector<double> out(g.id_limit(), 0.0);
    if (n < 3) return out;
    std::vector<std::vector<double>> dist, sigma;
    floyd_warshall(g, map, weighted, dist, sigma);
    for (std::size_t v = 0; v < n; ++v) {
        double acc = 0.0;
        for (std::size_t s = 0; s < n; ++s) {
            if (s == v || dist[s][v] == kInf) continue;
            for (std::size_t t = 0; t < n; ++t) {
                if (t == s || t == v || dist[s][t] == kInf) continue;
                if (dist[s][v] + dist[v][t] == dist[s][t])
                    acc += sigma[s][v] * sigma[v][t] / sigma[s][t];
            }
        }
        // Ordered pairs count each unordered pair twice; the normalization by
        // (n-1)(n-2)/2 folds the half in.
        out[map.node[v]] = acc / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
    }
    return out;
}

ComponentPartition components(const WeightedGraph& g) {
    const DenseMap map(g);
    const std::size_t n = map.size();
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i) reach[i][i] = 1;
    for (const Edge& e : g.edges()) {
        reach[map.dense[e.u]][map.dense[e.v]] = 1;
        reach[map.dense[e.v]][map.dense[e.u]] = 1;
    }
    // Square the relation until it stops changing.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                if (!reach[i][k]) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    if (reach[k][j] && !reach[i][j]) {
                        reach[i][j] = 1;
                        changed = true;
                    }
                }
            }
        }
    }
    ComponentPartition part;
    part.assignment.assign(g.id_limit(), -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (part.assignment[map.node[i]] != -1) continue;
        const auto comp = static_cast<std::int32_t>(part.sizes.size());
        std::uint32_t size = 0;
        for (std::size_t j = i; j < n; ++j) {
            if (reach[i][j] && part.assignment[map.node[j]] == -1) {
                part.assignment[map.node[j]] = comp;
                ++size;
            }
        }
        part.sizes.push_back(size);
    }
    return part;
}

std::vector<double> katz(const WeightedGraph& g, bool weighted, double alpha, double beta) {
    const DenseMap map(g);
    const std::size_t n = map.size();
    if (n == 0) throw ComputeError("katz reference on empty graph");
    // Solve (I - alpha*A) x = beta*1 by Gaussian elimination with partial pivoting.
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    std::vector<double> rhs(n, beta);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
    for (const Edge& e : g.edges()) {
        const std::size_t i = map.dense[e.u];
        const std::size_t j = map.dense[e.v];
        const double a = weighted ? e.weight : 1.0;
        m[i][j] -= alpha * a;
        m[j][i] -= alpha * a;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        }
        if (m[pivot][col] == 0.0) throw ComputeError("katz reference system is singular");
        std::swap(m[col], m[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = m[r][col] / m[col][col];
            if (factor == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
            rhs[r] -= factor * rhs[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t ri = n; ri-- > 0;) {
        double acc = rhs[ri];
        for (std::size_t c = ri + 1; c < n; ++c) acc -= m[ri][c] * x[c];
        x[ri] = acc / m[ri][ri];
    }
    double norm = 0.0;
    for (double v : x) norm += v * v;
    norm = std::sqrt(norm);
    std::vector<double> out(g.id_limit(), 0.0);
    if (norm > 0.0) {
        for (std::size_t i = 0; i < n; ++i) out[map.node[i]] = x[i] / norm;
    }
    return out;
}

double clustering_coefficient(const WeightedGraph& g) {
    auto nodes = g.nodes();
    if (nodes.empty()) return 0.0;
    auto connected = [&](NodeId a, NodeId b) {
        for (const Edge& e : g.edges()) {
            if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) return true;
        }
        return false;
    };
    double sum = 0.0;
    for (NodeId v : nodes) {
        auto nv = g.neighbors(v);
        const std::size_t k = nv.size();
        if (k < 2) continue;
        std::size_t links = 0;
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = a + 1; b < k; ++b) {
                if (connected(nv[a].to, nv[b].to)) ++links;
            }
        }
        sum += 2.0 * static_cast<double>(links) /
               (static_cast<double>(k) * static_cast<double>(k - 1));
    }
    return sum / static_cast<double>(nodes.size());
}

double average_path_length(const WeightedGraph& g) {
    const DenseMap map(g);
    const std::size_t n = map.size();
    if (n < 2) throw ComputeError("average path length needs at least one pair");
    std::vector<std::vector<double>> dist, sigma;
    floyd_warshall(g, map, /*weighted=*/false, dist, sigma);
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dist[i][j] == kInf) continue;
            sum += dist[i][j];
            ++count;
        }
    }
    if (count == 0) throw ComputeError("average path length undefined: no reachable pairs");
    return sum / static_cast<double>(count);
}

ExhaustiveBest exhaustive_best_removal(const Evaluator& eval, int budget, double w_rho,
                                       double w_spatial) {
    auto nodes = eval.graph().nodes();
    const std::size_t n = nodes.size();
    if (budget < 1 || static_cast<std::size_t>(budget) > n)
        throw ConfigError("exhaustive budget must be in [1, " + std::to_string(n) + "]");
    const auto k = static_cast<std::size_t>(budget);

    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    auto next_combination = [&]() {
        std::size_t pos = k;
        while (pos > 0) {
            --pos;
            if (idx[pos] != pos + n - k) {
                ++idx[pos];
                for (std::size_t i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
                return true;
            }
        }
        return false;
    };

    std::vector<NodeId> current(k);
    ExhaustiveBest best;
    double best_fitness = -kInf;
    do {
        for (std::size_t i = 0; i < k; ++i) current[i] = nodes[idx[i]];
        const ObjectiveVector obj = eval.evaluate(current);
        const double fitness = w_rho * obj.f_rho + w_spatial * obj.f_spatial;
        // Strict improvement keeps the lexicographically smallest optimum,
        // because combinations are enumerated in lexicographic order.
        if (fitness > best_fitness) {
            best_fitness = fitness;
            best.nodes = current;
            best.objectives = obj;
        }
    } while (next_combination());
    return best;
}

std::vector<std::size_t> pareto_filter(std::span<const ObjectiveVector> objs) {
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < objs.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < objs.size() && !dominated; ++j) {
            if (j != i && dominates(objs[j], objs[i])) dominated = true;
        }
        if (!dominated) kept.push_back(i);
    }
    return kept;
}

std::vector<std::vector<std::size_t>> nondominated_sort(std::span<const ObjectiveVector> objs) {
    std::vector<std::vector<std::size_t>> fronts;
    std::vector<std::size_t> remaining(objs.size());
    for (std::size_t i = 0; i < objs.size(); ++i) remaining[i] = i;
    while (!remaining.empty()) {
        // Extract the pareto set of the remaining records.
        std::vector<std::size_t> front;
        for (std::size_t i : remaining) {
            bool dominated = false;
            for (std::size_t j : remaining) {
                if (j != i && dominates(objs[j], objs[i])) {
                    dominated = true;
                    break;
                }
            }
            if (!dominated) front.push_back(i);
        }
        std::vector<std::size_t> rest;
        for (std::size_t i : remaining) {
            if (!std::binary_search(front.begin(), front.end(), i)) rest.push_back(i);
        }
        fronts.push_back(std::move(front));
        remaining = std::move(rest);
    }
    return fronts;
}

}  // namespace netdisrupt::reference
