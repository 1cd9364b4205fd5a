#include "netdisrupt/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "netdisrupt/errors.hpp"

namespace netdisrupt {

namespace {

// Sources are processed in fixed blocks; each block accumulates into its own
// buffer and buffers are merged in block order. Floating-point sums are then
// identical for any thread count or schedule.
constexpr std::size_t kSourceBlock = 16;

double edge_distance(double weight, WeightTransform transform) {
    return transform == WeightTransform::inverse ? 1.0 / weight : weight;
}

// Single-source BFS pass of the Brandes accumulation, adding the source's
// pair dependencies into acc. Scratch vectors are reset via the touched list.
void brandes_bfs_from(const WeightedGraph& g, NodeId s, std::vector<double>& acc,
                      std::vector<double>& sigma, std::vector<double>& dist,
                      std::vector<double>& delta, std::vector<std::vector<NodeId>>& preds,
                      std::vector<NodeId>& order) {
    order.clear();
    sigma[s] = 1.0;
    dist[s] = 0.0;
    std::size_t head = 0;
    order.push_back(s);
    while (head < order.size()) {
        NodeId v = order[head++];
        for (const Neighbor& nb : g.neighbors(v)) {
            if (dist[nb.to] < 0.0) {
                dist[nb.to] = dist[v] + 1.0;
                order.push_back(nb.to);
            }
            if (dist[nb.to] == dist[v] + 1.0) {
                sigma[nb.to] += sigma[v];
                preds[nb.to].push_back(v);
            }
        }
    }
    // Dependency accumulation in reverse discovery order.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        NodeId w = *it;
        for (NodeId p : preds[w]) delta[p] += sigma[p] / sigma[w] * (1.0 + delta[w]);
        if (w != s) acc[w] += delta[w];
    }
    for (NodeId v : order) {
        sigma[v] = 0.0;
        dist[v] = -1.0;
        delta[v] = 0.0;
        preds[v].clear();
    }
}

bool has_edge(const WeightedGraph& g, NodeId a, NodeId b) {
    auto row = g.neighbors(a);
    auto it = std::lower_bound(row.begin(), row.end(), b,
                               [](const Neighbor& nb, NodeId x) { return nb.to < x; });
    return it != row.end() && it->to == b;
}

}  // namespace

std::string measure_name(CentralityMeasure m) {
    switch (m) {
        case CentralityMeasure::degree: return "degree";
        case CentralityMeasure::betweenness: return "betweenness";
        case CentralityMeasure::katz: return "katz";
        case CentralityMeasure::collective_influence: return "ci";
    }
    throw ConfigError("unknown centrality measure");
}

std::optional<CentralityMeasure> parse_measure(const std::string& name) {
    if (name == "degree") return CentralityMeasure::degree;
    if (name == "betweenness") return CentralityMeasure::betweenness;
    if (name == "katz") return CentralityMeasure::katz;
    if (name == "ci" || name == "collective-influence") return CentralityMeasure::collective_influence;
    return std::nullopt;
}

CentralityScores degree_centrality(const WeightedGraph& g, bool weighted) {
    CentralityScores out{CentralityMeasure::degree, weighted, std::vector<double>(g.id_limit(), 0.0)};
    if (weighted) {
        for (NodeId v : g.nodes()) out.values[v] = g.strength(v);
        return out;
    }
    const std::size_t n = g.node_count();
    if (n < 2) throw ComputeError("normalized degree centrality needs at least 2 nodes");
    for (NodeId v : g.nodes()) out.values[v] = static_cast<double>(g.degree(v)) / static_cast<double>(n - 1);
    return out;
}

CentralityScores betweenness_centrality(const WeightedGraph& g, bool weighted,
                                        WeightTransform transform) {
    const std::size_t nid = g.id_limit();
    auto sources = g.nodes();
    const std::size_t n = sources.size();
    CentralityScores out{CentralityMeasure::betweenness, weighted, std::vector<double>(nid, 0.0)};
    if (n < 3) return out;

    const std::size_t blocks = (n + kSourceBlock - 1) / kSourceBlock;
    std::vector<std::vector<double>> partial(blocks);

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
        std::vector<double> acc(nid, 0.0);
        std::vector<double> sigma(nid, 0.0);
        std::vector<double> dist(nid, -1.0);
        std::vector<double> delta(nid, 0.0);
        std::vector<std::vector<NodeId>> preds(nid);
        std::vector<NodeId> order;
        order.reserve(n);
        std::vector<char> settled;
        const std::size_t lo = static_cast<std::size_t>(b) * kSourceBlock;
        const std::size_t hi = std::min(lo + kSourceBlock, n);
        for (std::size_t si = lo; si < hi; ++si) {
            NodeId s = sources[si];
            if (!weighted) {
                brandes_bfs_from(g, s, acc, sigma, dist, delta, preds, order);
                continue;
            }
            // Dijkstra variant with lazy deletion; path counting uses exact
            // distance equality, matching the reference oracle.
            order.clear();
            settled.assign(nid, 0);
            sigma[s] = 1.0;
            dist[s] = 0.0;
            using Entry = std::pair<double, NodeId>;
            std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
            pq.push({0.0, s});
            while (!pq.empty()) {
                auto [d, v] = pq.top();
                pq.pop();
                if (settled[v]) continue;
                settled[v] = 1;
                order.push_back(v);
                for (const Neighbor& nb : g.neighbors(v)) {
                    const double cand = dist[v] + edge_distance(nb.weight, transform);
                    if (dist[nb.to] < 0.0 || cand < dist[nb.to]) {
                        dist[nb.to] = cand;
                        sigma[nb.to] = sigma[v];
                        preds[nb.to].assign(1, v);
                        pq.push({cand, nb.to});
                    } else if (cand == dist[nb.to] && !settled[nb.to]) {
                        sigma[nb.to] += sigma[v];
                        preds[nb.to].push_back(v);
                    }
                }
            }
            for (auto it = order.rbegin(); it != order.rend(); ++it) {
                NodeId w = *it;
                for (NodeId p : preds[w]) delta[p] += sigma[p] / sigma[w] * (1.0 + delta[w]);
                if (w != s) acc[w] += delta[w];
            }
            for (NodeId v : order) {
                sigma[v] = 0.0;
                dist[v] = -1.0;
                delta[v] = 0.0;
                preds[v].clear();
            }
        }
        partial[b] = std::move(acc);
    }

    for (std::size_t b = 0; b < blocks; ++b) {
        for (std::size_t v = 0; v < nid; ++v) out.values[v] += partial[b][v];
    }
    // Accumulation visits each unordered pair from both endpoints; fold the
    // factor 1/2 into the (n-1)(n-2)/2 pair normalization.
    const double scale = 1.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
    for (double& v : out.values) v *= scale;
    return out;
}

namespace {

// y = A*x over present nodes; per-row sums are serial, so the result does not
// depend on the parallel schedule.
void adjacency_matvec(const WeightedGraph& g, bool weighted, const std::vector<double>& x,
                      std::vector<double>& y) {
    auto nodes = g.nodes();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(nodes.size()); ++i) {
        NodeId v = nodes[i];
        double s = 0.0;
        for (const Neighbor& nb : g.neighbors(v)) s += weighted ? nb.weight * x[nb.to] : x[nb.to];
        y[v] = s;
    }
}

double lambda_max_estimate(const WeightedGraph& g, bool weighted) {
    const std::size_t nid = g.id_limit();
    auto nodes = g.nodes();
    std::vector<double> v(nid, 0.0), w(nid, 0.0);
    const double init = 1.0 / std::sqrt(static_cast<double>(nodes.size()));
    for (NodeId u : nodes) v[u] = init;
    double lambda = 0.0;
    for (int it = 0; it < 500; ++it) {
        adjacency_matvec(g, weighted, v, w);
        double norm = 0.0;
        for (NodeId u : nodes) norm += w[u] * w[u];
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;  // no edges
        for (NodeId u : nodes) v[u] = w[u] / norm;
        if (std::abs(norm - lambda) <= 1e-12 * std::max(1.0, norm)) return norm;
        lambda = norm;
    }
    return lambda;
}

}  // namespace

CentralityScores katz_centrality(const WeightedGraph& g, bool weighted, const KatzParams& params,
                                 KatzDiag* diag) {
    auto nodes = g.nodes();
    if (nodes.empty()) throw ComputeError("katz centrality on empty graph");
    const std::size_t nid = g.id_limit();

    double alpha = 0.0;
    if (params.alpha) {
        alpha = *params.alpha;
    } else {
        const double lambda = lambda_max_estimate(g, weighted);
        alpha = lambda > 0.0 ? params.alpha_scale / lambda : 0.0;
    }

    std::vector<double> x(nid, 0.0), y(nid, 0.0);
    for (NodeId v : nodes) x[v] = params.beta;
    double resid = std::numeric_limits<double>::infinity();
    int iterations = 0;
    for (int it = 1; it <= params.max_iter; ++it) {
        adjacency_matvec(g, weighted, x, y);
        resid = 0.0;
        for (NodeId v : nodes) {
            y[v] = alpha * y[v] + params.beta;
            resid = std::max(resid, std::abs(y[v] - x[v]));
        }
        iterations = it;
        // resid == ||x - (alpha*A*x + beta)||_inf, i.e. the residual of x.
        if (resid < params.tol) break;
        std::swap(x, y);
    }
    if (!(resid < params.tol))
        throw ComputeError("katz centrality did not converge: residual " + std::to_string(resid) +
                           " after " + std::to_string(params.max_iter) + " iterations");

    double norm = 0.0;
    for (NodeId v : nodes) norm += x[v] * x[v];
    norm = std::sqrt(norm);
    CentralityScores out{CentralityMeasure::katz, weighted, std::vector<double>(nid, 0.0)};
    if (norm > 0.0) {
        for (NodeId v : nodes) out.values[v] = x[v] / norm;
    }
    if (diag) *diag = {alpha, resid, norm, iterations};
    return out;
}

CentralityScores collective_influence(const WeightedGraph& g, int radius, bool weighted) {
    if (radius < 1) throw ConfigError("collective influence radius must be >= 1");
    const std::size_t nid = g.id_limit();
    auto nodes = g.nodes();
    CentralityScores out{CentralityMeasure::collective_influence, weighted,
                         std::vector<double>(nid, 0.0)};

    auto factor = [&](NodeId v) {
        const double base = weighted ? g.strength(v) : static_cast<double>(g.degree(v));
        return std::max(base - 1.0, 0.0);
    };

#pragma omp parallel
    {
        std::vector<int> dist(nid, -1);
        std::vector<NodeId> frontier, next, touched;
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(nodes.size()); ++i) {
            NodeId v = nodes[i];
            const double own = factor(v);
            if (own == 0.0) continue;  // deg <= 1 clamps the product to 0
            frontier.assign(1, v);
            touched.assign(1, v);
            dist[v] = 0;
            for (int hop = 0; hop < radius && !frontier.empty(); ++hop) {
                next.clear();
                for (NodeId u : frontier) {
                    for (const Neighbor& nb : g.neighbors(u)) {
                        if (dist[nb.to] == -1) {
                            dist[nb.to] = hop + 1;
                            next.push_back(nb.to);
                            touched.push_back(nb.to);
                        }
                    }
                }
                std::swap(frontier, next);
            }
            double ring = 0.0;
            for (NodeId u : frontier) ring += factor(u);  // exactly hop-`radius` away
            out.values[v] = own * ring;
            for (NodeId u : touched) dist[u] = -1;
        }
    }
    return out;
}

double clustering_coefficient(const WeightedGraph& g) {
    auto nodes = g.nodes();
    if (nodes.empty()) return 0.0;
    std::vector<double> local(g.id_limit(), 0.0);

#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(nodes.size()); ++i) {
        NodeId v = nodes[i];
        auto nv = g.neighbors(v);
        const std::size_t k = nv.size();
        if (k < 2) continue;
        std::size_t links = 0;
        for (const Neighbor& a : nv) {
            for (const Neighbor& b : nv) {
                if (b.to > a.to && has_edge(g, a.to, b.to)) ++links;
            }
        }
        local[v] = 2.0 * static_cast<double>(links) /
                   (static_cast<double>(k) * static_cast<double>(k - 1));
    }

    double sum = 0.0;
    for (NodeId v : nodes) sum += local[v];
    return sum / static_cast<double>(nodes.size());
}

double average_path_length(const WeightedGraph& g) {
    const std::size_t nid = g.id_limit();
    auto sources = g.nodes();
    const std::size_t n = sources.size();
    if (n < 2) throw ComputeError("average path length needs at least one pair");

    const std::size_t blocks = (n + kSourceBlock - 1) / kSourceBlock;
    std::vector<std::uint64_t> sum_block(blocks, 0), cnt_block(blocks, 0);

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
        std::vector<int> dist(nid, -1);
        std::vector<NodeId> order;
        order.reserve(n);
        std::uint64_t sum = 0, cnt = 0;
        const std::size_t lo = static_cast<std::size_t>(b) * kSourceBlock;
        const std::size_t hi = std::min(lo + kSourceBlock, n);
        for (std::size_t si = lo; si < hi; ++si) {
            NodeId s = sources[si];
            order.assign(1, s);
            dist[s] = 0;
            std::size_t head = 0;
            while (head < order.size()) {
                NodeId v = order[head++];
                for (const Neighbor& nb : g.neighbors(v)) {
                    if (dist[nb.to] == -1) {
                        dist[nb.to] = dist[v] + 1;
                        order.push_back(nb.to);
                    }
                }
            }
            for (NodeId v : order) {
                if (v != s) {
                    sum += static_cast<std::uint64_t>(dist[v]);
                    ++cnt;
                }
                dist[v] = -1;
            }
        }
        sum_block[b] = sum;
        cnt_block[b] = cnt;
    }

    std::uint64_t sum = 0, cnt = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
        sum += sum_block[b];
        cnt += cnt_block[b];
    }
    if (cnt == 0) throw ComputeError("average path length undefined: no reachable pairs");
    // Ordered pairs double-count symmetric distances; the ratio is unaffected.
    return static_cast<double>(sum) / static_cast<double>(cnt);
}

}  // namespace netdisrupt
