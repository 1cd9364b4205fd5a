#include "netdisrupt/spatial.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <string>

#include "netdisrupt/errors.hpp"
#include "netdisrupt/rng.hpp"

namespace netdisrupt {

namespace {

// Coordinates carry exactly 6 decimals from the moment they are drawn, so the
// %.6f files round-trip to the same doubles.
double quantize6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return std::strtod(buf, nullptr);
}

double euclid(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

}  // namespace

double SpatialLayout::normalized_distance(NodeId v) const {
    if (v >= nearest_hq.size()) throw InputError("node id " + std::to_string(v) + " not in layout");
    if (d_max == d_min) return 0.0;  // all nodes equidistant: cost is neutral
    return (nearest_hq[v] - d_min) / (d_max - d_min);
}

SpatialLayout generate_layout(std::size_t node_count, double width, double height,
                              std::size_t hq_count, std::uint64_t seed) {
    if (node_count == 0) throw ConfigError("layout needs at least one node");
    if (hq_count == 0) throw ConfigError("layout needs at least one HQ");
    if (!(width > 0.0) || !(height > 0.0)) throw ConfigError("bbox dimensions must be positive");
    Rng rng(seed);
    std::vector<Point> nodes(node_count), hqs(hq_count);
    for (auto& p : nodes) {
        p.x = quantize6(rng.uniform() * width);
        p.y = quantize6(rng.uniform() * height);
    }
    for (auto& p : hqs) {
        p.x = quantize6(rng.uniform() * width);
        p.y = quantize6(rng.uniform() * height);
    }
    return layout_from_points(width, height, seed, std::move(nodes), std::move(hqs));
}

SpatialLayout layout_from_points(double width, double height, std::uint64_t seed,
                                 std::vector<Point> node_coords, std::vector<Point> hq_coords) {
    if (node_coords.empty()) throw ConfigError("layout needs at least one node");
    if (hq_coords.empty()) throw ConfigError("layout needs at least one HQ");
    SpatialLayout layout;
    layout.width = width;
    layout.height = height;
    layout.seed = seed;
    layout.node_coords = std::move(node_coords);
    layout.hq_coords = std::move(hq_coords);
    layout.nearest_hq.resize(layout.node_coords.size());
    layout.d_min = std::numeric_limits<double>::infinity();
    layout.d_max = 0.0;
    for (std::size_t v = 0; v < layout.node_coords.size(); ++v) {
        double best = std::numeric_limits<double>::infinity();
        for (const Point& hq : layout.hq_coords) best = std::min(best, euclid(layout.node_coords[v], hq));
        layout.nearest_hq[v] = best;
        layout.d_min = std::min(layout.d_min, best);
        layout.d_max = std::max(layout.d_max, best);
    }
    return layout;
}

double nearest_hq_distance(const SpatialLayout& layout, NodeId v) {
    if (v >= layout.nearest_hq.size())
        throw InputError("node id " + std::to_string(v) + " not in layout");
    return layout.nearest_hq[v];
}

void save_layout(const SpatialLayout& layout, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write layout file '" + path.string() + "'");
    char buf[256];
    std::snprintf(buf, sizeof buf, "# netdisrupt-layout width=%.6f height=%.6f seed=%llu nodes=%zu hqs=%zu\n",
                  layout.width, layout.height, static_cast<unsigned long long>(layout.seed),
                  layout.node_coords.size(), layout.hq_coords.size());
    out << buf << "type,x,y\n";
    for (const Point& p : layout.node_coords) {
        std::snprintf(buf, sizeof buf, "node,%.6f,%.6f\n", p.x, p.y);
        out << buf;
    }
    for (const Point& p : layout.hq_coords) {
        std::snprintf(buf, sizeof buf, "hq,%.6f,%.6f\n", p.x, p.y);
        out << buf;
    }
    if (!out) throw ParseError("write failed for layout file '" + path.string() + "'");
}

SpatialLayout load_layout(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open layout file '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty layout file '" + path.string() + "'");
    double width = 0.0, height = 0.0;
    unsigned long long seed = 0;
    std::size_t nodes = 0, hqs = 0;
    if (std::sscanf(line.c_str(), "# netdisrupt-layout width=%lf height=%lf seed=%llu nodes=%zu hqs=%zu",
                    &width, &height, &seed, &nodes, &hqs) != 5)
        throw ParseError("bad layout header: '" + line + "'");
    if (!std::getline(in, line) || line != "type,x,y")
        throw ParseError("missing column header in layout file '" + path.string() + "'");
    std::vector<Point> node_coords, hq_coords;
    node_coords.reserve(nodes);
    hq_coords.reserve(hqs);
    std::size_t lineno = 2;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        char kind[8];
        Point p;
        if (std::sscanf(line.c_str(), "%7[^,],%lf,%lf", kind, &p.x, &p.y) != 3)
            throw ParseError("layout line " + std::to_string(lineno) + ": bad row '" + line + "'");
        const std::string k = kind;
        if (k == "node")
            node_coords.push_back(p);
        else if (k == "hq")
            hq_coords.push_back(p);
        else
            throw ParseError("layout line " + std::to_string(lineno) + ": unknown row type '" + k + "'");
    }
    if (node_coords.size() != nodes || hq_coords.size() != hqs)
        throw ParseError("layout file '" + path.string() + "' is truncated: expected " +
                         std::to_string(nodes) + " nodes / " + std::to_string(hqs) + " HQs, got " +
                         std::to_string(node_coords.size()) + " / " + std::to_string(hq_coords.size()));
    return layout_from_points(width, height, seed, std::move(node_coords), std::move(hq_coords));
}

void bind_layout(const SpatialLayout& layout, const WeightedGraph& g) {
    if (layout.node_count() != g.id_limit())
        throw InputError("layout holds " + std::to_string(layout.node_count()) +
                         " nodes but graph id space is " + std::to_string(g.id_limit()));
}

}  // namespace netdisrupt
