#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "netdisrupt/graph.hpp"

namespace netdisrupt {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Synthetic 2-D geography: node coordinates plus LEA headquarters, with the
// nearest-HQ distance table and its min/max precomputed. Coordinates are
// quantized to 6 decimals at creation so save/load round-trips are exact.
// Immutable after generation; safe for shared concurrent reads.
struct SpatialLayout {
    double width = 0.0;
    double height = 0.0;
    std::uint64_t seed = 0;
    std::vector<Point> node_coords;  // indexed by NodeId
    std::vector<Point> hq_coords;
    std::vector<double> nearest_hq;  // per node, Euclidean distance to closest HQ
    double d_min = 0.0;
    double d_max = 0.0;

    std::size_t node_count() const { return node_coords.size(); }

    /// (d_v - d_min)/(d_max - d_min); 0 when all nodes are equidistant.
    double normalized_distance(NodeId v) const;
};

/// Uniform-random placement of nodes and HQs inside the bbox. Deterministic
/// under seed. d_min/d_max are the realized extremes over the nodes.
SpatialLayout generate_layout(std::size_t node_count, double width, double height,
                              std::size_t hq_count, std::uint64_t seed);

/// Build a layout from explicit coordinates (recomputes nearest-HQ tables).
SpatialLayout layout_from_points(double width, double height, std::uint64_t seed,
                                 std::vector<Point> node_coords, std::vector<Point> hq_coords);

double nearest_hq_distance(const SpatialLayout& layout, NodeId v);

void save_layout(const SpatialLayout& layout, const std::filesystem::path& path);
SpatialLayout load_layout(const std::filesystem::path& path);

/// Layouts are bound to a graph by node count; mismatch is an InputError.
void bind_layout(const SpatialLayout& layout, const WeightedGraph& g);

}  // namespace netdisrupt
