#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "netdisrupt/graph.hpp"

namespace netdisrupt {

enum class EdgeListFormat { auto_detect, csv, whitespace };

struct IngestReport {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t merged_duplicates = 0;
    std::size_t dropped_self_loops = 0;
};

/// Parse a raw (source, target, weight) edge list. Labels are remapped to
/// dense ids in first-appearance order; duplicate edges are merged with summed
/// weight; self-loops are dropped. Both events are counted in the report.
/// An optional roles file (label,role per line) attaches role metadata.
WeightedGraph ingest_edge_list(const std::filesystem::path& path,
                               EdgeListFormat format = EdgeListFormat::auto_detect,
                               IngestReport* report = nullptr,
                               const std::filesystem::path& roles_path = {});

/// Canonical graph file: metadata line, node section (id,label,role),
/// edge section (u,v,weight). Fixed formatting for reproducible diffs.
void save_graph(const WeightedGraph& g, const std::filesystem::path& path);
WeightedGraph load_graph(const std::filesystem::path& path);

}  // namespace netdisrupt
