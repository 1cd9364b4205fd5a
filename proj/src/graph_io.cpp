#include "netdisrupt/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "netdisrupt/errors.hpp"

namespace netdisrupt {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == sep) {
            out.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return {buf, ptr};
}

void check_field_text(const std::string& s, const char* what) {
    if (s.find(',') != std::string::npos || s.find('\n') != std::string::npos)
        throw InputError(std::string(what) + " may not contain commas or newlines: '" + s + "'");
}

}  // namespace

WeightedGraph ingest_edge_list(const std::filesystem::path& path, EdgeListFormat format,
                               IngestReport* report, const std::filesystem::path& roles_path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open edge list '" + path.string() + "'");

    std::unordered_map<std::string, NodeId> ids;
    std::vector<NodeInfo> info;
    auto id_of = [&](const std::string& label) {
        auto it = ids.find(label);
        if (it != ids.end()) return it->second;
        auto id = static_cast<NodeId>(info.size());
        ids.emplace(label, id);
        info.push_back({label, ""});
        return id;
    };

    std::map<std::pair<NodeId, NodeId>, double> merged;
    IngestReport rep;
    std::string line;
    std::size_t lineno = 0;
    bool first_row = true;
    EdgeListFormat fmt = format;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (fmt == EdgeListFormat::auto_detect)
            fmt = t.find(',') != std::string::npos ? EdgeListFormat::csv : EdgeListFormat::whitespace;
        auto fields = fmt == EdgeListFormat::csv ? split(t, ',') : split_ws(t);
        if (fields.size() < 3)
            throw ParseError("row " + std::to_string(lineno) + ": expected source, target, weight");
        double w = 0.0;
        if (!parse_double(fields[2], w)) {
            // A non-numeric weight is only acceptable as the (optional) header row.
            if (first_row) {
                first_row = false;
                continue;
            }
            throw ParseError("row " + std::to_string(lineno) + ": bad weight '" + fields[2] + "'");
        }
        first_row = false;
        if (!(w > 0.0))
            throw ParseError("row " + std::to_string(lineno) + ": non-positive weight '" +
                             fields[2] + "'");
        NodeId u = id_of(fields[0]);
        NodeId v = id_of(fields[1]);
        if (u == v) {
            ++rep.dropped_self_loops;
            continue;
        }
        auto key = std::minmax(u, v);
        auto [it, inserted] = merged.emplace(std::pair{key.first, key.second}, w);
        if (!inserted) {
            it->second += w;
            ++rep.merged_duplicates;
        }
    }
    if (merged.empty()) throw ParseError("no edges in '" + path.string() + "'");

    if (!roles_path.empty()) {
        std::ifstream rin(roles_path);
        if (!rin) throw ParseError("cannot open roles file '" + roles_path.string() + "'");
        std::string rline;
        std::size_t rno = 0;
        while (std::getline(rin, rline)) {
            ++rno;
            std::string t = trim(rline);
            if (t.empty() || t[0] == '#') continue;
            auto fields = split(t, ',');
            if (fields.size() != 2)
                throw ParseError("roles row " + std::to_string(rno) + ": expected label,role");
            auto it = ids.find(fields[0]);
            if (it == ids.end())
                throw InputError("roles row " + std::to_string(rno) + ": unknown node label '" +
                                 fields[0] + "'");
            info[it->second].role = fields[1];
        }
    }

    std::vector<Edge> edges;
    edges.reserve(merged.size());
    for (const auto& [key, w] : merged) edges.push_back({key.first, key.second, w});
    rep.nodes = info.size();
    rep.edges = edges.size();
    if (report) *report = rep;
    const std::size_t n = info.size();
    return WeightedGraph(n, std::move(edges), std::move(info));
}

void save_graph(const WeightedGraph& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write graph file '" + path.string() + "'");
    out << "# netdisrupt-graph nodes=" << g.id_limit() << " edges=" << g.edge_count() << "\n";
    out << "id,label,role\n";
    for (std::size_t v = 0; v < g.id_limit(); ++v) {
        const NodeInfo& ni = g.info(static_cast<NodeId>(v));
        check_field_text(ni.label, "node label");
        check_field_text(ni.role, "node role");
        out << v << "," << ni.label << "," << ni.role << "\n";
    }
    out << "u,v,weight\n";
    for (const Edge& e : g.edges()) out << e.u << "," << e.v << "," << format_double(e.weight) << "\n";
    if (!out) throw ParseError("write failed for graph file '" + path.string() + "'");
}

WeightedGraph load_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty graph file '" + path.string() + "'");
    std::size_t nodes = 0, edges = 0;
    if (std::sscanf(line.c_str(), "# netdisrupt-graph nodes=%zu edges=%zu", &nodes, &edges) != 2)
        throw ParseError("bad graph header: '" + line + "'");
    if (!std::getline(in, line) || trim(line) != "id,label,role")
        throw ParseError("missing node section header in '" + path.string() + "'");
    std::vector<NodeInfo> info(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        if (!std::getline(in, line)) throw ParseError("truncated node section at row " + std::to_string(i));
        auto fields = split(line, ',');
        if (fields.size() != 3) throw ParseError("bad node row: '" + line + "'");
        std::size_t id = 0;
        if (!(std::istringstream(fields[0]) >> id) || id != i)
            throw ParseError("node ids out of order at row " + std::to_string(i));
        info[i] = {fields[1], fields[2]};
    }
    if (!std::getline(in, line) || trim(line) != "u,v,weight")
        throw ParseError("missing edge section header in '" + path.string() + "'");
    std::vector<Edge> es;
    es.reserve(edges);
    for (std::size_t i = 0; i < edges; ++i) {
        if (!std::getline(in, line)) throw ParseError("truncated edge section at row " + std::to_string(i));
        auto fields = split(line, ',');
        double w = 0.0;
        unsigned long u = 0, v = 0;
        if (fields.size() != 3 || !(std::istringstream(fields[0]) >> u) ||
            !(std::istringstream(fields[1]) >> v) || !parse_double(fields[2], w))
            throw ParseError("bad edge row: '" + line + "'");
        es.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), w});
    }
    return WeightedGraph(nodes, std::move(es), std::move(info));
}

}  // namespace netdisrupt
