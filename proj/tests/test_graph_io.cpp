#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "netdisrupt/errors.hpp"
#include "netdisrupt/graph_io.hpp"

using namespace netdisrupt;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "netdisrupt_io_tests";
    fs::create_directories(dir);
    return dir;
}

fs::path write_file(const std::string& name, const std::string& content) {
    const fs::path p = temp_dir() / name;
    std::ofstream out(p);
    out << content;
    return p;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("csv ingest with header maps labels in first-appearance order") {
    const auto p = write_file("basic.csv",
                              "source,target,weight\n"
                              "anna,bruno,2\n"
                              "bruno,carla,1\n"
                              "anna,carla,0.5\n");
    IngestReport rep;
    WeightedGraph g = ingest_edge_list(p, EdgeListFormat::auto_detect, &rep);
    CHECK(rep.nodes == 3);
    CHECK(rep.edges == 3);
    CHECK(rep.merged_duplicates == 0);
    CHECK(rep.dropped_self_loops == 0);
    CHECK(g.id_of_label("anna") == 0);
    CHECK(g.id_of_label("bruno") == 1);
    CHECK(g.id_of_label("carla") == 2);
    CHECK(g.strength(0) == doctest::Approx(2.5));
}

TEST_CASE("headerless csv and whitespace formats both parse") {
    const auto csv = write_file("nohdr.csv", "1,2,1\n2,3,4\n");
    WeightedGraph a = ingest_edge_list(csv);
    CHECK(a.node_count() == 3);
    CHECK(a.edge_count() == 2);

    const auto ws = write_file("plain.txt", "1 2 1\n2 3 4\n");
    WeightedGraph b = ingest_edge_list(ws);
    CHECK(b.node_count() == 3);
    CHECK(b.edge_count() == 2);
    CHECK(b.strength(2) == doctest::Approx(4.0));

    // Forcing the wrong format fails loudly rather than mis-parsing.
    CHECK_THROWS_AS(ingest_edge_list(ws, EdgeListFormat::csv), ParseError);
}

TEST_CASE("duplicate edges merge with summed weight and are counted") {
    const auto p = write_file("dups.csv",
                              "a,b,1\n"
                              "b,a,2\n"   // same undirected edge, reversed
                              "a,b,0.5\n"
                              "b,c,1\n");
    IngestReport rep;
    WeightedGraph g = ingest_edge_list(p, EdgeListFormat::auto_detect, &rep);
    CHECK(rep.merged_duplicates == 2);
    CHECK(g.edge_count() == 2);
    CHECK(g.strength(0) == doctest::Approx(3.5));  // 1 + 2 + 0.5
}

TEST_CASE("self-loops are dropped and counted") {
    const auto p = write_file("loops.csv", "a,a,3\na,b,1\nb,b,9\n");
    IngestReport rep;
    WeightedGraph g = ingest_edge_list(p, EdgeListFormat::auto_detect, &rep);
    CHECK(rep.dropped_self_loops == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.node_count() == 2);
}

TEST_CASE("ingest failure modes") {
    CHECK_THROWS_AS(ingest_edge_list(temp_dir() / "missing.csv"), ParseError);

    const auto empty = write_file("empty.csv", "# just a comment\n");
    CHECK_THROWS_AS(ingest_edge_list(empty), ParseError);

    const auto short_row = write_file("short.csv", "a,b\n");
    CHECK_THROWS_AS(ingest_edge_list(short_row), ParseError);

    const auto bad_weight = write_file("badw.csv", "a,b,1\nc,d,heavy\n");
    CHECK_THROWS_AS(ingest_edge_list(bad_weight), ParseError);

    const auto neg_weight = write_file("negw.csv", "a,b,-1\n");
    CHECK_THROWS_AS(ingest_edge_list(neg_weight), ParseError);

    const auto zero_weight = write_file("zerow.csv", "a,b,0\n");
    CHECK_THROWS_AS(ingest_edge_list(zero_weight), ParseError);
}

TEST_CASE("roles file attaches metadata; unknown labels are rejected") {
    const auto edges = write_file("roles_edges.csv", "x,y,1\ny,z,1\n");
    const auto roles = write_file("roles.csv", "x,boss\nz,runner\n");
    WeightedGraph g = ingest_edge_list(edges, EdgeListFormat::auto_detect, nullptr, roles);
    CHECK(g.info(g.id_of_label("x")).role == "boss");
    CHECK(g.info(g.id_of_label("y")).role == "");
    CHECK(g.info(g.id_of_label("z")).role == "runner");

    const auto bad = write_file("roles_bad.csv", "nobody,ghost\n");
    CHECK_THROWS_AS(ingest_edge_list(edges, EdgeListFormat::auto_detect, nullptr, bad), InputError);
}

TEST_CASE("comments and blank lines are ignored") {
    const auto p = write_file("comments.csv", "# edge list\n\na,b,1\n# trailing\nb,c,2\n\n");
    WeightedGraph g = ingest_edge_list(p);
    CHECK(g.edge_count() == 2);
}

TEST_CASE("bundled datasets ingest with their documented shapes") {
    const fs::path data(NETDISRUPT_DATA_DIR);
    IngestReport meeting, phone;
    ingest_edge_list(data / "montagna_meeting.csv", EdgeListFormat::auto_detect, &meeting);
    ingest_edge_list(data / "montagna_phone.csv", EdgeListFormat::auto_detect, &phone);
    CHECK(meeting.nodes == 95);
    CHECK(meeting.edges == 249);
    CHECK(phone.nodes == 94);
    CHECK(phone.edges == 120);
}

TEST_CASE("canonical save/load round trip preserves everything") {
    const auto raw = write_file("rt.csv", "anna,bruno,2\nbruno,carla,1.5\ncarla,anna,0.25\n");
    const auto roles = write_file("rt_roles.csv", "bruno,driver\n");
    WeightedGraph g = ingest_edge_list(raw, EdgeListFormat::auto_detect, nullptr, roles);

    const fs::path gf = temp_dir() / "rt_graph.csv";
    save_graph(g, gf);
    WeightedGraph h = load_graph(gf);

    CHECK(h.structure_hash() == g.structure_hash());
    CHECK(h.node_count() == g.node_count());
    CHECK(h.info(1).label == "bruno");
    CHECK(h.info(1).role == "driver");
    CHECK(h.id_of_label("carla") == g.id_of_label("carla"));

    // Saving the loaded graph again is byte-identical: the format is canonical.
    const fs::path gf2 = temp_dir() / "rt_graph2.csv";
    save_graph(h, gf2);
    CHECK(read_file(gf) == read_file(gf2));
}

TEST_CASE("load_graph rejects malformed files") {
    const auto bad_header = write_file("g_badhdr.csv", "nodes=2 edges=1\n");
    CHECK_THROWS_AS(load_graph(bad_header), ParseError);

    const auto truncated = write_file("g_trunc.csv",
                                      "# netdisrupt-graph nodes=3 edges=2\n"
                                      "id,label,role\n"
                                      "0,a,\n"
                                      "1,b,\n");
    CHECK_THROWS_AS(load_graph(truncated), ParseError);

    const auto bad_ids = write_file("g_ids.csv",
                                    "# netdisrupt-graph nodes=2 edges=1\n"
                                    "id,label,role\n"
                                    "0,a,\n"
                                    "5,b,\n"
                                    "u,v,weight\n"
                                    "0,1,1\n");
    CHECK_THROWS_AS(load_graph(bad_ids), ParseError);

    CHECK_THROWS_AS(load_graph(temp_dir() / "nope.csv"), ParseError);
}

TEST_CASE("labels with commas cannot be written to the canonical format") {
    WeightedGraph g(2, {{0, 1, 1.0}}, {{"a,b", ""}, {"c", ""}});
    CHECK_THROWS_AS(save_graph(g, temp_dir() / "evil.csv"), InputError);
}
