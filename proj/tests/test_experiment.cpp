#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "netdisrupt/errors.hpp"
#include "netdisrupt/experiment.hpp"
#include "netdisrupt/rng.hpp"

using namespace netdisrupt;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "netdisrupt_experiment_tests";
    fs::create_directories(dir);
    return dir;
}

// Barbell with named nodes; enough structure that strategies disagree.
WeightedGraph test_graph() {
    std::vector<NodeInfo> info;
    for (int i = 0; i < 8; ++i) info.push_back({"n" + std::to_string(i + 1), ""});
    return WeightedGraph(8,
                         {{0, 1, 1.0},
                          {0, 2, 1.0},
                          {1, 2, 1.0},
                          {2, 3, 1.0},
                          {3, 4, 1.0},
                          {4, 5, 1.0},
                          {5, 6, 1.0},
                          {5, 7, 1.0},
                          {6, 7, 1.0}},
                         std::move(info));
}

GaConfig small_ga() {
    GaConfig ga;
    ga.generations = 15;
    ga.population_size = 16;
    ga.num_parents = 8;
    return ga;
}

SweepPlan make_plan(std::vector<std::string> strategies, std::vector<int> budgets,
                    std::uint64_t master = 99) {
    SweepPlan plan;
    plan.dataset_id = "testnet";
    for (const auto& s : strategies) plan.strategies.push_back(*parse_strategy(s));
    plan.budgets = std::move(budgets);
    plan.master_seed = master;
    plan.ga = small_ga();
    return plan;
}

SweepResult make_record(const std::string& strategy, int budget, double rho, double D,
                        std::vector<std::string> labels, const std::string& dataset = "testnet") {
    SweepResult r;
    r.dataset = dataset;
    r.strategy = strategy;
    r.budget = budget;
    r.seed = 1;
    r.rho = rho;
    r.D = D;
    r.raw_mean_distance = D * 100.0;
    r.removal_labels = std::move(labels);
    r.fingerprint = "fp_" + dataset + "_" + strategy + "_" + std::to_string(budget);
    return r;
}

}  // namespace

TEST_CASE("parse_strategy recognizes every strategy family") {
    CHECK(parse_strategy("wsga")->kind == StrategySpec::Kind::wsga);
    CHECK(parse_strategy("nsga2")->kind == StrategySpec::Kind::nsga2);
    CHECK(parse_strategy("explicit-list")->kind == StrategySpec::Kind::explicit_list);
    CHECK(parse_strategy("explicit")->kind == StrategySpec::Kind::explicit_list);
    CHECK(parse_strategy("explicit")->label == "explicit-list");

    auto b = parse_strategy("seq-betweenness-w");
    REQUIRE(b.has_value());
    CHECK(b->kind == StrategySpec::Kind::baseline);
    CHECK(b->baseline.weighted);
    CHECK(b->label == "seq-betweenness-w");

    CHECK_FALSE(parse_strategy("annealing").has_value());
    CHECK_FALSE(parse_strategy("").has_value());
}

TEST_CASE("derive_cell_seed separates cells and stays deterministic") {
    const std::uint64_t a = derive_cell_seed(7, "ds", "wsga", 5);
    CHECK(a == derive_cell_seed(7, "ds", "wsga", 5));
    std::set<std::uint64_t> seen{a};
    CHECK(seen.insert(derive_cell_seed(8, "ds", "wsga", 5)).second);   // master matters
    CHECK(seen.insert(derive_cell_seed(7, "ds2", "wsga", 5)).second);  // dataset matters
    CHECK(seen.insert(derive_cell_seed(7, "ds", "nsga2", 5)).second);  // strategy matters
    CHECK(seen.insert(derive_cell_seed(7, "ds", "wsga", 6)).second);   // budget matters
}

TEST_CASE("sweep fingerprints isolate GA config changes to GA cells") {
    SpatialLayout layout = generate_layout(8, 100.0, 100.0, 1, 3);
    GaConfig ga = small_ga();
    GaConfig ga2 = ga;
    ga2.generations += 5;

    // GA strategies: config is part of the identity.
    CHECK(sweep_fingerprint("ds", "wsga", 3, 1, ga, layout) !=
          sweep_fingerprint("ds", "wsga", 3, 1, ga2, layout));
    // Baselines: GA config is irrelevant, so existing cells survive GA tuning.
    CHECK(sweep_fingerprint("ds", "seq-degree", 3, 1, ga, layout) ==
          sweep_fingerprint("ds", "seq-degree", 3, 1, ga2, layout));
    // Layout is always part of the identity.
    SpatialLayout other = generate_layout(8, 100.0, 100.0, 1, 4);
    CHECK(sweep_fingerprint("ds", "seq-degree", 3, 1, ga, layout) !=
          sweep_fingerprint("ds", "seq-degree", 3, 1, ga, other));
}

TEST_CASE("run_sweep covers the grid in deterministic order") {
    WeightedGraph g = test_graph();
    SpatialLayout layout = generate_layout(8, 100.0, 100.0, 2, 17);
    Evaluator eval(g, layout);
    SweepPlan plan = make_plan({"seq-degree", "wsga"}, {1, 2, 3});

    auto rows = run_sweep(eval, plan);
    REQUIRE(rows.size() == 6);
    // Strategy-major, budget-minor order.
    CHECK(rows[0].strategy == "seq-degree");
    CHECK(rows[0].budget == 1);
    CHECK(rows[2].budget == 3);
    CHECK(rows[3].strategy == "wsga");

    for (const auto& r : rows) {
        CHECK(r.dataset == "testnet");
        REQUIRE(r.removal_labels.size() == static_cast<std::size_t>(r.budget));
        CHECK(!r.fingerprint.empty());
        CHECK(r.rho >= 0.0);
        CHECK(r.rho <= 1.0);
        // Labels resolve back to distinct present nodes.
        std::set<std::string> unique(r.removal_labels.begin(), r.removal_labels.end());
        CHECK(unique.size() == r.removal_labels.size());
    }

    // A second identical sweep reproduces the records bit-for-bit.
    auto again = run_sweep(eval, plan);
    REQUIRE(again.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(again[i].rho == rows[i].rho);
        CHECK(again[i].D == rows[i].D);
        CHECK(again[i].removal_labels == rows[i].removal_labels);
        CHECK(again[i].fingerprint == rows[i].fingerprint);
    }
}

TEST_CASE("run_sweep resumes by skipping existing fingerprints") {
    WeightedGraph g = test_graph();
    SpatialLayout layout = generate_layout(8, 100.0, 100.0, 2, 17);
    Evaluator eval(g, layout);
    SweepPlan plan = make_plan({"seq-degree", "block-degree"}, {1, 2});

    auto all = run_sweep(eval, plan);
    REQUIRE(all.size() == 4);

    // Feed half the records back as existing.
    std::vector<SweepResult> existing{all[0], all[3]};
    auto rest = run_sweep(eval, plan, existing);
    REQUIRE(rest.size() == 2);
    CHECK(rest[0].fingerprint == all[1].fingerprint);
    CHECK(rest[1].fingerprint == all[2].fingerprint);

    // Everything existing: nothing to do.
    CHECK(run_sweep(eval, plan, all).empty());
}

TEST_CASE("run_sweep validates budgets against the graph") {
    WeightedGraph g = test_graph();
    SpatialLayout layout = generate_layout(8, 100.0, 100.0, 2, 17);
    Evaluator eval(g, layout);
    SweepPlan bad = make_plan({"seq-degree"}, {0});
    CHECK_THROWS_AS(run_sweep(eval, bad), ConfigError);
    SweepPlan over = make_plan({"seq-degree"}, {9});
    CHECK_THROWS_AS(run_sweep(eval, over), ConfigError);
}

TEST_CASE("explicit strategy records the supplied list") {
    WeightedGraph g = test_graph();
    SpatialLayout layout = generate_layout(8, 100.0, 100.0, 2, 17);
    Evaluator eval(g, layout);

    SweepPlan plan = make_plan({}, {2});
    auto spec = *parse_strategy("explicit-list");
    spec.explicit_nodes = {2, 5};  // the two triangle gates
    plan.strategies.push_back(spec);

    auto rows = run_sweep(eval, plan);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].strategy == "explicit-list");
    CHECK(rows[0].removal_labels == std::vector<std::string>{"n3", "n6"});
    CHECK(rows[0].rho == doctest::Approx(2.0 / 8.0));  // barbell splits into 2+3+3... largest 3
}

TEST_CASE("explicit strategy size must match the budget") {
    WeightedGraph g = test_graph();
    SpatialLayout layout = generate_layout(8, 100.0, 100.0, 2, 17);
    Evaluator eval(g, layout);
    SweepPlan plan = make_plan({}, {3});
    auto spec = *parse_strategy("explicit-list");
    spec.explicit_nodes = {2, 5};
    plan.strategies.push_back(spec);
    CHECK_THROWS_AS(run_sweep(eval, plan), ConfigError);
}

TEST_CASE("combined_pareto keeps exactly the non-dominated records") {
    std::vector<SweepResult> rs{
        make_record("a", 1, 0.8, 0.3, {"x"}),   // kept: cheapest
        make_record("b", 2, 0.5, 0.2, {"x"}),   // kept
        make_record("c", 2, 0.5, 0.4, {"x"}),   // dominated by b
        make_record("d", 3, 0.5, 0.2, {"x"}),   // dominated by b (higher budget)
        make_record("e", 3, 0.1, 0.9, {"x"}),   // kept: best rho
    };
    auto front = combined_pareto(rs);
    std::vector<std::string> kept;
    for (const auto& r : front) kept.push_back(r.strategy);
    std::sort(kept.begin(), kept.end());
    CHECK(kept == std::vector<std::string>{"a", "b", "e"});

    // No front member dominates another (minimization, all three axes).
    for (const auto& p : front) {
        for (const auto& q : front) {
            const bool dominates_q = (p.budget <= q.budget && p.rho <= q.rho && p.D <= q.D) &&
                                     (p.budget < q.budget || p.rho < q.rho || p.D < q.D);
            CHECK_FALSE(dominates_q);
        }
    }
}

TEST_CASE("selection_histogram counts node appearances") {
    std::vector<SweepResult> rs{
        make_record("wsga", 1, 0.9, 0.1, {"n1"}),
        make_record("wsga", 2, 0.7, 0.1, {"n1", "n2"}),
        make_record("wsga", 3, 0.5, 0.1, {"n1", "n2", "n7"}),
    };
    auto hist = selection_histogram(rs);
    CHECK(hist.dataset == "testnet");
    CHECK(hist.strategy == "wsga");
    CHECK(hist.budgets_swept == 3);
    CHECK(hist.counts.at("n1") == 3);
    CHECK(hist.counts.at("n2") == 2);
    CHECK(hist.counts.at("n7") == 1);

    // Conservation: total count equals the sum of budgets.
    CHECK(hist.total() == 1 + 2 + 3);

    CHECK(hist.top_k(2) == std::vector<std::string>{"n1", "n2"});
    CHECK(hist.bottom_k(1) == std::vector<std::string>{"n7"});

    // Numeric-aware ordering: n7 sorts after n2 despite lexicographic order.
    auto top_all = hist.top_k(10);
    REQUIRE(top_all.size() == 3);
    CHECK(top_all[2] == "n7");
}

TEST_CASE("selection_histogram rejects mixed inputs") {
    std::vector<SweepResult> mixed{make_record("wsga", 1, 0.9, 0.1, {"n1"}),
                                   make_record("nsga2", 1, 0.9, 0.1, {"n1"})};
    CHECK_THROWS_AS(selection_histogram(mixed), InputError);

    std::vector<SweepResult> mixed_ds{
        make_record("wsga", 1, 0.9, 0.1, {"n1"}),
        make_record("wsga", 2, 0.9, 0.1, {"n1", "n2"}, "othernet")};
    CHECK_THROWS_AS(selection_histogram(mixed_ds), InputError);

    std::vector<SweepResult> empty;
    CHECK_THROWS_AS(selection_histogram(empty), InputError);
}

TEST_CASE("comparison_report averages across datasets at a fixed budget") {
    std::vector<SweepResult> rs{
        make_record("wsga", 5, 0.4, 0.2, {"a"}, "net1"),
        make_record("wsga", 5, 0.6, 0.4, {"a"}, "net2"),
        make_record("seq-degree", 5, 0.3, 0.8, {"a"}, "net1"),
        make_record("seq-degree", 5, 0.5, 0.6, {"a"}, "net2"),
        make_record("wsga", 6, 0.1, 0.1, {"a"}, "net1"),  // other budget: ignored
    };
    std::vector<std::string> strategies{"wsga", "seq-degree"};
    auto report = comparison_report(rs, 5, strategies);
    CHECK(report.budget == 5);
    CHECK(report.averaged);
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[0].strategy == "wsga");
    CHECK(report.rows[0].rho == doctest::Approx(0.5));
    CHECK(report.rows[0].D == doctest::Approx(0.3));
    REQUIRE(report.rows[0].datasets.size() == 2);

    // Single-dataset report is not averaged.
    std::vector<SweepResult> solo{make_record("wsga", 5, 0.4, 0.2, {"a"}, "net1")};
    std::vector<std::string> one{"wsga"};
    auto single = comparison_report(solo, 5, one);
    CHECK_FALSE(single.averaged);
    CHECK(single.rows[0].rho == doctest::Approx(0.4));
}

TEST_CASE("comparison_report lists missing records") {
    std::vector<SweepResult> rs{make_record("wsga", 5, 0.4, 0.2, {"a"}, "net1"),
                                make_record("seq-degree", 5, 0.3, 0.8, {"a"}, "net1")};
    std::vector<std::string> strategies{"wsga", "nsga2"};
    try {
        comparison_report(rs, 5, strategies);
        FAIL("expected InputError");
    } catch (const InputError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("incomplete") != std::string::npos);
        CHECK(msg.find("nsga2") != std::string::npos);
    }
}

TEST_CASE("results CSV round trips exactly") {
    const fs::path file = temp_dir() / "results_roundtrip.csv";
    fs::remove(file);

    std::vector<SweepResult> rs{make_record("wsga", 2, 0.53125, 0.171875, {"n1", "n5"}),
                                make_record("seq-degree", 1, 1.0 / 3.0, 0.9, {"n2"})};
    append_results_csv(rs, file);
    auto loaded = load_results_csv(file);
    REQUIRE(loaded.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(loaded[i].dataset == rs[i].dataset);
        CHECK(loaded[i].strategy == rs[i].strategy);
        CHECK(loaded[i].budget == rs[i].budget);
        CHECK(loaded[i].seed == rs[i].seed);
        CHECK(loaded[i].rho == rs[i].rho);  // exact: shortest round-trip formatting
        CHECK(loaded[i].D == rs[i].D);
        CHECK(loaded[i].raw_mean_distance == rs[i].raw_mean_distance);
        CHECK(loaded[i].removal_labels == rs[i].removal_labels);
        CHECK(loaded[i].fingerprint == rs[i].fingerprint);
    }

    // Appending adds rows without rewriting the header.
    append_results_csv(std::vector<SweepResult>{make_record("nsga2", 1, 0.5, 0.5, {"n3"})}, file);
    CHECK(load_results_csv(file).size() == 3);

    std::ifstream in(file);
    std::string first_line;
    std::getline(in, first_line);
    CHECK(first_line == kResultsCsvHeader);
}

TEST_CASE("load_results_csv failure modes") {
    CHECK_THROWS_WITH_AS(load_results_csv(temp_dir() / "absent.csv"),
                         doctest::Contains("no results found"), InputError);

    const fs::path bad_header = temp_dir() / "bad_header.csv";
    std::ofstream(bad_header) << "who,what\n1,2\n";
    CHECK_THROWS_AS(load_results_csv(bad_header), ParseError);

    const fs::path bad_row = temp_dir() / "bad_row.csv";
    std::ofstream(bad_row) << kResultsCsvHeader << "\nds,wsga,notanumber,1,0.5,0.5,1.0,n1,abc\n";
    CHECK_THROWS_AS(load_results_csv(bad_row), ParseError);
}

TEST_CASE("results_csv_row rejects labels that would corrupt the store") {
    SweepResult r = make_record("wsga", 1, 0.5, 0.5, {"bad,label"});
    CHECK_THROWS_AS(results_csv_row(r), InputError);
    SweepResult r2 = make_record("wsga", 1, 0.5, 0.5, {"bad;label"});
    CHECK_THROWS_AS(results_csv_row(r2), InputError);
}
