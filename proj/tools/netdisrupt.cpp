// netdisrupt CLI: ingestion, layout generation, baselines, GA runs, sweeps
// and reports, bound into reproducible invocations. Every invocation writes a
// config snapshot next to its outputs; all randomness flows from one master
// seed. Exit codes: 0 success, 2 configuration, 3 input/parse, 4 runtime.

#include <omp.h>

#include <CLI11.hpp>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "netdisrupt/baselines.hpp"
#include "netdisrupt/errors.hpp"
#include "netdisrupt/experiment.hpp"
#include "netdisrupt/graph_io.hpp"
#include "netdisrupt/moga.hpp"
#include "netdisrupt/objectives.hpp"
#include "netdisrupt/spatial.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace netdisrupt;

namespace {

// Files created by the current command; removed again if it fails so no
// partial outputs survive.
std::vector<fs::path> g_created;

std::ofstream create_output(const fs::path& path) {
    const bool existed = fs::exists(path);
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path.string() + "'");
    if (!existed) g_created.push_back(path);
    return out;
}

void remove_partial_outputs() {
    for (const auto& f : g_created) {
        std::error_code ec;
        fs::remove(f, ec);
    }
    g_created.clear();
}

struct CommonOpts {
    std::string dataset;
    std::string dataset_id;
    std::string layout_file;
    std::string bbox = "1000x1000";
    std::size_t hqs = 3;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    int workers = 0;
    std::string format = "auto";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_dataset) {
    auto* ds = cmd->add_option("--dataset", o.dataset, "edge list or canonical graph file")
                   ->envname("NETDISRUPT_DATASET");
    if (needs_dataset) ds->required();
    cmd->add_option("--dataset-id", o.dataset_id, "dataset id for records (default: file stem)");
    cmd->add_option("--layout", o.layout_file, "layout file produced by the layout command")
        ->envname("NETDISRUPT_LAYOUT");
    cmd->add_option("--bbox", o.bbox, "bounding box WxH used when no layout file is given")
        ->envname("NETDISRUPT_BBOX");
    cmd->add_option("--hqs", o.hqs, "number of LEA headquarters for generated layouts")
        ->envname("NETDISRUPT_HQS");
    cmd->add_option("--out", o.out_dir, "output directory")->envname("NETDISRUPT_OUT");
    cmd->add_option("--seed", o.seed, "master seed (omit for a random, printed seed)")
        ->envname("NETDISRUPT_SEED");
    cmd->add_option("--workers", o.workers, "worker threads (default: all cores)")
        ->envname("NETDISRUPT_WORKERS");
    cmd->add_option("--format", o.format, "edge list format: auto, csv, whitespace")
        ->envname("NETDISRUPT_FORMAT");
}

struct GaOpts {
    int generations = 500;
    int population = 500;
    int parents = 250;
    int tournament = 2;
    double crossover_prob = 0.9;
    double mutation_prob = 0.1;
    double gene_replace_prob = 0.1;
    std::string weights = "0.5,0.5";
};

void add_ga(CLI::App* cmd, GaOpts& o) {
    cmd->add_option("--generations", o.generations, "GA generations");
    cmd->add_option("--population", o.population, "GA population size");
    cmd->add_option("--parents", o.parents, "mating pool size");
    cmd->add_option("--tournament", o.tournament, "tournament size");
    cmd->add_option("--crossover-prob", o.crossover_prob, "crossover probability");
    cmd->add_option("--mutation-prob", o.mutation_prob, "per-genome scramble probability");
    cmd->add_option("--gene-replace-prob", o.gene_replace_prob,
                    "per-gene replacement probability inside a scrambled slice");
    cmd->add_option("--weights", o.weights, "objective weights w_rho,w_spatial");
}

EdgeListFormat parse_format(const std::string& s) {
    if (s == "auto") return EdgeListFormat::auto_detect;
    if (s == "csv") return EdgeListFormat::csv;
    if (s == "whitespace") return EdgeListFormat::whitespace;
    throw ConfigError("unknown edge list format '" + s + "'");
}

std::pair<double, double> parse_bbox(const std::string& s) {
    double w = 0.0, h = 0.0;
    char sep = 0;
    std::istringstream in(s);
    if (!(in >> w >> sep >> h) || (sep != 'x' && sep != ',') || !(w > 0.0) || !(h > 0.0))
        throw ConfigError("bad bbox '" + s + "': expected WxH with positive dimensions");
    return {w, h};
}

std::pair<double, double> parse_weights(const std::string& s) {
    double a = 0.0, b = 0.0;
    char sep = 0;
    std::istringstream in(s);
    if (!(in >> a >> sep >> b) || sep != ',')
        throw ConfigError("bad weights '" + s + "': expected w_rho,w_spatial");
    return {a, b};
}

std::vector<int> parse_budgets(const std::string& s) {
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t end = s.find(',', start);
        if (end == std::string::npos) end = s.size();
        const std::string tok = s.substr(start, end - start);
        if (!tok.empty()) {
            const std::size_t dots = tok.find("..");
            try {
                if (dots == std::string::npos) {
                    out.push_back(std::stoi(tok));
                } else {
                    const int lo = std::stoi(tok.substr(0, dots));
                    const int hi = std::stoi(tok.substr(dots + 2));
                    if (hi < lo) throw ConfigError("bad budget range '" + tok + "'");
                    for (int b = lo; b <= hi; ++b) out.push_back(b);
                }
            } catch (const ConfigError&) {
                throw;
            } catch (const std::exception&) {
                throw ConfigError("bad budget token '" + tok + "'");
            }
        }
        start = end + 1;
    }
    if (out.empty()) throw ConfigError("no budgets given");
    return out;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> seed) {
    if (seed) return *seed;
    std::random_device rd;
    const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::cout << "seed: " << s << " (chosen randomly; pass --seed " << s << " to reproduce)\n";
    return s;
}

void apply_workers(int workers) {
    if (workers > 0) omp_set_num_threads(workers);
}

std::string dataset_id_of(const CommonOpts& o) {
    if (!o.dataset_id.empty()) return o.dataset_id;
    return fs::path(o.dataset).stem().string();
}

// Canonical graph files are recognized by their header; anything else goes
// through the raw edge-list parser.
WeightedGraph load_dataset(const CommonOpts& o, IngestReport* report = nullptr) {
    if (o.dataset.empty()) throw ConfigError("--dataset is required");
    std::ifstream probe(o.dataset);
    if (!probe) throw ParseError("cannot open dataset '" + o.dataset + "'");
    std::string first;
    std::getline(probe, first);
    probe.close();
    if (first.rfind("# netdisrupt-graph", 0) == 0) return load_graph(o.dataset);
    return ingest_edge_list(o.dataset, parse_format(o.format), report);
}

SpatialLayout resolve_layout(const CommonOpts& o, const WeightedGraph& g, std::uint64_t seed) {
    if (!o.layout_file.empty()) {
        SpatialLayout layout = load_layout(o.layout_file);
        bind_layout(layout, g);
        return layout;
    }
    const auto [w, h] = parse_bbox(o.bbox);
    return generate_layout(g.id_limit(), w, h, o.hqs, seed);
}

GaConfig make_ga_config(const GaOpts& o, std::uint64_t seed) {
    GaConfig cfg;
    cfg.generations = o.generations;
    cfg.population_size = o.population;
    cfg.num_parents = o.parents;
    cfg.tournament_size = o.tournament;
    cfg.crossover_prob = o.crossover_prob;
    cfg.mutation_prob = o.mutation_prob;
    cfg.gene_replace_prob = o.gene_replace_prob;
    const auto [wr, ws] = parse_weights(o.weights);
    cfg.w_rho = wr;
    cfg.w_spatial = ws;
    cfg.seed = seed;
    cfg.validate();
    return cfg;
}

json common_json(const CommonOpts& o, std::uint64_t seed) {
    // --workers and --out are deliberately absent: neither affects results.
    json j;
    j["dataset"] = o.dataset;
    j["dataset_id"] = dataset_id_of(o);
    j["layout"] = o.layout_file;
    j["bbox"] = o.bbox;
    j["hqs"] = o.hqs;
    j["seed"] = seed;
    j["format"] = o.format;
    return j;
}

json ga_json(const GaOpts& o) {
    json j;
    j["generations"] = o.generations;
    j["population"] = o.population;
    j["parents"] = o.parents;
    j["tournament"] = o.tournament;
    j["crossover_prob"] = o.crossover_prob;
    j["mutation_prob"] = o.mutation_prob;
    j["gene_replace_prob"] = o.gene_replace_prob;
    j["weights"] = o.weights;
    return j;
}

void write_config(const fs::path& dir, const std::string& command, const json& body) {
    json j;
    j["command"] = command;
    j["config"] = body;
    auto out = create_output(dir / ("config_" + command + ".json"));
    out << j.dump(2) << "\n";
}

fs::path ensure_out_dir(const CommonOpts& o) {
    fs::path dir(o.out_dir);
    fs::create_directories(dir);
    return dir;
}

std::vector<std::string> read_label_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open removal list '" + path.string() + "'");
    std::vector<std::string> labels;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        labels.push_back(line);
    }
    if (labels.empty()) throw InputError("removal list '" + path.string() + "' is empty");
    return labels;
}

// Existing records are loaded for resumption when the store already exists.
std::vector<SweepResult> load_existing_results(const fs::path& file) {
    if (!fs::exists(file)) return {};
    return load_results_csv(file);
}

void append_and_track(const std::vector<SweepResult>& rows, const fs::path& file) {
    if (rows.empty()) return;
    const bool existed = fs::exists(file);
    append_results_csv(rows, file);
    if (!existed) g_created.push_back(file);
}

void write_front_csv(const Nsga2Result& res, const fs::path& path) {
    auto out = create_output(path);
    out << "f_rho,f_spatial,rho,D,raw_mean_distance,removal_set\n";
    char buf[64];
    auto fmt = [&](double v) {
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
        (void)ec;
        return std::string(buf, ptr);
    };
    for (const auto& ind : res.front) {
        std::string removal;
        for (NodeId v : ind.genome.sorted_set()) {
            if (!removal.empty()) removal += ';';
            removal += std::to_string(v);
        }
        out << fmt(ind.objectives.f_rho) << ',' << fmt(ind.objectives.f_spatial) << ','
            << fmt(ind.objectives.rho) << ',' << fmt(ind.objectives.D) << ','
            << fmt(ind.objectives.raw_mean_distance) << ',' << removal << "\n";
    }
}

int cmd_ingest(const CommonOpts& common) {
    const fs::path dir = ensure_out_dir(common);
    IngestReport report;
    WeightedGraph g = ingest_edge_list(common.dataset, parse_format(common.format), &report);
    if (report.merged_duplicates > 0)
        std::cerr << "warning: merged " << report.merged_duplicates
                  << " duplicate edge(s), weights summed\n";
    if (report.dropped_self_loops > 0)
        std::cerr << "warning: dropped " << report.dropped_self_loops << " self-loop(s)\n";
    const fs::path graph_file = dir / "graph.csv";
    {
        const bool existed = fs::exists(graph_file);
        save_graph(g, graph_file);
        if (!existed) g_created.push_back(graph_file);
    }
    json body;
    body["dataset"] = common.dataset;
    body["format"] = common.format;
    body["nodes"] = report.nodes;
    body["edges"] = report.edges;
    write_config(dir, "ingest", body);
    std::cout << report.nodes << " nodes, " << report.edges << " edges\n";
    std::cout << "graph: " << graph_file.string() << "\n";
    return 0;
}

int cmd_layout(const CommonOpts& common) {
    const fs::path dir = ensure_out_dir(common);
    const std::uint64_t seed = resolve_seed(common.seed);
    WeightedGraph g = load_dataset(common);
    const auto [w, h] = parse_bbox(common.bbox);
    SpatialLayout layout = generate_layout(g.id_limit(), w, h, common.hqs, seed);
    const fs::path layout_file = dir / "layout.csv";
    {
        const bool existed = fs::exists(layout_file);
        save_layout(layout, layout_file);
        if (!existed) g_created.push_back(layout_file);
    }
    write_config(dir, "layout", common_json(common, seed));
    std::cout << "layout: " << layout_file.string() << "\n";
    return 0;
}

int cmd_baseline(const CommonOpts& common, const std::string& strategy_label, int budget,
                 const std::string& explicit_file) {
    const fs::path dir = ensure_out_dir(common);
    const std::uint64_t seed = resolve_seed(common.seed);
    WeightedGraph g = load_dataset(common);
    SpatialLayout layout = resolve_layout(common, g, seed);
    Evaluator eval(g, layout);

    auto strat = parse_strategy(strategy_label);
    if (!strat || strat->kind == StrategySpec::Kind::wsga || strat->kind == StrategySpec::Kind::nsga2)
        throw ConfigError("'" + strategy_label + "' is not a baseline strategy label");
    if (strat->kind == StrategySpec::Kind::explicit_list) {
        if (explicit_file.empty())
            throw ConfigError("strategy explicit-list needs --explicit <file of node labels>");
        strat->explicit_nodes = removal_from_labels(g, read_label_file(explicit_file)).nodes;
        if (budget == 0) budget = static_cast<int>(strat->explicit_nodes.size());
    }
    if (budget == 0) throw ConfigError("--budget is required");

    SweepPlan plan;
    plan.dataset_id = dataset_id_of(common);
    plan.strategies = {*strat};
    plan.budgets = {budget};
    plan.master_seed = seed;
    const fs::path results_file = dir / "results.csv";
    auto existing = load_existing_results(results_file);
    auto rows = run_sweep(eval, plan, existing);
    append_and_track(rows, results_file);

    // Sequential runs also leave their per-step trace next to the store.
    if (strat->kind == StrategySpec::Kind::baseline &&
        strat->baseline.mode == RemovalMode::sequential) {
        auto trace = sequential_removal(eval, strat->baseline, static_cast<std::size_t>(budget));
        auto out = create_output(dir / ("trace_" + strat->label + "_budget" +
                                        std::to_string(budget) + ".csv"));
        out << "step,removed_label,rho,D\n";
        char buf[64];
        auto fmt = [&](double v) {
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
            (void)ec;
            return std::string(buf, ptr);
        };
        for (const auto& step : trace.steps)
            out << step.step << ',' << g.info(step.removed).label << ',' << fmt(step.rho) << ','
                << fmt(step.spatial) << "\n";
    }

    json body = common_json(common, seed);
    body["strategy"] = strat->label;
    body["budget"] = budget;
    if (!explicit_file.empty()) body["explicit"] = explicit_file;
    write_config(dir, "baseline", body);

    const auto* row = rows.empty() ? nullptr : &rows.front();
    if (row)
        std::cout << plan.dataset_id << " " << strat->label << " budget=" << budget
                  << " rho=" << row->rho << " D=" << row->D << "\n";
    else
        std::cout << "record already present (fingerprint match); nothing to do\n";
    std::cout << "results: " << results_file.string() << "\n";
    return 0;
}

int cmd_optimize(const CommonOpts& common, const GaOpts& ga, const std::string& algo, int budget) {
    if (budget < 1) throw ConfigError("--budget is required");
    if (algo != "wsga" && algo != "nsga2")
        throw ConfigError("--algo must be wsga or nsga2, got '" + algo + "'");
    const fs::path dir = ensure_out_dir(common);
    const std::uint64_t seed = resolve_seed(common.seed);
    WeightedGraph g = load_dataset(common);
    SpatialLayout layout = resolve_layout(common, g, seed);
    Evaluator eval(g, layout);

    SweepPlan plan;
    plan.dataset_id = dataset_id_of(common);
    plan.strategies = {*parse_strategy(algo)};
    plan.budgets = {budget};
    plan.master_seed = seed;
    plan.ga = make_ga_config(ga, 0);

    const fs::path results_file = dir / "results.csv";
    auto existing = load_existing_results(results_file);
    auto rows = run_sweep(eval, plan, existing);
    append_and_track(rows, results_file);

    // The history file comes from a direct driver run with the same derived
    // seed, so it matches the stored record exactly.
    const std::uint64_t cell_seed = derive_cell_seed(seed, plan.dataset_id, algo, budget);
    GaConfig cfg = plan.ga;
    cfg.seed = cell_seed;
    const fs::path history_file =
        dir / ("history_" + algo + "_budget" + std::to_string(budget) + ".csv");
    if (algo == "wsga") {
        auto res = run_wsga(eval, static_cast<std::size_t>(budget), cfg);
        {
            const bool existed = fs::exists(history_file);
            save_history(res.history, history_file);
            if (!existed) g_created.push_back(history_file);
        }
        std::cout << plan.dataset_id << " wsga budget=" << budget
                  << " rho=" << res.best_objectives.rho << " D=" << res.best_objectives.D << "\n";
    } else {
        auto res = run_nsga2(eval, static_cast<std::size_t>(budget), cfg);
        {
            const bool existed = fs::exists(history_file);
            save_history(res.history, history_file);
            if (!existed) g_created.push_back(history_file);
        }
        write_front_csv(res, dir / ("front_nsga2_budget" + std::to_string(budget) + ".csv"));
        const auto& rep = res.front[res.representative];
        std::cout << plan.dataset_id << " nsga2 budget=" << budget << " front=" << res.front.size()
                  << " rho=" << rep.objectives.rho << " D=" << rep.objectives.D << "\n";
    }

    json body = common_json(common, seed);
    body["algo"] = algo;
    body["budget"] = budget;
    body["ga"] = ga_json(ga);
    write_config(dir, "optimize", body);
    std::cout << "results: " << results_file.string() << "\n";
    return 0;
}

int cmd_sweep(const CommonOpts& common, const GaOpts& ga, const std::string& strategies_arg,
              const std::string& budgets_arg, const std::string& explicit_file) {
    const fs::path dir = ensure_out_dir(common);
    const std::uint64_t seed = resolve_seed(common.seed);
    WeightedGraph g = load_dataset(common);
    SpatialLayout layout = resolve_layout(common, g, seed);
    Evaluator eval(g, layout);

    SweepPlan plan;
    plan.dataset_id = dataset_id_of(common);
    plan.budgets = parse_budgets(budgets_arg);
    plan.master_seed = seed;
    plan.ga = make_ga_config(ga, 0);

    std::size_t start = 0;
    const std::string& s = strategies_arg;
    while (start <= s.size()) {
        std::size_t end = s.find(',', start);
        if (end == std::string::npos) end = s.size();
        const std::string tok = s.substr(start, end - start);
        if (!tok.empty()) {
            auto strat = parse_strategy(tok);
            if (!strat) throw ConfigError("unknown strategy '" + tok + "'");
            if (strat->kind == StrategySpec::Kind::explicit_list) {
                if (explicit_file.empty())
                    throw ConfigError("strategy explicit-list needs --explicit <file>");
                strat->explicit_nodes = removal_from_labels(g, read_label_file(explicit_file)).nodes;
            }
            plan.strategies.push_back(std::move(*strat));
        }
        start = end + 1;
    }
    if (plan.strategies.empty()) throw ConfigError("no strategies given");

    const fs::path results_file = dir / "results.csv";
    auto existing = load_existing_results(results_file);
    auto rows = run_sweep(eval, plan, existing);
    append_and_track(rows, results_file);

    json body = common_json(common, seed);
    body["strategies"] = strategies_arg;
    body["budgets"] = budgets_arg;
    body["ga"] = ga_json(ga);
    if (!explicit_file.empty()) body["explicit"] = explicit_file;
    write_config(dir, "sweep", body);
    std::cout << "computed " << rows.size() << " cell(s), skipped "
              << plan.strategies.size() * plan.budgets.size() - rows.size()
              << " existing record(s)\n";
    std::cout << "results: " << results_file.string() << "\n";
    return 0;
}

int cmd_pareto(const std::string& results_path, const CommonOpts& common) {
    const fs::path dir = ensure_out_dir(common);
    auto records = load_results_csv(results_path);
    if (records.empty()) throw InputError("no results found in '" + results_path + "'");
    auto front = combined_pareto(records);

    auto out = create_output(dir / "pareto.csv");
    out << kResultsCsvHeader << "\n";
    for (const auto& r : front) out << results_csv_row(r) << "\n";

    json j = json::array();
    for (const auto& r : front) {
        json rec;
        rec["dataset"] = r.dataset;
        rec["strategy"] = r.strategy;
        rec["budget"] = r.budget;
        rec["rho"] = r.rho;
        rec["D"] = r.D;
        rec["raw_mean_distance"] = r.raw_mean_distance;
        rec["removal_set"] = r.removal_labels;
        j.push_back(rec);
    }
    auto jout = create_output(dir / "pareto.json");
    jout << j.dump(2) << "\n";

    json body;
    body["results"] = results_path;
    write_config(dir, "pareto", body);
    std::cout << "pareto front: " << front.size() << " of " << records.size() << " record(s)\n";
    return 0;
}

int cmd_histogram(const std::string& results_path, const std::string& dataset_id,
                  const std::string& strategy, const CommonOpts& common) {
    const fs::path dir = ensure_out_dir(common);
    auto records = load_results_csv(results_path);
    std::vector<SweepResult> filtered;
    for (auto& r : records) {
        if (r.dataset == dataset_id && r.strategy == strategy) filtered.push_back(std::move(r));
    }
    if (filtered.empty())
        throw InputError("no results for dataset '" + dataset_id + "' strategy '" + strategy + "'");
    auto hist = selection_histogram(filtered);

    auto out = create_output(dir / ("histogram_" + strategy + ".csv"));
    out << "label,count\n";
    std::vector<std::pair<std::string, int>> entries(hist.counts.begin(), hist.counts.end());
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    for (const auto& [label, count] : entries) out << label << ',' << count << "\n";

    json j;
    j["dataset"] = hist.dataset;
    j["strategy"] = hist.strategy;
    j["budgets_swept"] = hist.budgets_swept;
    j["total_selections"] = hist.total();
    j["top10"] = hist.top_k(10);
    j["bottom10"] = hist.bottom_k(10);
    j["counts"] = hist.counts;
    auto jout = create_output(dir / ("histogram_" + strategy + ".json"));
    jout << j.dump(2) << "\n";

    json body;
    body["results"] = results_path;
    body["dataset"] = dataset_id;
    body["strategy"] = strategy;
    write_config(dir, "histogram", body);
    std::cout << "histogram: " << hist.counts.size() << " node(s), " << hist.total()
              << " selection(s) over " << hist.budgets_swept << " budget(s)\n";
    return 0;
}

int cmd_report(const std::string& results_path, int budget, const std::string& strategies_arg,
               const CommonOpts& common) {
    const fs::path dir = ensure_out_dir(common);
    auto records = load_results_csv(results_path);
    std::vector<std::string> strategies;
    std::size_t start = 0;
    while (start <= strategies_arg.size()) {
        std::size_t end = strategies_arg.find(',', start);
        if (end == std::string::npos) end = strategies_arg.size();
        if (end > start) strategies.push_back(strategies_arg.substr(start, end - start));
        start = end + 1;
    }
    if (strategies.empty()) throw ConfigError("no strategies given");

    auto report = comparison_report(records, budget, strategies);

    auto out = create_output(dir / ("report_budget" + std::to_string(budget) + ".csv"));
    out << "strategy,datasets,rho,D,raw_mean_distance\n";
    char buf[64];
    auto fmt = [&](double v) {
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
        (void)ec;
        return std::string(buf, ptr);
    };
    for (const auto& row : report.rows) {
        std::string datasets;
        for (const auto& d : row.datasets) {
            if (!datasets.empty()) datasets += ';';
            datasets += d;
        }
        out << row.strategy << ',' << datasets << ',' << fmt(row.rho) << ',' << fmt(row.D) << ','
            << fmt(row.raw_mean_distance) << "\n";
    }

    json j;
    j["budget"] = report.budget;
    j["averaged"] = report.averaged;
    j["rows"] = json::array();
    for (const auto& row : report.rows) {
        json r;
        r["strategy"] = row.strategy;
        r["datasets"] = row.datasets;
        r["rho"] = row.rho;
        r["D"] = row.D;
        r["raw_mean_distance"] = row.raw_mean_distance;
        j["rows"].push_back(r);
    }
    auto jout = create_output(dir / ("report_budget" + std::to_string(budget) + ".json"));
    jout << j.dump(2) << "\n";

    json body;
    body["results"] = results_path;
    body["budget"] = budget;
    body["strategies"] = strategies_arg;
    write_config(dir, "report", body);

    std::cout << "budget " << budget
              << (report.averaged ? " (averaged across datasets)" : " (single dataset)") << "\n";
    std::cout << "strategy,rho,D,raw_mean_distance\n";
    for (const auto& row : report.rows)
        std::cout << row.strategy << ',' << row.rho << ',' << row.D << ','
                  << row.raw_mean_distance << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"covert-network disruption toolkit"};
    app.require_subcommand(1);

    CommonOpts common;
    GaOpts ga;
    std::string algo = "wsga";
    std::string strategy_label;
    std::string strategies_arg;
    std::string budgets_arg;
    std::string results_path = "results.csv";
    std::string explicit_file;
    int budget = 0;

    auto* ingest = app.add_subcommand("ingest", "parse a raw edge list into a canonical graph file");
    add_common(ingest, common, /*needs_dataset=*/true);

    auto* layoutc = app.add_subcommand("layout", "generate the synthetic geography for a dataset");
    add_common(layoutc, common, true);

    auto* baseline = app.add_subcommand("baseline", "run a centrality baseline removal");
    add_common(baseline, common, true);
    baseline->add_option("--strategy", strategy_label,
                         "baseline label, e.g. seq-betweenness, block-degree-w, explicit-list")
        ->required();
    baseline->add_option("--budget", budget, "number of nodes to remove");
    baseline->add_option("--explicit", explicit_file, "node-label file for explicit-list");

    auto* optimize = app.add_subcommand("optimize", "run one GA at one removal budget");
    add_common(optimize, common, true);
    add_ga(optimize, ga);
    optimize->add_option("--algo", algo, "wsga or nsga2")->envname("NETDISRUPT_ALGO");
    optimize->add_option("--budget", budget, "number of nodes to remove")->required();

    auto* sweep = app.add_subcommand("sweep", "run strategies across a budget range");
    add_common(sweep, common, true);
    add_ga(sweep, ga);
    sweep->add_option("--strategies", strategies_arg, "comma-separated strategy labels")->required();
    sweep->add_option("--budgets", budgets_arg, "budget list, e.g. 1..90 or 5,10,41")->required();
    sweep->add_option("--explicit", explicit_file, "node-label file for explicit-list");

    auto* pareto = app.add_subcommand("pareto", "extract the combined pareto front from a result store");
    add_common(pareto, common, false);
    pareto->add_option("--results", results_path, "results.csv path")->required();

    auto* histogram = app.add_subcommand("histogram", "selection-frequency histogram for one strategy");
    add_common(histogram, common, false);
    histogram->add_option("--results", results_path, "results.csv path")->required();
    histogram->add_option("--hist-dataset", common.dataset_id, "dataset id to filter on")->required();
    histogram->add_option("--strategy", strategy_label, "strategy label to filter on")->required();

    auto* report = app.add_subcommand("report", "fixed-budget comparison across strategies");
    add_common(report, common, false);
    report->add_option("--results", results_path, "results.csv path")->required();
    report->add_option("--budget", budget, "comparison budget")->required();
    report->add_option("--strategies", strategies_arg, "comma-separated strategy labels")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        apply_workers(common.workers);
        if (ingest->parsed()) return cmd_ingest(common);
        if (layoutc->parsed()) return cmd_layout(common);
        if (baseline->parsed()) return cmd_baseline(common, strategy_label, budget, explicit_file);
        if (optimize->parsed()) return cmd_optimize(common, ga, algo, budget);
        if (sweep->parsed()) return cmd_sweep(common, ga, strategies_arg, budgets_arg, explicit_file);
        if (pareto->parsed()) return cmd_pareto(results_path, common);
        if (histogram->parsed())
            return cmd_histogram(results_path, common.dataset_id, strategy_label, common);
        if (report->parsed()) return cmd_report(results_path, budget, strategies_arg, common);
        throw ConfigError("no subcommand given");
    } catch (const ConfigError& e) {
        remove_partial_outputs();
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        remove_partial_outputs();
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        remove_partial_outputs();
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const ComputeError& e) {
        remove_partial_outputs();
        std::cerr << "compute error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        remove_partial_outputs();
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
