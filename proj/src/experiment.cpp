#include "netdisrupt/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <unordered_set>

#include "netdisrupt/errors.hpp"
#include "netdisrupt/rng.hpp"

namespace netdisrupt {

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return {buf, ptr};
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == sep) {
            out.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

// Labels are usually numeric strings; order those numerically so "10" sorts
// after "9", and fall back to lexicographic order otherwise.
bool label_less(const std::string& a, const std::string& b) {
    long long na = 0, nb = 0;
    auto ra = std::from_chars(a.data(), a.data() + a.size(), na);
    auto rb = std::from_chars(b.data(), b.data() + b.size(), nb);
    const bool numa = ra.ec == std::errc() && ra.ptr == a.data() + a.size();
    const bool numb = rb.ec == std::errc() && rb.ptr == b.data() + b.size();
    if (numa && numb) return na != nb ? na < nb : a < b;
    if (numa != numb) return numa;  // numbers before arbitrary strings
    return a < b;
}

bool is_ga_strategy(const std::string& label) { return label == "wsga" || label == "nsga2"; }

SweepResult run_cell(const Evaluator& eval, const SweepPlan& plan, const StrategySpec& strat,
                     int budget, std::uint64_t seed) {
    const WeightedGraph& g = eval.graph();
    SweepResult rec;
    rec.dataset = plan.dataset_id;
    rec.strategy = strat.label;
    rec.budget = budget;
    rec.seed = seed;

    std::vector<NodeId> removal;
    ObjectiveVector obj;
    switch (strat.kind) {
        case StrategySpec::Kind::wsga: {
            GaConfig cfg = plan.ga;
            cfg.seed = seed;
            auto res = run_wsga(eval, static_cast<std::size_t>(budget), cfg);
            removal = res.best_genome.sorted_set();
            obj = res.best_objectives;
            break;
        }
        case StrategySpec::Kind::nsga2: {
            GaConfig cfg = plan.ga;
            cfg.seed = seed;
            auto res = run_nsga2(eval, static_cast<std::size_t>(budget), cfg);
            const auto& rep = res.front[res.representative];
            removal = rep.genome.sorted_set();
            obj = rep.objectives;
            break;
        }
        case StrategySpec::Kind::baseline: {
            if (strat.baseline.mode == RemovalMode::sequential) {
                auto trace = sequential_removal(eval, strat.baseline, static_cast<std::size_t>(budget));
                removal = std::move(trace.removal.nodes);
            } else {
                removal = block_removal(g, strat.baseline, static_cast<std::size_t>(budget)).nodes;
            }
            obj = eval.evaluate(removal);
            break;
        }
        case StrategySpec::Kind::explicit_list: {
            if (strat.explicit_nodes.size() != static_cast<std::size_t>(budget))
                throw ConfigError("explicit removal list has " +
                                  std::to_string(strat.explicit_nodes.size()) +
                                  " nodes but the budget is " + std::to_string(budget));
            removal = RemovalSet::of(strat.explicit_nodes, g).nodes;
            obj = eval.evaluate(removal);
            break;
        }
    }
    rec.rho = obj.rho;
    rec.D = obj.D;
    rec.raw_mean_distance = obj.raw_mean_distance;
    rec.removal_labels.reserve(removal.size());
    for (NodeId v : removal) rec.removal_labels.push_back(g.info(v).label);
    return rec;
}

}  // namespace

std::optional<StrategySpec> parse_strategy(const std::string& token) {
    StrategySpec s;
    if (token == "wsga" || token == "nsga2") {
        s.kind = token == "wsga" ? StrategySpec::Kind::wsga : StrategySpec::Kind::nsga2;
        s.label = token;
        return s;
    }
    if (token == "explicit" || token == "explicit-list") {
        s.kind = StrategySpec::Kind::explicit_list;
        s.label = "explicit-list";
        return s;
    }
    auto baseline = parse_baseline_label(token);
    if (!baseline) return std::nullopt;
    s.kind = StrategySpec::Kind::baseline;
    s.baseline = *baseline;
    s.label = baseline->label();
    return s;
}

std::uint64_t derive_cell_seed(std::uint64_t master_seed, const std::string& dataset,
                               const std::string& strategy, int budget) {
    std::uint64_t h = master_seed;
    h = splitmix64(h) ^ fnv1a64(dataset);
    h = splitmix64(h) ^ fnv1a64(strategy);
    h = splitmix64(h) ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(budget + 1));
    return splitmix64(h);
}

std::string sweep_fingerprint(const std::string& dataset, const std::string& strategy, int budget,
                              std::uint64_t cell_seed, const GaConfig& ga,
                              const SpatialLayout& layout) {
    std::string canon = dataset + "|" + strategy + "|" + std::to_string(budget) + "|" +
                        std::to_string(cell_seed) + "|";
    if (is_ga_strategy(strategy)) {
        canon += "ga:" + std::to_string(ga.generations) + "," + std::to_string(ga.population_size) +
                 "," + std::to_string(ga.num_parents) + "," + std::to_string(ga.tournament_size) +
                 "," + format_double(ga.crossover_prob) + "," + format_double(ga.mutation_prob) +
                 "," + format_double(ga.gene_replace_prob) + "," + format_double(ga.w_rho) + "," +
                 format_double(ga.w_spatial) + "|";
    }
    canon += "layout:" + std::to_string(layout.seed) + "," + format_double(layout.width) + "," +
             format_double(layout.height) + "," + std::to_string(layout.node_count()) + "," +
             std::to_string(layout.hq_coords.size()) + "," + format_double(layout.d_min) + "," +
             format_double(layout.d_max);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canon)));
    return buf;
}

std::vector<SweepResult> run_sweep(const Evaluator& eval, const SweepPlan& plan,
                                   std::span<const SweepResult> existing) {
    std::unordered_set<std::string> have;
    for (const auto& r : existing) have.insert(r.fingerprint);

    const std::size_t n = eval.graph().node_count();
    std::vector<SweepResult> out;
    for (const auto& strat : plan.strategies) {
        for (int budget : plan.budgets) {
            if (budget < 1 || static_cast<std::size_t>(budget) > n)
                throw ConfigError("sweep budget " + std::to_string(budget) + " must be in [1, " +
                                  std::to_string(n) + "]");
            const std::uint64_t seed =
                derive_cell_seed(plan.master_seed, plan.dataset_id, strat.label, budget);
            std::string fp = sweep_fingerprint(plan.dataset_id, strat.label, budget, seed, plan.ga,
                                               eval.layout());
            if (have.count(fp)) continue;
            SweepResult rec = run_cell(eval, plan, strat, budget, seed);
            rec.fingerprint = std::move(fp);
            out.push_back(std::move(rec));
        }
    }
    return out;
}

std::vector<SweepResult> combined_pareto(std::span<const SweepResult> results) {
    auto dominates3 = [](const SweepResult& a, const SweepResult& b) {
        // minimize (budget, rho, D)
        return a.budget <= b.budget && a.rho <= b.rho && a.D <= b.D &&
               (a.budget < b.budget || a.rho < b.rho || a.D < b.D);
    };
    std::vector<SweepResult> kept;
    for (std::size_t i = 0; i < results.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < results.size() && !dominated; ++j) {
            if (j != i && dominates3(results[j], results[i])) dominated = true;
        }
        if (!dominated) kept.push_back(results[i]);
    }
    return kept;
}

std::vector<std::string> FrequencyHistogram::top_k(std::size_t k) const {
    std::vector<std::pair<std::string, int>> entries(counts.begin(), counts.end());
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : label_less(a.first, b.first);
    });
    std::vector<std::string> out;
    for (std::size_t i = 0; i < entries.size() && i < k; ++i) out.push_back(entries[i].first);
    return out;
}

std::vector<std::string> FrequencyHistogram::bottom_k(std::size_t k) const {
    std::vector<std::pair<std::string, int>> entries(counts.begin(), counts.end());
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second < b.second : label_less(a.first, b.first);
    });
    std::vector<std::string> out;
    for (std::size_t i = 0; i < entries.size() && i < k; ++i) out.push_back(entries[i].first);
    return out;
}

long long FrequencyHistogram::total() const {
    long long sum = 0;
    for (const auto& [label, count] : counts) sum += count;
    return sum;
}

FrequencyHistogram selection_histogram(std::span<const SweepResult> results) {
    if (results.empty()) throw InputError("no results to build a histogram from");
    FrequencyHistogram h;
    h.dataset = results.front().dataset;
    h.strategy = results.front().strategy;
    std::set<int> budgets;
    for (const auto& r : results) {
        if (r.dataset != h.dataset || r.strategy != h.strategy)
            throw InputError("histogram requires records of a single (dataset, strategy); got '" +
                             r.dataset + "/" + r.strategy + "' alongside '" + h.dataset + "/" +
                             h.strategy + "'");
        budgets.insert(r.budget);
        for (const std::string& label : r.removal_labels) ++h.counts[label];
    }
    h.budgets_swept = static_cast<int>(budgets.size());
    return h;
}

ComparisonReport comparison_report(std::span<const SweepResult> results, int budget,
                                   std::span<const std::string> strategies) {
    std::set<std::string> datasets;
    for (const auto& r : results) datasets.insert(r.dataset);
    if (datasets.empty()) throw InputError("no results to report on");

    ComparisonReport report;
    report.budget = budget;
    report.averaged = datasets.size() > 1;
    std::vector<std::string> gaps;
    for (const auto& strategy : strategies) {
        ComparisonRow row;
        row.strategy = strategy;
        for (const auto& dataset : datasets) {
            const SweepResult* hit = nullptr;
            for (const auto& r : results) {
                if (r.strategy == strategy && r.dataset == dataset && r.budget == budget) {
                    hit = &r;
                    break;
                }
            }
            if (!hit) {
                gaps.push_back(strategy + " on " + dataset + " at budget " + std::to_string(budget));
                continue;
            }
            row.datasets.push_back(dataset);
            row.rho += hit->rho;
            row.D += hit->D;
            row.raw_mean_distance += hit->raw_mean_distance;
        }
        if (!row.datasets.empty()) {
            const auto k = static_cast<double>(row.datasets.size());
            row.rho /= k;
            row.D /= k;
            row.raw_mean_distance /= k;
        }
        report.rows.push_back(std::move(row));
    }
    if (!gaps.empty()) {
        std::string msg = "comparison report is incomplete; missing records:";
        for (const auto& gap : gaps) msg += " [" + gap + "]";
        throw InputError(msg);
    }
    return report;
}

const char* const kResultsCsvHeader =
    "dataset,strategy,budget,seed,rho,D,raw_mean_distance,removal_set,fingerprint";

std::string results_csv_row(const SweepResult& r) {
    std::string removal;
    for (std::size_t i = 0; i < r.removal_labels.size(); ++i) {
        const std::string& label = r.removal_labels[i];
        if (label.find(';') != std::string::npos || label.find(',') != std::string::npos)
            throw InputError("node label '" + label + "' cannot be stored in the results CSV");
        if (i > 0) removal += ';';
        removal += label;
    }
    return r.dataset + "," + r.strategy + "," + std::to_string(r.budget) + "," +
           std::to_string(r.seed) + "," + format_double(r.rho) + "," + format_double(r.D) + "," +
           format_double(r.raw_mean_distance) + "," + removal + "," + r.fingerprint;
}

void append_results_csv(std::span<const SweepResult> results, const std::filesystem::path& path) {
    const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out) throw ParseError("cannot write results file '" + path.string() + "'");
    if (fresh) out << kResultsCsvHeader << "\n";
    for (const auto& r : results) out << results_csv_row(r) << "\n";
    if (!out) throw ParseError("write failed for results file '" + path.string() + "'");
}

std::vector<SweepResult> load_results_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("no results found at '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line) || line != kResultsCsvHeader)
        throw ParseError("bad results header in '" + path.string() + "'");
    std::vector<SweepResult> out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fields = split(line, ',');
        if (fields.size() != 9)
            throw ParseError("results row " + std::to_string(lineno) + ": expected 9 columns");
        SweepResult r;
        r.dataset = fields[0];
        r.strategy = fields[1];
        double rho = 0.0, D = 0.0, raw = 0.0;
        try {
            r.budget = std::stoi(fields[2]);
            r.seed = std::stoull(fields[3]);
        } catch (const std::exception&) {
            throw ParseError("results row " + std::to_string(lineno) + ": bad budget or seed");
        }
        if (!parse_double(fields[4], rho) || !parse_double(fields[5], D) ||
            !parse_double(fields[6], raw))
            throw ParseError("results row " + std::to_string(lineno) + ": bad metric value");
        r.rho = rho;
        r.D = D;
        r.raw_mean_distance = raw;
        if (!fields[7].empty()) {
            for (auto& label : split(fields[7], ';')) r.removal_labels.push_back(std::move(label));
        }
        r.fingerprint = fields[8];
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace netdisrupt
