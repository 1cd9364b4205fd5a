#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "netdisrupt/baselines.hpp"
#include "netdisrupt/moga.hpp"

namespace netdisrupt {

/// One strategy of a sweep: a GA driver, a centrality baseline, or an
/// explicit removal list.
struct StrategySpec {
    enum class Kind { wsga, nsga2, baseline, explicit_list };

    Kind kind = Kind::wsga;
    BaselineStrategy baseline{};
    std::vector<NodeId> explicit_nodes{};  // resolved against the graph
    std::string label;
};

/// Parses "wsga", "nsga2", baseline labels, or "explicit" (nodes bound later).
std::optional<StrategySpec> parse_strategy(const std::string& token);

/// One record per (dataset, strategy, budget, seed); the unit of all reports.
struct SweepResult {
    std::string dataset;
    std::string strategy;
    int budget = 0;
    std::uint64_t seed = 0;
    double rho = 0.0;
    double D = 0.0;
    double raw_mean_distance = 0.0;
    std::vector<std::string> removal_labels;  // original labels, NodeId order
    std::string fingerprint;
};

struct SweepPlan {
    std::string dataset_id;
    std::vector<StrategySpec> strategies;
    std::vector<int> budgets;
    std::uint64_t master_seed = 0;
    GaConfig ga{};
};

/// Per-cell seed derived from (master, dataset, strategy, budget) so cells are
/// independent and the sweep parallelizes without coupling RNG streams.
std::uint64_t derive_cell_seed(std::uint64_t master_seed, const std::string& dataset,
                               const std::string& strategy, int budget);

/// Hex fingerprint identifying a sweep cell's full configuration.
std::string sweep_fingerprint(const std::string& dataset, const std::string& strategy,
                              int budget, std::uint64_t cell_seed, const GaConfig& ga,
                              const SpatialLayout& layout);

/// Runs the cross-product of strategies x budgets; cells whose fingerprint
/// appears in `existing` are skipped (resumable campaigns). Cells run in a
/// fixed order (each cell's kernels parallelize internally), so results are
/// deterministic for any worker count.
std::vector<SweepResult> run_sweep(const Evaluator& eval, const SweepPlan& plan,
                                   std::span<const SweepResult> existing = {});

/// Non-dominated records under minimization of (budget, rho, D).
std::vector<SweepResult> combined_pareto(std::span<const SweepResult> results);

struct FrequencyHistogram {
    std::string dataset;
    std::string strategy;
    int budgets_swept = 0;
    std::map<std::string, int> counts;  // label -> appearances in best solutions

    std::vector<std::string> top_k(std::size_t k) const;
    /// Least frequent among nodes selected at least once.
    std::vector<std::string> bottom_k(std::size_t k) const;
    long long total() const;
};

/// Counts node appearances across one strategy's best solutions. Records must
/// share dataset and strategy.
FrequencyHistogram selection_histogram(std::span<const SweepResult> results);

struct ComparisonRow {
    std::string strategy;
    std::vector<std::string> datasets;
    double rho = 0.0;
    double D = 0.0;
    double raw_mean_distance = 0.0;  // all three averaged across datasets when several
};

struct ComparisonReport {
    int budget = 0;
    bool averaged = false;  // true when more than one dataset contributed
    std::vector<ComparisonRow> rows;
};

/// Per-strategy rho/D at a fixed budget, averaged across datasets when both
/// are present. Missing records raise InputError listing the gaps.
ComparisonReport comparison_report(std::span<const SweepResult> results, int budget,
                                   std::span<const std::string> strategies);

// Results CSV store (append-only, fingerprint column enables resumption).
extern const char* const kResultsCsvHeader;
std::vector<SweepResult> load_results_csv(const std::filesystem::path& path);
void append_results_csv(std::span<const SweepResult> results, const std::filesystem::path& path);

std::string results_csv_row(const SweepResult& r);

}  // namespace netdisrupt
