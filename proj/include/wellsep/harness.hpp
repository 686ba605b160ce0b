#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "wellsep/datagen.hpp"
#include "wellsep/evaluation.hpp"
#include "wellsep/io.hpp"
#include "wellsep/lloyd.hpp"
#include "wellsep/seeding.hpp"

namespace wellsep {

/// Seed derivation. Chains the splitmix64 finalizer, a bijection on 64-bit
/// words, so for fixed (master, stream) distinct run indices never collide:
///   derive = mix(mix(mix(master) + run_index) + stream)
std::uint64_t derive(std::uint64_t master_seed, std::uint64_t run_index, std::uint64_t stream);

inline constexpr std::uint64_t kDatasetStream = 0;
/// 1 + the tag's position; an algorithm's seeds do not depend on which others run.
std::uint64_t algorithm_stream(SeedingTag tag);

struct ExperimentSpec {
    std::string name;  // output subdirectory; config_name(gen) when empty
    GenConfig gen;
    std::vector<SeedingMethod> algorithms;
    std::size_t runs = 30;
    std::uint64_t master_seed = 0;
    lloyd::LloydConfig lloyd;
    std::filesystem::path output_dir;  // nothing is written when empty
    bool save_datasets = false;
    bool strict = true;    // throw InvariantError on a Lloyd cost increase
    unsigned threads = 0;  // 0: hardware concurrency

    void validate() const;
    std::string resolved_name() const;
};

/// e.g. "8x8-n40-noise30-disp0"
std::string config_name(const GenConfig& gen);

std::vector<SeedingMethod> all_algorithms(std::size_t boost_width = kDefaultBoostWidth);

struct AlgorithmRun {
    RunMetrics metrics;
    std::size_t iterations = 0;
    bool converged = false;
    std::size_t monotonicity_violations = 0;
    std::size_t empty_cluster_repairs = 0;
    double seconds = 0.0;  // wall clock; kept out of report.json
};

struct RunRecord {
    std::size_t run_index = 0;
    std::uint64_t dataset_seed = 0;
    std::size_t points = 0;
    std::size_t noise_points = 0;
    bool separation_satisfied = false;  // nominal centers and radius
    double nominal_min_gap = 0.0;
    std::vector<AlgorithmRun> algorithms;  // aligned with ExperimentReport::algorithms
};

struct AlgorithmSummary {
    SeedingMethod method;
    SummaryRow tot_within_ss;
    SummaryRow wrong_clusters_pct;
    SummaryRow rel_tot_within_ss;
    // Highest wrong_clusters_pct over the runs; the earliest run wins ties.
    std::size_t worst_run = 0;
    double worst_wrong_clusters_pct = 0.0;
    Clustering worst_clustering;
    std::shared_ptr<const LabeledDataset> worst_dataset;  // not part of report.json
};

struct ExperimentReport {
    std::string name;
    GenConfig gen;
    std::size_t runs = 0;
    std::uint64_t master_seed = 0;
    std::size_t max_iters = 0;
    std::vector<AlgorithmSummary> algorithms;
    std::vector<RunRecord> run_records;

    std::size_t monotonicity_violations() const;
    std::size_t nonconverged_runs() const;
    std::size_t separation_failures() const;
};

/// Generates `runs` datasets, runs every algorithm on each, summarises, and
/// writes artifacts under output_dir/resolved_name() when output_dir is set.
ExperimentReport run_experiment(const ExperimentSpec& spec);

/// report.json content: everything but wall-clock timings and datasets.
Json report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const Json& j);

struct TableOutput {
    std::string csv;
    std::string text;
};

inline constexpr std::string_view kTableCsvHeader =
    "algorithm,twss_mean,twss_sd,wcp_mean,wcp_sd,rel_mean,rel_sd";

TableOutput emit_table(const ExperimentReport& report);

struct TableRow {
    std::string algorithm;
    SummaryRow twss, wcp, rel;
};
std::vector<TableRow> parse_table_csv(const std::string& csv);

/// Writes report.json, table.csv, table.txt, timings.json and, per algorithm,
/// worst_<algo>.csv/.json/.svg into dir.
void write_artifacts(const ExperimentReport& report, const std::filesystem::path& dir);

/// Re-renders tables and figures in dir from report.json and the persisted
/// worst-case datasets. Returns the number of figures written.
std::size_t rerender(const std::filesystem::path& dir);

/// Parses a bench spec file. Accepts one generator block ("gen"), a list
/// ("sweep"), or a named preset ("preset": "standard" | "grid"); the remaining
/// keys (algorithms, boost_width, boost_criterion, runs, master_seed,
/// max_iters, save_datasets, threads) apply to every configuration.
std::vector<ExperimentSpec> specs_from_json(const Json& j, const std::filesystem::path& output_dir);

/// Default benchmark sweep: grids 5x5..10x10 without
/// noise, 8x8 with 10 to 50 % noise, 8x8/30 % with displacement 0.5 to 4 R, and
/// 8x8/30 %/1 R with cluster sizes 12 to 96.
std::vector<GenConfig> standard_sweep();
/// Full product: grids 5x5..10x10 × noise {0..50} × displacement {0, 0.5, 1, 2, 4}, n = 40.
std::vector<GenConfig> grid_sweep();

}  // namespace wellsep
