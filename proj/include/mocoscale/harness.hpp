#pragma once

#include "mocoscale/algorithms.hpp"
#include "mocoscale/io.hpp"
#include "mocoscale/problems.hpp"
#include "mocoscale/stats.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mocoscale {

struct ExperimentConfig {
    std::vector<Family> families;
    std::vector<std::size_t> dimensions{100, 500, 1000, 5000};
    std::size_t objectives = 2;
    std::vector<std::uint64_t> budgets{100'000, 10'000'000};
    std::vector<AlgorithmKind> algorithms;
    std::size_t runs = 30;
    std::uint64_t base_seed = 0;
    std::size_t reference_samples = kDefaultReferenceSamples;
    std::filesystem::path output_dir;

    // knobs shared by every run
    std::size_t population_size = 100;
    OperatorConfig operators;
    std::size_t moead_neighborhood = 20;
    ParentSelection smsemoa_parent_selection = ParentSelection::Tournament;
    std::size_t monk_k = kDefaultMonkK;
    bool archive_genotypes = false;

    void validate() const;
    /// Hash of every field that can change the outcome of a single run.
    std::string fingerprint() const;
};

ExperimentConfig config_from_json(const json& j);
json config_to_json(const ExperimentConfig& config);

std::uint64_t instance_seed(std::uint64_t base_seed, Family family, std::size_t dim);
std::uint64_t reference_seed(std::uint64_t base_seed, Family family, std::size_t dim);
std::uint64_t run_seed(std::uint64_t base_seed, Family family, std::size_t dim, AlgorithmKind algorithm,
                       std::uint64_t budget, std::size_t run);

/// Throws Error if two cells of the grid would share a run seed.
void check_seed_collisions(const ExperimentConfig& config);

struct RunRecord {
    std::string fingerprint;
    Family family = Family::Motsp;
    std::size_t dim = 0;
    std::size_t objectives = 2;
    std::uint64_t instance_seed = 0;
    std::uint64_t run_seed = 0;
    AlgorithmKind algorithm = AlgorithmKind::Semo;
    std::uint64_t budget = 0;
    std::size_t run = 0;
    double final_hv = 0.0;
    std::vector<TrajectoryPoint> trajectory;
    double runtime_seconds = 0.0;
    std::size_t archive_size = 0;
    std::string archive_path; // relative to the experiment directory
};

json record_to_json(const RunRecord& r);
RunRecord record_from_json(const json& j);

/// "<family>_D<dim>", the per-instance stem used under records/, archives/, ...
std::string setting_stem(Family family, std::size_t dim);

struct RunOptions {
    std::size_t workers = 1;
    bool resume = false;
    bool allow_expensive = false;
};

struct ExperimentReport {
    std::size_t completed = 0;
    std::size_t skipped = 0; // already on disk
    std::size_t failed = 0;
    std::size_t guarded = 0; // expensive cells left out
};

/// True for MOQAP at D >= 5000 with a budget of at least 10^7.
bool is_expensive(Family family, std::size_t dim, std::uint64_t budget);

ExperimentReport run_experiment(const ExperimentConfig& config, const RunOptions& options);

/// All records found in records_dir/*.jsonl.
std::vector<RunRecord> load_records(const std::filesystem::path& records_dir);

enum class HolmScope { Setting, Global };
HolmScope parse_holm_scope(std::string_view name);

struct SummaryRow {
    AlgorithmKind algorithm = AlgorithmKind::Semo;
    std::size_t runs = 0;
    double mean = 0.0;
    double sd = 0.0;
    ComparisonCell cell;
};

struct SettingSummary {
    Family family = Family::Motsp;
    std::size_t dim = 0;
    std::uint64_t budget = 0;
    std::vector<SummaryRow> rows;
    std::optional<TestResult> friedman;
    std::vector<std::string> warnings;
};

std::vector<SettingSummary> summarize(const std::vector<RunRecord>& records, HolmScope scope, double alpha);

std::string summary_csv(const std::vector<SettingSummary>& summary);
/// Rows per (problem, budget), one column per algorithm, "mean (SD)" over
/// "b/e/w", with a total line at the bottom.
std::string summary_text(const std::vector<SettingSummary>& summary);

struct PlotDataFiles {
    std::vector<std::filesystem::path> written;
};

/// Scatter CSVs of every run, the representative run per algorithm (final HV
/// closest to the mean), and per-algorithm trajectory mean and SD.
PlotDataFiles export_plot_data(const std::filesystem::path& records_dir, Family family, std::size_t dim,
                               std::uint64_t budget, const std::filesystem::path& out_dir);

} // namespace mocoscale
