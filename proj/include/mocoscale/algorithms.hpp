#pragma once

#include "mocoscale/core.hpp"
#include "mocoscale/operators.hpp"
#include "mocoscale/problems.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace mocoscale {

enum class AlgorithmKind { Semo, Semox, Nsga2, SmsEmoa, Moead };

/// Short id used in files and configs ("semo", "semox", "nsga2", "smsemoa", "moead").
std::string_view algorithm_id(AlgorithmKind kind);
/// Display name ("SEMO", "SEMOx", "NSGA-II", "SMS-EMOA", "MOEA/D").
std::string_view algorithm_label(AlgorithmKind kind);
/// Accepts either the id or the display name, case-insensitively.
AlgorithmKind parse_algorithm(std::string_view name);

enum class ParentSelection { Tournament, Random };

struct AlgorithmConfig {
    AlgorithmKind kind = AlgorithmKind::Semo;
    std::size_t population_size = 100;
    std::uint64_t budget = 100'000;
    OperatorConfig operators;
    std::size_t moead_neighborhood = 20;
    ParentSelection smsemoa_parent_selection = ParentSelection::Tournament;
    std::uint64_t seed = 0;
};

struct EvaluationEvent {
    std::uint64_t eval_index = 0; // 1-based
    const Individual& individual;
};

struct TrajectoryPoint {
    std::uint64_t eval_count = 0;
    double hv = 0.0;
};

/// One SEMO/SEMOx iteration as seen by instrumentation.
struct VariationTrace {
    std::uint64_t eval_index = 0;
    std::size_t archive_size = 0; // before the offspring is inserted
    bool crossover_applied = false;
};

struct RunHooks {
    std::function<void(const EvaluationEvent&)> on_evaluation;
    std::function<void(const VariationTrace&)> on_variation;
    /// MOEA/D slot replacement: slot index and its Tchebycheff value before and after.
    std::function<void(std::size_t, double, double)> on_replacement;
    /// When set, the HV of the external archive is logged on the checkpoint grid.
    std::optional<ObjectiveVector> reference;
};

struct RunResult {
    Archive archive; // external archive of every evaluated solution
    std::vector<TrajectoryPoint> trajectory;
    std::uint64_t evaluations = 0;
};

RunResult run_algorithm(const ProblemInstance& instance, const AlgorithmConfig& config, const RunHooks& hooks = {});
RunResult run_semo(const ProblemInstance& instance, const AlgorithmConfig& config, const RunHooks& hooks = {});
RunResult run_semox(const ProblemInstance& instance, const AlgorithmConfig& config, const RunHooks& hooks = {});
RunResult run_nsga2(const ProblemInstance& instance, const AlgorithmConfig& config, const RunHooks& hooks = {});
RunResult run_smsemoa(const ProblemInstance& instance, const AlgorithmConfig& config, const RunHooks& hooks = {});
RunResult run_moead(const ProblemInstance& instance, const AlgorithmConfig& config, const RunHooks& hooks = {});

/// Evaluation counts at which trajectories are sampled: round(10^(k/25)) for
/// k = 0, 1, ..., deduplicated, capped at and always ending with budget.
std::vector<std::uint64_t> checkpoint_grid(std::uint64_t budget);

/// Non-dominated fronts, best first; indices inside a front are ascending.
std::vector<std::vector<std::size_t>> fast_nondominated_sort(std::span<const ObjectiveVector> pop);

/// Crowding distance of each member of one front, in input order. Boundary
/// members of every objective get +infinity.
std::vector<double> crowding_distance(std::span<const ObjectiveVector> front);

/// max_k weight_k * |f_k - ideal_k|
double tchebycheff(const ObjectiveVector& f, std::span<const double> weight, const ObjectiveVector& ideal);

/// Indices of the n survivors of an NSGA-II environmental selection, together
/// with their front rank and crowding distance. Fronts are taken whole until
/// one no longer fits; that front is cut by descending crowding, ties to the
/// lower index.
struct RankedSelection {
    std::vector<std::size_t> survivors;
    std::vector<std::size_t> rank;
    std::vector<double> crowding;
};
RankedSelection nsga2_select(std::span<const ObjectiveVector> combined, std::size_t n);

/// Member removed by one SMS-EMOA reduction step: the worst front's sole
/// member, or its member of least hypervolume contribution against the
/// front's nadir plus one (ties to the lower index).
std::size_t smsemoa_removal_index(std::span<const ObjectiveVector> combined);

/// Evenly spread bi-objective weights (i/(n-1), 1 - i/(n-1)).
std::vector<std::vector<double>> moead_weights(std::size_t n);
/// For every weight, the indices of its t nearest weights (itself included),
/// nearest first, ties to the lower index.
std::vector<std::vector<std::size_t>> moead_neighbourhoods(const std::vector<std::vector<double>>& weights,
                                                            std::size_t t);

} // namespace mocoscale
