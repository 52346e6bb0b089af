#pragma once

#include "mocoscale/algorithms.hpp"
#include "mocoscale/random.hpp"

#include <cstdint>
#include <vector>

namespace mocoscale::detail {

/// Budget accounting shared by every optimizer. Each evaluation is counted,
/// offered to the external archive, forwarded to the hooks, and sampled into
/// the trajectory when it lands on a checkpoint.
class EvaluationContext {
public:
    EvaluationContext(const ProblemInstance& instance, std::uint64_t budget, const RunHooks& hooks);

    bool exhausted() const { return count_ >= budget_; }
    std::uint64_t remaining() const { return budget_ - count_; }
    std::uint64_t count() const { return count_; }
    const ProblemInstance& instance() const { return instance_; }
    const Archive& archive() const { return archive_; }

    /// Full evaluation of g. MOKP genotypes must already be repaired.
    Individual evaluate(Genotype g);
    /// Records a solution whose objectives were computed incrementally.
    Individual accept(Genotype g, ObjectiveVector objectives);

    void trace(const VariationTrace& t) const {
        if (hooks_.on_variation) hooks_.on_variation(t);
    }

    RunResult finish() &&;

private:
    void record(const Individual& ind);

    const ProblemInstance& instance_;
    std::uint64_t budget_;
    const RunHooks& hooks_;
    std::uint64_t count_ = 0;
    Archive archive_;
    std::vector<std::uint64_t> checkpoints_;
    std::size_t next_checkpoint_ = 0;
    std::vector<TrajectoryPoint> trajectory_;
};

/// MOKP offspring are repaired before evaluation; other families pass through.
void make_feasible(const ProblemInstance& instance, Genotype& g);

/// Binary tournament on (lower rank, then larger crowding), ties uniform.
std::size_t crowded_tournament(const std::vector<std::size_t>& rank, const std::vector<double>& crowding, Rng& rng);

/// Rank and crowding of every member of a population.
void rank_population(const std::vector<Individual>& pop, std::vector<std::size_t>& rank,
                     std::vector<double>& crowding);

/// The family's crossover with probability crossover_rate, else copies of the parents.
std::pair<Genotype, Genotype> crossover_step(const ProblemInstance& instance, const OperatorConfig& ops,
                                             const Genotype& a, const Genotype& b, Rng& rng);

/// GA mutation followed by MOKP repair.
void mutate_step(const ProblemInstance& instance, const OperatorConfig& ops, Genotype& g, Rng& rng);

std::vector<ObjectiveVector> objectives_of(const std::vector<Individual>& pop);

void require_population_budget(const AlgorithmConfig& config);

} // namespace mocoscale::detail
