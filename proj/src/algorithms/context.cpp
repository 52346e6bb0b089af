#include "context.hpp"

#include "mocoscale/indicators.hpp"

namespace mocoscale::detail {

EvaluationContext::EvaluationContext(const ProblemInstance& instance, std::uint64_t budget, const RunHooks& hooks)
    : instance_(instance), budget_(budget), hooks_(hooks) {
    if (hooks_.reference) {
        if (hooks_.reference->size() != instance.objectives()) {
            throw ContractViolation("reference point does not match the instance objective count");
        }
        checkpoints_ = checkpoint_grid(budget);
    }
}

Individual EvaluationContext::evaluate(Genotype g) {
    ObjectiveVector f = mocoscale::evaluate(instance_, g);
    return accept(std::move(g), std::move(f));
}

Individual EvaluationContext::accept(Genotype g, ObjectiveVector objectives) {
    if (exhausted()) {
        throw ContractViolation("evaluation budget exceeded");
    }
    Individual ind{std::move(g), std::move(objectives)};
    record(ind);
    return ind;
}

void EvaluationContext::record(const Individual& ind) {
    ++count_;
    if (!archive_.covers(ind.objectives)) {
        archive_.insert(ind);
    }
    if (hooks_.on_evaluation) {
        hooks_.on_evaluation(EvaluationEvent{count_, ind});
    }
    if (next_checkpoint_ < checkpoints_.size() && checkpoints_[next_checkpoint_] == count_) {
        trajectory_.push_back({count_, hypervolume_2d(archive_, *hooks_.reference)});
        ++next_checkpoint_;
    }
}

RunResult EvaluationContext::finish() && {
    return RunResult{std::move(archive_), std::move(trajectory_), count_};
}

void make_feasible(const ProblemInstance& instance, Genotype& g) {
    if (instance.family() == Family::Mokp) {
        auto& bits = std::get<BitString>(g);
        bits = repair_mokp(instance.as<MokpInstance>(), std::move(bits));
    }
}

std::size_t crowded_tournament(const std::vector<std::size_t>& rank, const std::vector<double>& crowding, Rng& rng) {
    const std::size_t n = rank.size();
    if (n == 1) return 0;
    const std::size_t a = rng.below(n);
    std::size_t b = rng.below(n - 1);
    if (b >= a) ++b;
    if (rank[a] != rank[b]) return rank[a] < rank[b] ? a : b;
    if (crowding[a] != crowding[b]) return crowding[a] > crowding[b] ? a : b;
    return rng.bernoulli(0.5) ? a : b;
}

void rank_population(const std::vector<Individual>& pop, std::vector<std::size_t>& rank,
                     std::vector<double>& crowding) {
    const auto objs = objectives_of(pop);
    rank.assign(pop.size(), 0);
    crowding.assign(pop.size(), 0.0);
    const auto fronts = fast_nondominated_sort(objs);
    for (std::size_t r = 0; r < fronts.size(); ++r) {
        std::vector<ObjectiveVector> front;
        front.reserve(fronts[r].size());
        for (auto idx : fronts[r]) front.push_back(objs[idx]);
        const auto cd = crowding_distance(front);
        for (std::size_t k = 0; k < fronts[r].size(); ++k) {
            rank[fronts[r][k]] = r;
            crowding[fronts[r][k]] = cd[k];
        }
    }
}

std::pair<Genotype, Genotype> crossover_step(const ProblemInstance& instance, const OperatorConfig& ops,
                                             const Genotype& a, const Genotype& b, Rng& rng) {
    if (ops.crossover_rate >= 1.0 || rng.bernoulli(ops.crossover_rate)) {
        return family_crossover(instance.family(), a, b, rng);
    }
    return {a, b};
}

void mutate_step(const ProblemInstance& instance, const OperatorConfig& ops, Genotype& g, Rng& rng) {
    ga_mutate(instance.family(), g, ops, rng);
    make_feasible(instance, g);
}

std::vector<ObjectiveVector> objectives_of(const std::vector<Individual>& pop) {
    std::vector<ObjectiveVector> out;
    out.reserve(pop.size());
    for (const auto& ind : pop) out.push_back(ind.objectives);
    return out;
}

void require_population_budget(const AlgorithmConfig& config) {
    if (config.population_size < 2) throw Error("population size must be at least 2");
    if (config.budget < config.population_size) throw Error("budget must be at least the population size");
    config.operators.validate();
}

} // namespace mocoscale::detail
