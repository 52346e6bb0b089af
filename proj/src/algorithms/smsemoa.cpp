#include "context.hpp"

namespace mocoscale {

RunResult run_smsemoa(const ProblemInstance& instance, const AlgorithmConfig& config, const RunHooks& hooks) {
    detail::require_population_budget(config);
    if (instance.objectives() != 2) throw Error("SMS-EMOA selection implemented for m=2 only");
    const std::size_t n = config.population_size;
    Rng rng(config.seed);
    detail::EvaluationContext ctx(instance, config.budget, hooks);

    std::vector<Individual> pop;
    pop.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) pop.push_back(ctx.evaluate(random_solution(instance, rng)));

    std::vector<std::size_t> rank;
    std::vector<double> crowding;
    while (!ctx.exhausted()) {
        std::size_t a = 0;
        std::size_t b = 0;
        if (config.smsemoa_parent_selection == ParentSelection::Tournament) {
            detail::rank_population(pop, rank, crowding);
            a = detail::crowded_tournament(rank, crowding, rng);
            b = detail::crowded_tournament(rank, crowding, rng);
        } else {
            a = rng.below(n);
            b = rng.below(n);
        }
        auto children = detail::crossover_step(instance, config.operators, pop[a].genotype, pop[b].genotype, rng);
        Genotype child = rng.bernoulli(0.5) ? std::move(children.first) : std::move(children.second);
        detail::mutate_step(instance, config.operators, child, rng);
        pop.push_back(ctx.evaluate(std::move(child)));

        const auto removed = smsemoa_removal_index(detail::objectives_of(pop));
        pop.erase(pop.begin() + static_cast<std::ptrdiff_t>(removed));
    }
    return std::move(ctx).finish();
}

} // namespace mocoscale
