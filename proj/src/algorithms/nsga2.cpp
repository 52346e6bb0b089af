#include "context.hpp"

namespace mocoscale {

RunResult run_nsga2(const ProblemInstance& instance, const AlgorithmConfig& config, const RunHooks& hooks) {
    detail::require_population_budget(config);
    const std::size_t n = config.population_size;
    Rng rng(config.seed);
    detail::EvaluationContext ctx(instance, config.budget, hooks);

    std::vector<Individual> pop;
    pop.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pop.push_back(ctx.evaluate(random_solution(instance, rng)));

    std::vector<std::size_t> rank;
    std::vector<double> crowding;
    detail::rank_population(pop, rank, crowding);

    while (!ctx.exhausted()) {
        std::vector<Individual> offspring;
        offspring.reserve(n);
        while (offspring.size() < n && !ctx.exhausted()) {
            const auto& p1 = pop[detail::crowded_tournament(rank, crowding, rng)];
            const auto& p2 = pop[detail::crowded_tournament(rank, crowding, rng)];
            auto [c1, c2] = detail::crossover_step(instance, config.operators, p1.genotype, p2.genotype, rng);
            detail::mutate_step(instance, config.operators, c1, rng);
            detail::mutate_step(instance, config.operators, c2, rng);
            offspring.push_back(ctx.evaluate(std::move(c1)));
            if (offspring.size() < n && !ctx.exhausted()) offspring.push_back(ctx.evaluate(std::move(c2)));
        }

        std::vector<Individual> combined = std::move(pop);
        for (auto& child : offspring) combined.push_back(std::move(child));
        const auto selection = nsga2_select(detail::objectives_of(combined), n);

        pop.clear();
        for (auto idx : selection.survivors) pop.push_back(std::move(combined[idx]));
        rank = selection.rank;
        crowding = selection.crowding;
    }
    return std::move(ctx).finish();
}

} // namespace mocoscale
