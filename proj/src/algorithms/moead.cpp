#include "context.hpp"

#include <algorithm>

namespace mocoscale {

RunResult run_moead(const ProblemInstance& instance, const AlgorithmConfig& config, const RunHooks& hooks) {
    detail::require_population_budget(config);
    if (instance.objectives() != 2) throw Error("MOEA/D weight generation implemented for m=2 only");
    if (config.moead_neighborhood < 2) throw Error("MOEA/D neighbourhood size must be at least 2");
    const std::size_t n = config.population_size;
    const auto weights = moead_weights(n);
    const auto neighbours = moead_neighbourhoods(weights, config.moead_neighborhood);

    Rng rng(config.seed);
    detail::EvaluationContext ctx(instance, config.budget, hooks);

    std::vector<Individual> pop;
    pop.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pop.push_back(ctx.evaluate(random_solution(instance, rng)));

    ObjectiveVector ideal = pop.front().objectives;
    auto update_ideal = [&](const ObjectiveVector& f) {
        for (std::size_t k = 0; k < ideal.size(); ++k) ideal[k] = std::min(ideal[k], f[k]);
    };
    for (const auto& ind : pop) update_ideal(ind.objectives);

    while (!ctx.exhausted()) {
        for (std::size_t i = 0; i < n && !ctx.exhausted(); ++i) {
            const auto& hood = neighbours[i];
            const std::size_t k = rng.below(hood.size());
            std::size_t l = rng.below(hood.size() - 1);
            if (l >= k) ++l;
            auto children =
                detail::crossover_step(instance, config.operators, pop[hood[k]].genotype, pop[hood[l]].genotype, rng);
            Genotype child = rng.bernoulli(0.5) ? std::move(children.first) : std::move(children.second);
            detail::mutate_step(instance, config.operators, child, rng);
            const Individual y = ctx.evaluate(std::move(child));
            update_ideal(y.objectives);

            for (std::size_t j : hood) {
                const double candidate = tchebycheff(y.objectives, weights[j], ideal);
                const double incumbent = tchebycheff(pop[j].objectives, weights[j], ideal);
                if (candidate < incumbent) {
                    pop[j] = y;
                    if (hooks.on_replacement) hooks.on_replacement(j, incumbent, candidate);
                }
            }
        }
    }
    return std::move(ctx).finish();
}

} // namespace mocoscale
