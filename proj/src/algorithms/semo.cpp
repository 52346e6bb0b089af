#include "context.hpp"

namespace mocoscale {

namespace {

using detail::EvaluationContext;

/// The only SEMO variation: k-bit flip on bit strings (then repair), 2-opt on
/// tours, 2-swap on assignments. `known` carries the objectives of `g` when
/// they are valid, enabling incremental evaluation of permutation moves.
Individual semo_move(EvaluationContext& ctx, Genotype g, const ObjectiveVector* known, Rng& rng) {
    const auto& instance = ctx.instance();
    const Family family = instance.family();
    if (instance.encoding() == Encoding::BitString) {
        auto& bits = std::get<BitString>(g);
        bits = k_bit_flip(std::move(bits), semo_flip_count(family), rng);
        detail::make_feasible(instance, g);
        return ctx.evaluate(std::move(g));
    }
    auto& perm = std::get<Permutation>(g);
    const PermutationMove move = family == Family::Motsp ? PermutationMove{random_two_opt_move(perm.size(), rng)}
                                                         : PermutationMove{random_swap_move(perm.size(), rng)};
    if (known != nullptr) {
        ObjectiveVector f = delta_evaluate(instance, perm, *known, move);
        apply_move(perm, move);
        return ctx.accept(std::move(g), std::move(f));
    }
    apply_move(perm, move);
    return ctx.evaluate(std::move(g));
}

RunResult run_semo_family(const ProblemInstance& instance, const AlgorithmConfig& config, const RunHooks& hooks,
                          bool with_crossover) {
    if (config.budget < 1) throw Error("budget must be at least 1");
    config.operators.validate();
    Rng rng(config.seed);
    EvaluationContext ctx(instance, config.budget, hooks);

    // The context's external archive receives exactly the SEMO insertions, so
    // it doubles as the algorithm's own archive.
    ctx.evaluate(random_solution(instance, rng));

    while (!ctx.exhausted()) {
        const Archive& archive = ctx.archive();
        const std::size_t size = archive.size();
        const bool cross = with_crossover && size >= 2;
        if (cross) {
            const std::size_t a = rng.below(size);
            std::size_t b = rng.below(size - 1);
            if (b >= a) ++b;
            auto children = family_crossover(instance.family(), archive[a].genotype, archive[b].genotype, rng);
            Genotype child = rng.bernoulli(0.5) ? std::move(children.first) : std::move(children.second);
            semo_move(ctx, std::move(child), nullptr, rng);
        } else {
            const Individual& parent = archive[rng.below(size)];
            const ObjectiveVector known = parent.objectives;
            semo_move(ctx, parent.genotype, &known, rng);
        }
        ctx.trace(VariationTrace{ctx.count(), size, cross});
    }
    return std::move(ctx).finish();
}

} // namespace

RunResult run_semo(const ProblemInstance& instance, const AlgorithmConfig& config, const RunHooks& hooks) {
    return run_semo_family(instance, config, hooks, false);
}

RunResult run_semox(const ProblemInstance& instance, const AlgorithmConfig& config, const RunHooks& hooks) {
    return run_semo_family(instance, config, hooks, true);
}

} // namespace mocoscale
