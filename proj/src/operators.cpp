#include "mocoscale/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mocoscale {

std::string_view semantics_name(PermutationMutationSemantics s) {
    return s == PermutationMutationSemantics::PerGene ? "per_gene" : "per_offspring";
}

PermutationMutationSemantics parse_semantics(std::string_view name) {
    if (name == "per_offspring") return PermutationMutationSemantics::PerOffspring;
    if (name == "per_gene") return PermutationMutationSemantics::PerGene;
    throw Error("unknown permutation_mutation_semantics '" + std::string(name) + "'");
}

void OperatorConfig::validate() const {
    auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!in_unit(crossover_rate) || !in_unit(permutation_mutation_rate) ||
        (bit_mutation_rate && !in_unit(*bit_mutation_rate))) {
        throw Error("operator rates must lie in [0, 1]");
    }
}

std::pair<BitString, BitString> uniform_crossover(const BitString& a, const BitString& b, Rng& rng) {
    if (a.size() != b.size()) throw ContractViolation("uniform_crossover: length mismatch");
    BitString c1 = a;
    BitString c2 = b;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; i += 64) {
        const std::uint64_t word = rng.next_u64();
        for (std::size_t t = 0; t < 64 && i + t < n; ++t) {
            if ((word >> t) & 1U) std::swap(c1.bits[i + t], c2.bits[i + t]);
        }
    }
    return {std::move(c1), std::move(c2)};
}

BitString bitflip_mutation(BitString g, double p, Rng& rng) {
    if (p <= 0.0) return g;
    if (p >= 1.0) {
        for (auto& bit : g.bits) bit ^= 1U;
        return g;
    }
    // Jump straight to the next flipped position; gaps are geometric.
    const double log_q = std::log1p(-p);
    std::size_t pos = 0;
    while (true) {
        const double u = 1.0 - rng.uniform01(); // (0, 1]
        const double skip = std::floor(std::log(u) / log_q);
        if (skip >= static_cast<double>(g.size() - pos)) break;
        pos += static_cast<std::size_t>(skip);
        g.bits[pos] ^= 1U;
        ++pos;
        if (pos >= g.size()) break;
    }
    return g;
}

BitString k_bit_flip(BitString g, std::size_t k, Rng& rng) {
    if (k == 0 || k > 2 || k > g.size()) throw ContractViolation("k_bit_flip: k must be 1 or 2 and at most D");
    const std::size_t i = rng.below(g.size());
    g.bits[i] ^= 1U;
    if (k == 2) {
        std::size_t j = rng.below(g.size() - 1);
        if (j >= i) ++j;
        g.bits[j] ^= 1U;
    }
    return g;
}

namespace {

Permutation ox_child(const Permutation& keep, const Permutation& fill, std::size_t first, std::size_t last) {
    const std::size_t n = keep.size();
    Permutation child;
    child.order.assign(n, -1);
    std::vector<std::uint8_t> used(n, 0);
    for (std::size_t i = first; i <= last; ++i) {
        child.order[i] = keep.order[i];
        used[keep.order[i]] = 1;
    }
    std::size_t write = (last + 1) % n;
    for (std::size_t step = 0; step < n; ++step) {
        const auto city = fill.order[(last + 1 + step) % n];
        if (used[city]) continue;
        child.order[write] = city;
        write = (write + 1) % n;
    }
    return child;
}

void check_same_length(const Permutation& a, const Permutation& b, const char* who) {
    if (a.size() != b.size()) throw ContractViolation(std::string(who) + ": length mismatch");
}

} // namespace

std::pair<Permutation, Permutation> order_crossover(const Permutation& a, const Permutation& b, std::size_t first,
                                                    std::size_t last) {
    check_same_length(a, b, "order_crossover");
    if (first > last || last >= a.size()) throw ContractViolation("order_crossover: bad segment");
    return {ox_child(a, b, first, last), ox_child(b, a, first, last)};
}

std::pair<Permutation, Permutation> order_crossover(const Permutation& a, const Permutation& b, Rng& rng) {
    check_same_length(a, b, "order_crossover");
    std::size_t i = rng.below(a.size());
    std::size_t j = rng.below(a.size());
    if (i > j) std::swap(i, j);
    return order_crossover(a, b, i, j);
}

std::pair<Permutation, Permutation> cycle_crossover(const Permutation& a, const Permutation& b) {
    check_same_length(a, b, "cycle_crossover");
    const std::size_t n = a.size();
    std::vector<std::size_t> pos_in_a(n);
    for (std::size_t i = 0; i < n; ++i) pos_in_a[a.order[i]] = i;

    Permutation c1 = a;
    Permutation c2 = b;
    std::vector<std::uint8_t> visited(n, 0);
    bool from_a = true;
    for (std::size_t start = 0; start < n; ++start) {
        if (visited[start]) continue;
        std::size_t i = start;
        do {
            visited[i] = 1;
            if (!from_a) {
                c1.order[i] = b.order[i];
                c2.order[i] = a.order[i];
            }
            i = pos_in_a[b.order[i]];
        } while (i != start);
        from_a = !from_a;
    }
    return {std::move(c1), std::move(c2)};
}

TwoOptMove random_two_opt_move(std::size_t dim, Rng& rng) {
    std::size_t i = rng.below(dim);
    std::size_t j = rng.below(dim - 1);
    if (j >= i) ++j;
    return {std::min(i, j), std::max(i, j)};
}

SwapMove random_swap_move(std::size_t dim, Rng& rng) {
    std::size_t i = rng.below(dim);
    std::size_t j = rng.below(dim - 1);
    if (j >= i) ++j;
    return {i, j};
}

Permutation two_opt_mutation(Permutation g, Rng& rng) {
    if (g.size() < 3) throw ContractViolation("two_opt_mutation: D must be at least 3");
    apply_move(g, random_two_opt_move(g.size(), rng));
    return g;
}

Permutation two_swap_mutation(Permutation g, Rng& rng) {
    if (g.size() < 2) throw ContractViolation("two_swap_mutation: D must be at least 2");
    apply_move(g, random_swap_move(g.size(), rng));
    return g;
}

std::pair<Genotype, Genotype> family_crossover(Family family, const Genotype& a, const Genotype& b, Rng& rng) {
    switch (family) {
    case Family::Mokp:
    case Family::Monk: {
        auto [c1, c2] = uniform_crossover(std::get<BitString>(a), std::get<BitString>(b), rng);
        return {std::move(c1), std::move(c2)};
    }
    case Family::Motsp: {
        auto [c1, c2] = order_crossover(std::get<Permutation>(a), std::get<Permutation>(b), rng);
        return {std::move(c1), std::move(c2)};
    }
    case Family::Moqap: {
        auto [c1, c2] = cycle_crossover(std::get<Permutation>(a), std::get<Permutation>(b));
        return {std::move(c1), std::move(c2)};
    }
    }
    throw ContractViolation("family_crossover: unknown family");
}

void ga_mutate(Family family, Genotype& g, const OperatorConfig& config, Rng& rng) {
    if (encoding_of(family) == Encoding::BitString) {
        auto& bits = std::get<BitString>(g);
        const double p = config.bit_mutation_rate.value_or(1.0 / static_cast<double>(bits.size()));
        bits = bitflip_mutation(std::move(bits), p, rng);
        return;
    }
    auto& perm = std::get<Permutation>(g);
    const std::size_t n = perm.size();
    auto move_at = [&](std::size_t i) -> PermutationMove {
        std::size_t j = rng.below(n - 1);
        if (j >= i) ++j;
        if (family == Family::Motsp) return TwoOptMove{std::min(i, j), std::max(i, j)};
        return SwapMove{i, j};
    };
    if (config.permutation_semantics == PermutationMutationSemantics::PerOffspring) {
        if (!rng.bernoulli(config.permutation_mutation_rate)) return;
        if (family == Family::Motsp) {
            apply_move(perm, random_two_opt_move(n, rng));
        } else {
            apply_move(perm, random_swap_move(n, rng));
        }
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (rng.bernoulli(config.permutation_mutation_rate)) apply_move(perm, move_at(i));
    }
}

std::size_t semo_flip_count(Family family) {
    return family == Family::Mokp ? 2 : 1;
}

} // namespace mocoscale
