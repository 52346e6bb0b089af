#pragma once

#include "mocoscale/core.hpp"
#include "mocoscale/problems.hpp"
#include "mocoscale/random.hpp"

#include <optional>
#include <string_view>
#include <utility>

namespace mocoscale {

/// How the permutation mutation rate is read inside the GAs.
enum class PermutationMutationSemantics {
    PerOffspring, ///< one move with probability rate per offspring
    PerGene,      ///< each position starts a move with probability rate
};

std::string_view semantics_name(PermutationMutationSemantics s);
PermutationMutationSemantics parse_semantics(std::string_view name);

struct OperatorConfig {
    double crossover_rate = 1.0;
    /// Per-bit flip probability; unset means 1/D.
    std::optional<double> bit_mutation_rate;
    double permutation_mutation_rate = 0.05;
    PermutationMutationSemantics permutation_semantics = PermutationMutationSemantics::PerOffspring;

    void validate() const;
};

// Bit strings -----------------------------------------------------------------

/// Each position is exchanged between the children with probability 1/2.
std::pair<BitString, BitString> uniform_crossover(const BitString& a, const BitString& b, Rng& rng);

/// Flips every bit independently with probability p.
BitString bitflip_mutation(BitString g, double p, Rng& rng);

/// Flips exactly k distinct uniformly chosen positions (k is 1 or 2).
BitString k_bit_flip(BitString g, std::size_t k, Rng& rng);

// Permutations ----------------------------------------------------------------

/// Classic OX: child1 keeps a[first..last] and takes the rest in b's order
/// starting after the segment, wrapping around; child2 swaps the roles.
std::pair<Permutation, Permutation> order_crossover(const Permutation& a, const Permutation& b, Rng& rng);
std::pair<Permutation, Permutation> order_crossover(const Permutation& a, const Permutation& b, std::size_t first,
                                                    std::size_t last);

/// Classic CX: positions split into cycles of the a->b mapping, cycles are
/// copied alternately from a and b starting with a for child1.
std::pair<Permutation, Permutation> cycle_crossover(const Permutation& a, const Permutation& b);

/// Uniform pair of cut points first < last.
TwoOptMove random_two_opt_move(std::size_t dim, Rng& rng);
/// Uniform pair of distinct positions.
SwapMove random_swap_move(std::size_t dim, Rng& rng);

Permutation two_opt_mutation(Permutation g, Rng& rng);
Permutation two_swap_mutation(Permutation g, Rng& rng);

// Per-family pipelines --------------------------------------------------------

/// The family's crossover: uniform for bit strings, OX for MOTSP, CX for MOQAP.
std::pair<Genotype, Genotype> family_crossover(Family family, const Genotype& a, const Genotype& b, Rng& rng);

/// GA mutation: bit-flip at the configured rate, or 2-opt (MOTSP) / 2-swap
/// (MOQAP) applied per the configured semantics.
void ga_mutate(Family family, Genotype& g, const OperatorConfig& config, Rng& rng);

/// One SEMO local move on a bit string: two-bit flip for MOKP, one-bit for MONK.
std::size_t semo_flip_count(Family family);

} // namespace mocoscale
