#pragma once

#include "mocoscale/core.hpp"
#include "mocoscale/random.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mocoscale {

enum class Family { Motsp, Mokp, Monk, Moqap };
enum class Encoding { BitString, Permutation };
enum class Sense { Minimise, Maximise };

std::string_view family_name(Family f);
Family parse_family(std::string_view name);
Encoding encoding_of(Family f);
/// Native optimisation sense of every objective of the family.
Sense sense_of(Family f);

inline constexpr int kGeneratorVersion = 2;
inline constexpr std::size_t kDefaultMonkK = 10;

/// Asymmetric travel costs, cost(j, u, v) in [0, 1) and zero on the diagonal.
struct MotspInstance {
    std::size_t dim = 0;
    std::size_t m = 0;
    std::vector<double> cost; // [m][dim][dim]

    double at(std::size_t j, std::size_t u, std::size_t v) const { return cost[(j * dim + u) * dim + v]; }
};

struct MokpInstance {
    std::size_t dim = 0;
    std::size_t m = 0;
    std::vector<std::int32_t> value;  // [m][dim], each in [10, 100]
    std::vector<std::int32_t> weight; // [m][dim], each in [10, 100]
    std::vector<double> capacity;     // [m], half the knapsack's total weight

    /// Items sorted ascending by max_j value/weight (ties by index): the
    /// order in which repair drops items. Derived from value and weight.
    std::vector<std::int32_t> removal_order;

    std::int32_t v(std::size_t j, std::size_t i) const { return value[j * dim + i]; }
    std::int32_t w(std::size_t j, std::size_t i) const { return weight[j * dim + i]; }
};

/// NK-landscape with K epistatic links per bit and objective. Contribution
/// tables are not stored; each entry is a hash of (seed, bit, objective,
/// pattern) mapped to [0, 1).
struct MonkInstance {
    std::size_t dim = 0;
    std::size_t m = 0;
    std::size_t k = kDefaultMonkK;
    std::vector<std::int32_t> links; // [dim][m][k]
    std::uint64_t contribution_seed = 0;

    const std::int32_t* links_of(std::size_t i, std::size_t j) const { return &links[(i * m + j) * k]; }
    /// pattern bit 0 is the bit's own value, bit t+1 the value at links_of(i, j)[t].
    double contribution(std::size_t i, std::size_t j, std::uint64_t pattern) const;
};

struct MoqapInstance {
    std::size_t dim = 0;
    std::size_t m = 0;
    std::vector<double> flow; // [m][dim][dim], off-diagonal in [0, 100]
    std::vector<double> dist; // [dim][dim], Euclidean, symmetric

    double c(std::size_t j, std::size_t u, std::size_t v) const { return flow[(j * dim + u) * dim + v]; }
    double l(std::size_t p, std::size_t q) const { return dist[p * dim + q]; }
};

struct InstanceMetadata {
    Family family = Family::Mokp;
    std::size_t dim = 0;
    std::size_t m = 0;
    std::uint64_t seed = 0;
};

class ProblemInstance {
public:
    using Data = std::variant<MotspInstance, MokpInstance, MonkInstance, MoqapInstance>;

    ProblemInstance(InstanceMetadata meta, Data data);

    const InstanceMetadata& metadata() const { return meta_; }
    Family family() const { return meta_.family; }
    std::size_t dim() const { return meta_.dim; }
    std::size_t objectives() const { return meta_.m; }
    Encoding encoding() const { return encoding_of(meta_.family); }
    Sense sense() const { return sense_of(meta_.family); }
    /// Stable textual id, e.g. "motsp_D100_m2_s42".
    std::string id() const;

    const Data& data() const { return data_; }
    template <class T>
    const T& as() const { return std::get<T>(data_); }

private:
    InstanceMetadata meta_;
    Data data_;
};

/// Deterministic in all arguments. Throws Error for D < 2, m < 2, or a MONK
/// request with D <= K.
ProblemInstance generate_instance(Family family, std::size_t dim, std::size_t m, std::uint64_t seed,
                                  std::size_t monk_k = kDefaultMonkK);

/// Minimisation-oriented objective vector of g. Throws ContractViolation for
/// an encoding or length mismatch and Error for an infeasible MOKP genotype.
ObjectiveVector evaluate(const ProblemInstance& instance, const Genotype& g);

/// Objective vector in the instance's native orientation.
ObjectiveVector to_native(Family family, const ObjectiveVector& canonical);
ObjectiveVector to_canonical(Family family, const ObjectiveVector& native);

/// Item order used by repair_mokp, recomputed from value and weight.
std::vector<std::int32_t> mokp_removal_order(const MokpInstance& instance);

bool mokp_feasible(const MokpInstance& instance, const BitString& g);

/// Drops selected items in removal_order until every capacity holds.
BitString repair_mokp(const MokpInstance& instance, BitString g);

/// Reversal of positions [first, last] of a tour.
struct TwoOptMove {
    std::size_t first = 0;
    std::size_t last = 0;
};

/// Exchange of the contents of two positions.
struct SwapMove {
    std::size_t first = 0;
    std::size_t second = 0;
};

using PermutationMove = std::variant<TwoOptMove, SwapMove>;

void apply_move(Permutation& g, const PermutationMove& move);

/// Objectives of apply_move(g, move) computed from the objectives of g.
/// Supports 2-opt on MOTSP (O(segment) work) and swap on MOQAP (O(m D)).
ObjectiveVector delta_evaluate(const ProblemInstance& instance, const Permutation& g,
                               const ObjectiveVector& current, const PermutationMove& move);

/// Uniform random genotype of the instance's encoding; MOKP draws are repaired.
Genotype random_solution(const ProblemInstance& instance, Rng& rng);

/// Rotation of a tour that starts at city 0. Evaluation is rotation invariant.
Permutation canonical_tour(const Permutation& tour);

} // namespace mocoscale
