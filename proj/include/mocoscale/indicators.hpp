#pragma once

#include "mocoscale/core.hpp"
#include "mocoscale/problems.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mocoscale {

/// Hypervolume reference point, stored in minimisation orientation.
struct ReferencePoint {
    ObjectiveVector values;
    bool sampled = false;
    std::uint64_t sampling_seed = 0;
    std::size_t n_samples = 0;
    std::string instance_id;
    /// Degenerate-objective notices raised while sampling.
    std::vector<std::string> warnings;
};

inline constexpr std::size_t kDefaultReferenceSamples = 10'000;

/// Exact area dominated by `set` inside the box bounded by `ref`. Points that
/// do not dominate ref add nothing. Throws Error unless every vector has two
/// objectives.
double hypervolume_2d(std::span<const ObjectiveVector> set, const ObjectiveVector& ref);

/// Same quantity for an archive, using its sorted order (O(n)).
double hypervolume_2d(const Archive& archive, const ObjectiveVector& ref);

/// Number of points that do not strictly dominate ref in both objectives.
std::size_t count_outside(std::span<const ObjectiveVector> set, const ObjectiveVector& ref);

/// contribution[i] = HV(front) - HV(front without i), via sorted neighbours.
/// Objective-equal members each contribute zero. Throws Error when a member
/// is dominated.
std::vector<double> hv_contributions(std::span<const ObjectiveVector> front, const ObjectiveVector& ref);

/// Reference point from the non-dominated subset of n_samples uniform random
/// solutions: each objective is pushed beyond that subset's nadir by a tenth
/// of its range (in native orientation), then converted to minimisation.
ReferencePoint sample_reference_point(const ProblemInstance& instance, std::size_t n_samples, std::uint64_t seed);

/// The offset rule on its own, for a native-orientation range.
double reference_coordinate(Sense sense, double min_value, double max_value);

} // namespace mocoscale
