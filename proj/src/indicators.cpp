#include "mocoscale/indicators.hpp"

#include <algorithm>
#include <numeric>

namespace mocoscale {

namespace {

void require_bi(std::span<const ObjectiveVector> set, const ObjectiveVector& ref) {
    if (ref.size() != 2) throw Error("exact HV implemented for m=2 only");
    for (const auto& v : set) {
        if (v.size() != 2) throw Error("exact HV implemented for m=2 only");
    }
}

bool inside(const ObjectiveVector& v, const ObjectiveVector& ref) { return v[0] < ref[0] && v[1] < ref[1]; }

} // namespace

double hypervolume_2d(std::span<const ObjectiveVector> set, const ObjectiveVector& ref) {
    require_bi(set, ref);
    std::vector<const ObjectiveVector*> pts;
    pts.reserve(set.size());
    for (const auto& v : set)
        if (inside(v, ref)) pts.push_back(&v);
    std::sort(pts.begin(), pts.end(), [](const ObjectiveVector* a, const ObjectiveVector* b) {
        if ((*a)[0] != (*b)[0]) return (*a)[0] < (*b)[0];
        return (*a)[1] < (*b)[1];
    });
    double volume = 0.0;
    double ceiling = ref[1];
    for (const auto* p : pts) {
        if ((*p)[1] < ceiling) {
            volume += (ref[0] - (*p)[0]) * (ceiling - (*p)[1]);
            ceiling = (*p)[1];
        }
    }
    return volume;
}

double hypervolume_2d(const Archive& archive, const ObjectiveVector& ref) {
    if (ref.size() != 2 || (!archive.empty() && archive.objectives() != 2)) {
        throw Error("exact HV implemented for m=2 only");
    }
    double volume = 0.0;
    double ceiling = ref[1];
    for (const auto& member : archive) {
        const auto& p = member.objectives;
        if (p[0] >= ref[0]) break;
        if (p[1] < ceiling) {
            volume += (ref[0] - p[0]) * (ceiling - p[1]);
            ceiling = p[1];
        }
    }
    return volume;
}

std::size_t count_outside(std::span<const ObjectiveVector> set, const ObjectiveVector& ref) {
    require_bi(set, ref);
    return static_cast<std::size_t>(
        std::count_if(set.begin(), set.end(), [&](const ObjectiveVector& v) { return !inside(v, ref); }));
}

std::vector<double> hv_contributions(std::span<const ObjectiveVector> front, const ObjectiveVector& ref) {
    require_bi(front, ref);
    if (non_dominated_filter(front).size() != front.size()) {
        throw Error("front must be non-dominated");
    }
    std::vector<double> contribution(front.size(), 0.0);
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < front.size(); ++i)
        if (inside(front[i], ref)) order.push_back(i);
    // Non-dominated and sorted by f1 means f2 is non-increasing.
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (front[a][0] != front[b][0]) return front[a][0] < front[b][0];
        return a < b;
    });
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& p = front[order[k]];
        const double right = k + 1 < order.size() ? front[order[k + 1]][0] : ref[0];
        const double above = k > 0 ? front[order[k - 1]][1] : ref[1];
        contribution[order[k]] = (right - p[0]) * (above - p[1]);
    }
    return contribution;
}

double reference_coordinate(Sense sense, double min_value, double max_value) {
    const double offset = (max_value - min_value) / 10.0;
    return sense == Sense::Maximise ? min_value - offset : max_value + offset;
}

ReferencePoint sample_reference_point(const ProblemInstance& instance, std::size_t n_samples, std::uint64_t seed) {
    if (n_samples < 2) throw Error("reference point sampling needs at least 2 samples");
    Rng rng(seed);
    std::vector<ObjectiveVector> samples;
    samples.reserve(n_samples);
    for (std::size_t s = 0; s < n_samples; ++s) {
        samples.push_back(evaluate(instance, random_solution(instance, rng)));
    }
    const auto front = non_dominated_filter(samples);

    const Family family = instance.family();
    const Sense sense = instance.sense();
    const std::size_t m = instance.objectives();
    ReferencePoint ref;
    ref.sampled = true;
    ref.sampling_seed = seed;
    ref.n_samples = n_samples;
    ref.instance_id = instance.id();

    std::vector<double> native(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double lo = 0.0;
        double hi = 0.0;
        bool first = true;
        for (std::size_t idx : front) {
            const double x = to_native(family, samples[idx])[i];
            lo = first ? x : std::min(lo, x);
            hi = first ? x : std::max(hi, x);
            first = false;
        }
        if (lo == hi) {
            ref.warnings.push_back("objective " + std::to_string(i + 1) +
                                   " has zero range on the sampled front; offset is 0");
        }
        native[i] = reference_coordinate(sense, lo, hi);
    }
    ref.values = to_canonical(family, ObjectiveVector(std::move(native)));
    return ref;
}

} // namespace mocoscale
