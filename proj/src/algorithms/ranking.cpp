#include "mocoscale/algorithms.hpp"
#include "mocoscale/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mocoscale {

std::vector<std::uint64_t> checkpoint_grid(std::uint64_t budget) {
    std::vector<std::uint64_t> grid;
    for (int k = 0;; ++k) {
        const auto c = static_cast<std::uint64_t>(std::llround(std::pow(10.0, k / 25.0)));
        if (c >= budget) break;
        if (grid.empty() || c > grid.back()) grid.push_back(c);
    }
    if (budget > 0) grid.push_back(budget);
    return grid;
}

namespace {

std::vector<std::vector<std::size_t>> sort_bi(std::span<const ObjectiveVector> pop) {
    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (pop[a][0] != pop[b][0]) return pop[a][0] < pop[b][0];
        if (pop[a][1] != pop[b][1]) return pop[a][1] < pop[b][1];
        return a < b;
    });
    // In lexicographic order every front's latest member has the front's
    // smallest f2, so it alone decides whether the front dominates a newcomer.
    std::vector<std::vector<std::size_t>> fronts;
    for (std::size_t idx : order) {
        const auto& p = pop[idx];
        std::size_t f = 0;
        for (; f < fronts.size(); ++f) {
            const auto& last = pop[fronts[f].back()];
            if (!dominates(last, p)) break;
        }
        if (f == fronts.size()) fronts.emplace_back();
        fronts[f].push_back(idx);
    }
    for (auto& front : fronts) std::sort(front.begin(), front.end());
    return fronts;
}

std::vector<std::vector<std::size_t>> sort_general(std::span<const ObjectiveVector> pop) {
    const std::size_t n = pop.size();
    std::vector<std::vector<std::size_t>> dominated_by(n);
    std::vector<std::size_t> counter(n, 0);
    std::vector<std::vector<std::size_t>> fronts(1);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (dominates(pop[p], pop[q])) {
                dominated_by[p].push_back(q);
            } else if (dominates(pop[q], pop[p])) {
                ++counter[p];
            }
        }
        if (counter[p] == 0) fronts[0].push_back(p);
    }
    while (true) {
        std::vector<std::size_t> next;
        for (std::size_t p : fronts.back()) {
            for (std::size_t q : dominated_by[p]) {
                if (--counter[q] == 0) next.push_back(q);
            }
        }
        if (next.empty()) break;
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(next));
    }
    return fronts;
}

} // namespace

std::vector<std::vector<std::size_t>> fast_nondominated_sort(std::span<const ObjectiveVector> pop) {
    if (pop.empty()) throw ContractViolation("fast_nondominated_sort: empty population");
    const std::size_t m = pop.front().size();
    for (const auto& v : pop) {
        if (v.size() != m) throw ContractViolation("fast_nondominated_sort: objective count mismatch");
    }
    return m == 2 ? sort_bi(pop) : sort_general(pop);
}

std::vector<double> crowding_distance(std::span<const ObjectiveVector> front) {
    const std::size_t n = front.size();
    if (n == 0) throw ContractViolation("crowding_distance: empty front");
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> distance(n, 0.0);
    if (n <= 2) {
        std::fill(distance.begin(), distance.end(), inf);
        return distance;
    }
    std::vector<std::size_t> order(n);
    for (std::size_t obj = 0; obj < front.front().size(); ++obj) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return front[a][obj] < front[b][obj]; });
        const double lo = front[order.front()][obj];
        const double hi = front[order.back()][obj];
        distance[order.front()] = inf;
        distance[order.back()] = inf;
        if (hi == lo) continue;
        for (std::size_t k = 1; k + 1 < n; ++k) {
            distance[order[k]] += (front[order[k + 1]][obj] - front[order[k - 1]][obj]) / (hi - lo);
        }
    }
    return distance;
}

double tchebycheff(const ObjectiveVector& f, std::span<const double> weight, const ObjectiveVector& ideal) {
    if (f.size() != weight.size() || f.size() != ideal.size()) {
        throw ContractViolation("tchebycheff: dimension mismatch");
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        worst = std::max(worst, weight[k] * std::abs(f[k] - ideal[k]));
    }
    return worst;
}

RankedSelection nsga2_select(std::span<const ObjectiveVector> combined, std::size_t n) {
    if (n > combined.size()) throw ContractViolation("nsga2_select: not enough candidates");
    RankedSelection out;
    const auto fronts = fast_nondominated_sort(combined);
    for (std::size_t r = 0; r < fronts.size() && out.survivors.size() < n; ++r) {
        const auto& front = fronts[r];
        std::vector<ObjectiveVector> members;
        members.reserve(front.size());
        for (auto idx : front) members.push_back(combined[idx]);
        const auto cd = crowding_distance(members);

        std::vector<std::size_t> pick(front.size());
        std::iota(pick.begin(), pick.end(), 0);
        if (out.survivors.size() + front.size() > n) {
            // front indices ascend, so a stable sort breaks ties to the lower index
            std::stable_sort(pick.begin(), pick.end(), [&](std::size_t a, std::size_t b) { return cd[a] > cd[b]; });
            pick.resize(n - out.survivors.size());
        }
        for (auto k : pick) {
            out.survivors.push_back(front[k]);
            out.rank.push_back(r);
            out.crowding.push_back(cd[k]);
        }
    }
    return out;
}

std::size_t smsemoa_removal_index(std::span<const ObjectiveVector> combined) {
    const auto fronts = fast_nondominated_sort(combined);
    const auto& worst = fronts.back();
    if (worst.size() == 1) return worst.front();

    std::vector<ObjectiveVector> members;
    members.reserve(worst.size());
    for (auto idx : worst) members.push_back(combined[idx]);
    ObjectiveVector ref = members.front();
    for (const auto& v : members)
        for (std::size_t k = 0; k < ref.size(); ++k) ref[k] = std::max(ref[k], v[k]);
    for (std::size_t k = 0; k < ref.size(); ++k) ref[k] += 1.0;

    const auto contribution = hv_contributions(members, ref);
    const auto best = std::min_element(contribution.begin(), contribution.end());
    return worst[static_cast<std::size_t>(best - contribution.begin())];
}

std::vector<std::vector<double>> moead_weights(std::size_t n) {
    if (n < 2) throw Error("MOEA/D needs at least two weight vectors");
    std::vector<std::vector<double>> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = static_cast<double>(i) / static_cast<double>(n - 1);
        w[i] = {a, 1.0 - a};
    }
    return w;
}

std::vector<std::vector<std::size_t>> moead_neighbourhoods(const std::vector<std::vector<double>>& weights,
                                                            std::size_t t) {
    const std::size_t n = weights.size();
    t = std::min(t, n);
    std::vector<std::vector<std::size_t>> out(n);
    std::vector<std::size_t> order(n);
    std::vector<double> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double d = 0.0;
            for (std::size_t k = 0; k < weights[i].size(); ++k) {
                const double diff = weights[i][k] - weights[j][k];
                d += diff * diff;
            }
            dist[j] = d;
        }
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
        out[i].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(t));
    }
    return out;
}

} // namespace mocoscale
