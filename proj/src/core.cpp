#include "mocoscale/core.hpp"

#include <algorithm>
#include <cmath>

namespace mocoscale {

std::size_t genotype_size(const Genotype& g) {
    return std::visit([](const auto& x) { return x.size(); }, g);
}

bool is_permutation(std::span<const std::int32_t> order) {
    std::vector<std::uint8_t> seen(order.size(), 0);
    for (std::int32_t v : order) {
        if (v < 0 || static_cast<std::size_t>(v) >= order.size() || seen[v]) {
            return false;
        }
        seen[v] = 1;
    }
    return true;
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.size() != b.size()) {
        throw ContractViolation("dominates: objective count mismatch");
    }
    bool strictly_better = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) {
            return false;
        }
        if (a[i] < b[i]) {
            strictly_better = true;
        }
    }
    return strictly_better;
}

std::vector<std::size_t> non_dominated_filter(std::span<const ObjectiveVector> set) {
    if (set.empty()) {
        throw Error("empty set");
    }
    const std::size_t m = set.front().size();
    for (const auto& v : set) {
        if (v.size() != m) {
            throw ContractViolation("non_dominated_filter: objective count mismatch");
        }
    }

    std::vector<std::size_t> kept;
    if (m == 2) {
        // Sweep in lexicographic order; a point is dominated iff some earlier
        // distinct point has f2 <= its f2.
        std::vector<std::size_t> order(set.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (set[a][0] != set[b][0]) return set[a][0] < set[b][0];
            if (set[a][1] != set[b][1]) return set[a][1] < set[b][1];
            return a < b;
        });
        double best_f2 = INFINITY;
        const ObjectiveVector* best = nullptr;
        for (std::size_t idx : order) {
            const auto& v = set[idx];
            if (best != nullptr && best_f2 <= v[1] && !(*best == v)) {
                continue;
            }
            kept.push_back(idx);
            if (v[1] < best_f2) {
                best_f2 = v[1];
                best = &v;
            }
        }
        std::sort(kept.begin(), kept.end());
        return kept;
    }

    for (std::size_t i = 0; i < set.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < set.size() && !dominated; ++j) {
            dominated = j != i && dominates(set[j], set[i]);
        }
        if (!dominated) kept.push_back(i);
    }
    return kept;
}

namespace {

bool lex_less(const ObjectiveVector& a, const ObjectiveVector& b) {
    return std::lexicographical_compare(a.values().begin(), a.values().end(),
                                        b.values().begin(), b.values().end());
}

bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
    }
    return true;
}

void check_finite(const ObjectiveVector& v) {
    for (double x : v.values()) {
        if (!std::isfinite(x)) {
            throw ContractViolation("archive: objective values must be finite");
        }
    }
}

} // namespace

InsertOutcome naive_archive_insert(std::vector<Individual>& members, Individual candidate) {
    for (const auto& member : members) {
        if (weakly_dominates(member.objectives, candidate.objectives)) {
            return {};
        }
    }
    const auto before = members.size();
    std::erase_if(members, [&](const Individual& member) {
        return dominates(candidate.objectives, member.objectives);
    });
    const auto removed = before - members.size();
    auto pos = std::upper_bound(members.begin(), members.end(), candidate.objectives,
                                [](const ObjectiveVector& v, const Individual& member) {
                                    return lex_less(v, member.objectives);
                                });
    members.insert(pos, std::move(candidate));
    return {true, removed};
}

InsertOutcome Archive::insert(Individual candidate) {
    check_finite(candidate.objectives);
    if (members_.empty()) {
        if (candidate.objectives.size() < 2) {
            throw ContractViolation("archive: at least two objectives required");
        }
        m_ = candidate.objectives.size();
    } else if (candidate.objectives.size() != m_) {
        throw ContractViolation("archive: objective count mismatch");
    }
    return m_ == 2 ? insert_bi(std::move(candidate)) : insert_general(std::move(candidate));
}

InsertOutcome Archive::insert_bi(Individual candidate) {
    const double x = candidate.objectives[0];
    const double y = candidate.objectives[1];

    // First member with f1 > x. Its predecessor has the smallest f2 among all
    // members with f1 <= x, so it is the only one that can cover the candidate.
    auto after = std::upper_bound(members_.begin(), members_.end(), x,
                                  [](double v, const Individual& a) { return v < a.objectives[0]; });
    if (after != members_.begin() && std::prev(after)->objectives[1] <= y) {
        return {};
    }

    // Members with f1 >= x and f2 >= y are dominated; f2 decreases along the
    // list so they form a contiguous run starting at lower_bound(x).
    auto first = std::lower_bound(members_.begin(), members_.end(), x,
                                  [](const Individual& a, double v) { return a.objectives[0] < v; });
    auto last = first;
    while (last != members_.end() && last->objectives[1] >= y) {
        ++last;
    }
    const auto removed = static_cast<std::size_t>(last - first);
    if (first == last) {
        members_.insert(first, std::move(candidate));
    } else {
        *first = std::move(candidate);
        members_.erase(std::next(first), last);
    }
    return {true, removed};
}

InsertOutcome Archive::insert_general(Individual candidate) {
    return naive_archive_insert(members_, std::move(candidate));
}

bool Archive::covers(const ObjectiveVector& v) const {
    if (members_.empty()) return false;
    if (v.size() != m_) {
        throw ContractViolation("archive: objective count mismatch");
    }
    if (m_ == 2) {
        auto after = std::upper_bound(members_.begin(), members_.end(), v[0],
                                      [](double x, const Individual& a) { return x < a.objectives[0]; });
        return after != members_.begin() && std::prev(after)->objectives[1] <= v[1];
    }
    return std::any_of(members_.begin(), members_.end(),
                       [&](const Individual& a) { return weakly_dominates(a.objectives, v); });
}

std::vector<ObjectiveVector> Archive::objective_vectors() const {
    std::vector<ObjectiveVector> out;
    out.reserve(members_.size());
    for (const auto& member : members_) out.push_back(member.objectives);
    return out;
}

} // namespace mocoscale
