#include "mocoscale/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mocoscale {

std::string_view family_name(Family f) {
    switch (f) {
    case Family::Motsp: return "motsp";
    case Family::Mokp: return "mokp";
    case Family::Monk: return "monk";
    case Family::Moqap: return "moqap";
    }
    return "?";
}

Family parse_family(std::string_view name) {
    if (name == "motsp") return Family::Motsp;
    if (name == "mokp") return Family::Mokp;
    if (name == "monk") return Family::Monk;
    if (name == "moqap") return Family::Moqap;
    throw Error("unknown problem family '" + std::string(name) + "'");
}

Encoding encoding_of(Family f) {
    return (f == Family::Mokp || f == Family::Monk) ? Encoding::BitString : Encoding::Permutation;
}

Sense sense_of(Family f) {
    return (f == Family::Mokp || f == Family::Monk) ? Sense::Maximise : Sense::Minimise;
}

double MonkInstance::contribution(std::size_t i, std::size_t j, std::uint64_t pattern) const {
    std::uint64_t h = combine_seed(contribution_seed, i);
    h = combine_seed(h, j);
    h = combine_seed(h, pattern);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

ProblemInstance::ProblemInstance(InstanceMetadata meta, Data data) : meta_(meta), data_(std::move(data)) {}

std::string ProblemInstance::id() const {
    return std::string(family_name(meta_.family)) + "_D" + std::to_string(meta_.dim) + "_m" +
           std::to_string(meta_.m) + "_s" + std::to_string(meta_.seed);
}

std::vector<std::int32_t> mokp_removal_order(const MokpInstance& p) {
    std::vector<double> ratio(p.dim, 0.0);
    for (std::size_t i = 0; i < p.dim; ++i) {
        double best = 0.0;
        for (std::size_t j = 0; j < p.m; ++j) {
            best = std::max(best, static_cast<double>(p.v(j, i)) / p.w(j, i));
        }
        ratio[i] = best;
    }
    std::vector<std::int32_t> order(p.dim);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return ratio[a] < ratio[b]; });
    return order;
}

namespace {

MotspInstance make_motsp(std::size_t dim, std::size_t m, Rng& rng) {
    MotspInstance p{dim, m, std::vector<double>(m * dim * dim, 0.0)};
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t u = 0; u < dim; ++u)
            for (std::size_t v = u + 1; v < dim; ++v)
                p.cost[(j * dim + u) * dim + v] = p.cost[(j * dim + v) * dim + u] = rng.uniform01();
    return p;
}

MokpInstance make_mokp(std::size_t dim, std::size_t m, Rng& rng) {
    MokpInstance p;
    p.dim = dim;
    p.m = m;
    p.value.resize(m * dim);
    p.weight.resize(m * dim);
    for (auto& x : p.value) x = static_cast<std::int32_t>(rng.uniform_int(10, 100));
    for (auto& x : p.weight) x = static_cast<std::int32_t>(rng.uniform_int(10, 100));
    p.capacity.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        std::int64_t total = 0;
        for (std::size_t i = 0; i < dim; ++i) total += p.w(j, i);
        p.capacity[j] = static_cast<double>(total) / 2.0;
    }
    p.removal_order = mokp_removal_order(p);
    return p;
}

MonkInstance make_monk(std::size_t dim, std::size_t m, std::size_t k, std::uint64_t seed, Rng& rng) {
    MonkInstance p;
    p.dim = dim;
    p.m = m;
    p.k = k;
    p.links.resize(dim * m * k);
    p.contribution_seed = combine_seed(seed, hash_name("monk-contributions"));
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            std::int32_t* out = &p.links[(i * m + j) * k];
            std::size_t filled = 0;
            while (filled < k) {
                const auto cand = static_cast<std::int32_t>(rng.below(dim));
                if (static_cast<std::size_t>(cand) == i || std::find(out, out + filled, cand) != out + filled) {
                    continue;
                }
                out[filled++] = cand;
            }
        }
    }
    return p;
}

MoqapInstance make_moqap(std::size_t dim, std::size_t m, Rng& rng) {
    MoqapInstance p{dim, m, std::vector<double>(m * dim * dim, 0.0), std::vector<double>(dim * dim, 0.0)};
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t u = 0; u < dim; ++u)
            for (std::size_t v = 0; v < dim; ++v)
                if (u != v) p.flow[(j * dim + u) * dim + v] = rng.uniform(0.0, 100.0);
    std::vector<double> x(dim), y(dim);
    for (std::size_t q = 0; q < dim; ++q) {
        x[q] = rng.uniform(0.0, 5000.0);
        y[q] = rng.uniform(0.0, 5000.0);
    }
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = a + 1; b < dim; ++b) {
            const double d = std::hypot(x[a] - x[b], y[a] - y[b]);
            p.dist[a * dim + b] = d;
            p.dist[b * dim + a] = d;
        }
    return p;
}

const Permutation& expect_permutation(const ProblemInstance& instance, const Genotype& g) {
    const auto* perm = std::get_if<Permutation>(&g);
    if (perm == nullptr || perm->size() != instance.dim()) {
        throw ContractViolation("evaluate: genotype does not match the instance encoding");
    }
    return *perm;
}

const BitString& expect_bits(const ProblemInstance& instance, const Genotype& g) {
    const auto* bits = std::get_if<BitString>(&g);
    if (bits == nullptr || bits->size() != instance.dim()) {
        throw ContractViolation("evaluate: genotype does not match the instance encoding");
    }
    return *bits;
}

ObjectiveVector eval_motsp(const MotspInstance& p, const Permutation& g) {
    std::vector<double> f(p.m, 0.0);
    const auto& t = g.order;
    for (std::size_t j = 0; j < p.m; ++j) {
        double sum = 0.0;
        for (std::size_t k = 0; k + 1 < p.dim; ++k) sum += p.at(j, t[k], t[k + 1]);
        sum += p.at(j, t[p.dim - 1], t[0]);
        f[j] = sum;
    }
    return ObjectiveVector(std::move(f));
}

ObjectiveVector eval_mokp(const MokpInstance& p, const BitString& g) {
    if (!mokp_feasible(p, g)) {
        throw Error("evaluate requires feasible genotype");
    }
    std::vector<double> f(p.m, 0.0);
    for (std::size_t j = 0; j < p.m; ++j) {
        std::int64_t sum = 0;
        for (std::size_t i = 0; i < p.dim; ++i)
            if (g.bits[i]) sum += p.v(j, i);
        f[j] = -static_cast<double>(sum);
    }
    return ObjectiveVector(std::move(f));
}

ObjectiveVector eval_monk(const MonkInstance& p, const BitString& g) {
    std::vector<double> f(p.m, 0.0);
    for (std::size_t j = 0; j < p.m; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < p.dim; ++i) {
            std::uint64_t pattern = g.bits[i] ? 1 : 0;
            const std::int32_t* link = p.links_of(i, j);
            for (std::size_t t = 0; t < p.k; ++t) {
                if (g.bits[link[t]]) pattern |= std::uint64_t{1} << (t + 1);
            }
            sum += p.contribution(i, j, pattern);
        }
        f[j] = -sum / static_cast<double>(p.dim);
    }
    return ObjectiveVector(std::move(f));
}

ObjectiveVector eval_moqap(const MoqapInstance& p, const Permutation& g) {
    std::vector<double> f(p.m, 0.0);
    const auto& loc = g.order;
    for (std::size_t j = 0; j < p.m; ++j) {
        double sum = 0.0;
        for (std::size_t u = 0; u < p.dim; ++u) {
            const double* flow_row = &p.flow[(j * p.dim + u) * p.dim];
            const double* dist_row = &p.dist[static_cast<std::size_t>(loc[u]) * p.dim];
            for (std::size_t v = 0; v < p.dim; ++v) sum += flow_row[v] * dist_row[loc[v]];
        }
        f[j] = sum;
    }
    return ObjectiveVector(std::move(f));
}

} // namespace

ProblemInstance generate_instance(Family family, std::size_t dim, std::size_t m, std::uint64_t seed,
                                  std::size_t monk_k) {
    if (dim < 2) throw Error("dimension must be at least 2");
    if (m < 2) throw Error("at least two objectives are required");
    if (family == Family::Monk && dim <= monk_k) throw Error("K must be < D");

    Rng rng(seed);
    const InstanceMetadata meta{family, dim, m, seed};
    switch (family) {
    case Family::Motsp: return {meta, make_motsp(dim, m, rng)};
    case Family::Mokp: return {meta, make_mokp(dim, m, rng)};
    case Family::Monk: return {meta, make_monk(dim, m, monk_k, seed, rng)};
    case Family::Moqap: return {meta, make_moqap(dim, m, rng)};
    }
    throw Error("unknown problem family");
}

ObjectiveVector evaluate(const ProblemInstance& instance, const Genotype& g) {
    switch (instance.family()) {
    case Family::Motsp: return eval_motsp(instance.as<MotspInstance>(), expect_permutation(instance, g));
    case Family::Mokp: return eval_mokp(instance.as<MokpInstance>(), expect_bits(instance, g));
    case Family::Monk: return eval_monk(instance.as<MonkInstance>(), expect_bits(instance, g));
    case Family::Moqap: return eval_moqap(instance.as<MoqapInstance>(), expect_permutation(instance, g));
    }
    throw ContractViolation("evaluate: unknown family");
}

ObjectiveVector to_native(Family family, const ObjectiveVector& canonical) {
    if (sense_of(family) == Sense::Minimise) return canonical;
    ObjectiveVector out = canonical;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = -out[i];
    return out;
}

ObjectiveVector to_canonical(Family family, const ObjectiveVector& native) {
    // Negation is its own inverse.
    return to_native(family, native);
}

bool mokp_feasible(const MokpInstance& p, const BitString& g) {
    for (std::size_t j = 0; j < p.m; ++j) {
        std::int64_t load = 0;
        for (std::size_t i = 0; i < p.dim; ++i)
            if (g.bits[i]) load += p.w(j, i);
        if (static_cast<double>(load) > p.capacity[j]) return false;
    }
    return true;
}

BitString repair_mokp(const MokpInstance& p, BitString g) {
    if (g.size() != p.dim) {
        throw ContractViolation("repair_mokp: genotype length mismatch");
    }
    std::vector<std::int64_t> load(p.m, 0);
    for (std::size_t j = 0; j < p.m; ++j)
        for (std::size_t i = 0; i < p.dim; ++i)
            if (g.bits[i]) load[j] += p.w(j, i);

    auto feasible = [&] {
        for (std::size_t j = 0; j < p.m; ++j)
            if (static_cast<double>(load[j]) > p.capacity[j]) return false;
        return true;
    };
    for (auto it = p.removal_order.begin(); it != p.removal_order.end() && !feasible(); ++it) {
        const auto i = static_cast<std::size_t>(*it);
        if (!g.bits[i]) continue;
        g.bits[i] = 0;
        for (std::size_t j = 0; j < p.m; ++j) load[j] -= p.w(j, i);
    }
    return g;
}

void apply_move(Permutation& g, const PermutationMove& move) {
    if (const auto* two_opt = std::get_if<TwoOptMove>(&move)) {
        auto lo = std::min(two_opt->first, two_opt->last);
        auto hi = std::max(two_opt->first, two_opt->last);
        std::reverse(g.order.begin() + static_cast<std::ptrdiff_t>(lo),
                     g.order.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
    } else {
        const auto& swap = std::get<SwapMove>(move);
        std::swap(g.order[swap.first], g.order[swap.second]);
    }
}

namespace {

ObjectiveVector motsp_two_opt_delta(const MotspInstance& p, const Permutation& g, ObjectiveVector f,
                                    TwoOptMove move) {
    const std::size_t n = p.dim;
    const std::size_t i = std::min(move.first, move.last);
    const std::size_t j = std::max(move.first, move.last);
    if (j >= n) throw ContractViolation("delta_evaluate: move out of range");
    if (i == j) return f;
    const auto& t = g.order;
    for (std::size_t o = 0; o < p.m; ++o) {
        double d = 0.0;
        if (j - i + 1 == n) {
            // Whole tour reversed: same cycle, every edge traversed backwards.
            for (std::size_t k = 0; k < n; ++k) {
                const auto a = t[k];
                const auto b = t[(k + 1) % n];
                d += p.at(o, b, a) - p.at(o, a, b);
            }
        } else {
            const auto before = t[(i + n - 1) % n];
            const auto after = t[(j + 1) % n];
            d += p.at(o, before, t[j]) + p.at(o, t[i], after) - p.at(o, before, t[i]) - p.at(o, t[j], after);
            for (std::size_t k = i; k < j; ++k) d += p.at(o, t[k + 1], t[k]) - p.at(o, t[k], t[k + 1]);
        }
        f[o] += d;
    }
    return f;
}

ObjectiveVector moqap_swap_delta(const MoqapInstance& p, const Permutation& g, ObjectiveVector f, SwapMove move) {
    const std::size_t r = move.first;
    const std::size_t s = move.second;
    if (r >= p.dim || s >= p.dim) throw ContractViolation("delta_evaluate: move out of range");
    if (r == s) return f;
    const auto& loc = g.order;
    const std::size_t lr = loc[r];
    const std::size_t ls = loc[s];
    for (std::size_t o = 0; o < p.m; ++o) {
        double d = 0.0;
        for (std::size_t k = 0; k < p.dim; ++k) {
            if (k == r || k == s) continue;
            const std::size_t lk = loc[k];
            d += (p.c(o, r, k) - p.c(o, s, k)) * (p.l(ls, lk) - p.l(lr, lk));
            d += (p.c(o, k, r) - p.c(o, k, s)) * (p.l(lk, ls) - p.l(lk, lr));
        }
        d += p.c(o, r, r) * (p.l(ls, ls) - p.l(lr, lr)) + p.c(o, s, s) * (p.l(lr, lr) - p.l(ls, ls));
        d += p.c(o, r, s) * (p.l(ls, lr) - p.l(lr, ls)) + p.c(o, s, r) * (p.l(lr, ls) - p.l(ls, lr));
        f[o] += d;
    }
    return f;
}

} // namespace

ObjectiveVector delta_evaluate(const ProblemInstance& instance, const Permutation& g,
                               const ObjectiveVector& current, const PermutationMove& move) {
    if (g.size() != instance.dim() || current.size() != instance.objectives()) {
        throw ContractViolation("delta_evaluate: genotype does not match the instance");
    }
    if (instance.family() == Family::Motsp) {
        if (const auto* two_opt = std::get_if<TwoOptMove>(&move)) {
            return motsp_two_opt_delta(instance.as<MotspInstance>(), g, current, *two_opt);
        }
    } else if (instance.family() == Family::Moqap) {
        if (const auto* swap = std::get_if<SwapMove>(&move)) {
            return moqap_swap_delta(instance.as<MoqapInstance>(), g, current, *swap);
        }
    }
    throw Error("delta_evaluate: unsupported move for family " + std::string(family_name(instance.family())));
}

Genotype random_solution(const ProblemInstance& instance, Rng& rng) {
    const std::size_t n = instance.dim();
    if (instance.encoding() == Encoding::Permutation) {
        Permutation p;
        p.order.resize(n);
        std::iota(p.order.begin(), p.order.end(), 0);
        for (std::size_t i = n - 1; i > 0; --i) {
            std::swap(p.order[i], p.order[rng.below(i + 1)]);
        }
        return p;
    }
    BitString b;
    b.bits.resize(n);
    for (std::size_t i = 0; i < n; i += 64) {
        const std::uint64_t word = rng.next_u64();
        for (std::size_t t = 0; t < 64 && i + t < n; ++t) b.bits[i + t] = (word >> t) & 1U;
    }
    if (instance.family() == Family::Mokp) {
        b = repair_mokp(instance.as<MokpInstance>(), std::move(b));
    }
    return b;
}

Permutation canonical_tour(const Permutation& tour) {
    Permutation out = tour;
    auto zero = std::find(out.order.begin(), out.order.end(), 0);
    std::rotate(out.order.begin(), zero, out.order.end());
    return out;
}

} // namespace mocoscale
