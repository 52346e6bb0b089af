#include "mocoscale/stats.hpp"

#include "mocoscale/core.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mocoscale {

double mean(std::span<const double> x) {
    if (x.empty()) return 0.0;
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double standard_deviation(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    const double mu = mean(x);
    double ss = 0.0;
    for (double v : x) ss += (v - mu) * (v - mu);
    return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

std::vector<double> midranks(std::span<const double> x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> rank(x.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
        const double r = (static_cast<double>(i + j) / 2.0) + 1.0;
        for (std::size_t t = i; t <= j; ++t) rank[order[t]] = r;
        i = j + 1;
    }
    return rank;
}

TestResult friedman_test(const std::vector<std::vector<double>>& groups) {
    const std::size_t k = groups.size();
    if (k < 2) throw Error("friedman_test needs at least two groups");
    const std::size_t n = groups.front().size();
    for (const auto& g : groups) {
        if (g.size() != n) throw Error("friedman_test: groups must have equal run counts");
    }
    if (n < 2) throw Error("friedman_test needs at least two blocks");

    std::vector<double> rank_sum(k, 0.0);
    std::vector<double> block(k);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) block[j] = groups[j][i];
        const auto r = midranks(block);
        for (std::size_t j = 0; j < k; ++j) rank_sum[j] += r[j];
    }
    const double centre = (static_cast<double>(k) + 1.0) / 2.0;
    double spread = 0.0;
    for (double s : rank_sum) {
        const double d = s / static_cast<double>(n) - centre;
        spread += d * d;
    }
    TestResult out;
    out.statistic = 12.0 * static_cast<double>(n) / (static_cast<double>(k) * (k + 1.0)) * spread;
    out.p_value = out.statistic <= 0.0 ? 1.0
                                       : boost::math::gamma_q((static_cast<double>(k) - 1.0) / 2.0, out.statistic / 2.0);
    return out;
}

double wilcoxon_exact_p(std::size_t n_a, std::size_t n_b, double u) {
    // count[i][j][s]: arrangements of i a-values and j b-values with U = s,
    // built by the last-element recursion on one rolling table per i.
    const std::size_t max_u = n_a * n_b;
    std::vector<std::vector<std::vector<double>>> count(
        n_a + 1, std::vector<std::vector<double>>(n_b + 1, std::vector<double>(max_u + 1, 0.0)));
    for (std::size_t i = 0; i <= n_a; ++i) {
        for (std::size_t j = 0; j <= n_b; ++j) {
            if (i == 0 || j == 0) {
                count[i][j][0] = 1.0;
                continue;
            }
            // Largest observation belongs to a (adds j to U) or to b.
            for (std::size_t s = 0; s <= i * j; ++s) {
                double c = count[i][j - 1][s];
                if (s >= j) c += count[i - 1][j][s - j];
                count[i][j][s] = c;
            }
        }
    }
    const auto& dist = count[n_a][n_b];
    const double total = std::accumulate(dist.begin(), dist.end(), 0.0);
    double lower = 0.0;
    double upper = 0.0;
    for (std::size_t s = 0; s <= max_u; ++s) {
        const auto value = static_cast<double>(s);
        if (value <= u + 1e-9) lower += dist[s];
        if (value >= u - 1e-9) upper += dist[s];
    }
    return std::min(1.0, 2.0 * std::min(lower, upper) / total);
}

TestResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b) {
    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    if (na < 2 || nb < 2) throw Error("wilcoxon_rank_sum needs at least two values per sample");
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const auto ranks = midranks(pooled);

    double rank_sum_a = 0.0;
    for (std::size_t i = 0; i < na; ++i) rank_sum_a += ranks[i];
    TestResult out;
    out.statistic = rank_sum_a - static_cast<double>(na) * (na + 1.0) / 2.0;

    const std::size_t n = na + nb;
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0.0;
    bool ties = false;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
        const auto t = static_cast<double>(j - i + 1);
        if (t > 1.0) ties = true;
        tie_term += t * t * t - t;
        i = j + 1;
    }

    if (n <= 20 && !ties) {
        out.exact = true;
        out.p_value = wilcoxon_exact_p(na, nb, out.statistic);
        return out;
    }
    const double nn = static_cast<double>(n);
    const double mu = static_cast<double>(na) * static_cast<double>(nb) / 2.0;
    const double var = static_cast<double>(na) * static_cast<double>(nb) / 12.0 *
                       ((nn + 1.0) - tie_term / (nn * (nn - 1.0)));
    if (var <= 0.0) {
        out.p_value = 1.0;
        return out;
    }
    const double z = std::max(0.0, std::abs(out.statistic - mu) - 0.5) / std::sqrt(var);
    out.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    return out;
}

std::vector<double> holm_adjust(std::span<const double> p) {
    const std::size_t m = p.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
    std::vector<double> adjusted(m);
    double running = 0.0;
    for (std::size_t rank = 0; rank < m; ++rank) {
        const double scaled = std::min(1.0, static_cast<double>(m - rank) * p[order[rank]]);
        running = std::max(running, scaled);
        adjusted[order[rank]] = running;
    }
    return adjusted;
}

std::vector<std::pair<std::size_t, std::size_t>> comparison_pairs(std::size_t k) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
    return pairs;
}

std::vector<double> pairwise_p_values(const std::vector<SampleSet>& samples) {
    std::vector<double> p;
    for (auto [i, j] : comparison_pairs(samples.size())) {
        p.push_back(wilcoxon_rank_sum(samples[i].hv_values, samples[j].hv_values).p_value);
    }
    return p;
}

std::vector<ComparisonCell> cells_from_p_values(const std::vector<SampleSet>& samples,
                                                std::span<const double> adjusted, double alpha) {
    const auto pairs = comparison_pairs(samples.size());
    if (adjusted.size() != pairs.size()) throw ContractViolation("cells_from_p_values: p-value count mismatch");
    std::vector<ComparisonCell> cells(samples.size());
    for (std::size_t t = 0; t < pairs.size(); ++t) {
        const auto [i, j] = pairs[t];
        if (adjusted[t] >= alpha) {
            ++cells[i].equal;
            ++cells[j].equal;
            continue;
        }
        const double mi = mean(samples[i].hv_values);
        const double mj = mean(samples[j].hv_values);
        if (mi > mj) {
            ++cells[i].better;
            ++cells[j].worse;
        } else if (mj > mi) {
            ++cells[j].better;
            ++cells[i].worse;
        } else {
            ++cells[i].equal;
            ++cells[j].equal;
        }
    }
    return cells;
}

std::vector<ComparisonCell> comparison_table(const std::vector<SampleSet>& samples, double alpha) {
    const auto raw = pairwise_p_values(samples);
    const auto adjusted = holm_adjust(raw);
    return cells_from_p_values(samples, adjusted, alpha);
}

} // namespace mocoscale
