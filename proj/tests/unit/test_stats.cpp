#include "mocoscale/stats.hpp"

#include "mocoscale/core.hpp"
#include "mocoscale/random.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace mocoscale;

namespace {

// Two-sided exact p of U by listing every split of the ranks 1..n into the two samples.
double enumerated_p(std::size_t na, std::size_t nb, double u_observed) {
    const std::size_t n = na + nb;
    const double centre = static_cast<double>(na * nb) / 2.0;
    std::size_t extreme = 0, total = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != na) continue;
        double rank_sum = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) rank_sum += static_cast<double>(i + 1);
        const double u = rank_sum - static_cast<double>(na * (na + 1)) / 2.0;
        ++total;
        if (std::abs(u - centre) >= std::abs(u_observed - centre) - 1e-9) ++extreme;
    }
    return static_cast<double>(extreme) / static_cast<double>(total);
}

double normal_p(const std::vector<double>& a, const std::vector<double>& b) {
    // tie-free normal approximation with continuity correction
    std::vector<double> pooled(a);
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double ra = 0;
    for (double x : a) ra += static_cast<double>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin() + 1);
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    const double u = ra - na * (na + 1) / 2;
    const double z = std::max(0.0, std::abs(u - na * nb / 2) - 0.5) / std::sqrt(na * nb * (na + nb + 1) / 12);
    return std::erfc(z / std::sqrt(2.0));
}

SampleSet sample(std::string name, std::vector<double> v) {
    SampleSet s;
    s.algorithm = std::move(name);
    s.hv_values = std::move(v);
    return s;
}

} // namespace

TEST_CASE("mean, SD and midranks") {
    const std::vector<double> x{2, 4, 4, 4, 5, 5, 7, 9};
    CHECK(mean(x) == 5.0);
    CHECK(standard_deviation(x) == Catch::Approx(std::sqrt(32.0 / 7.0)));
    CHECK(standard_deviation(std::vector<double>{3.0}) == 0.0);
    CHECK(midranks(std::vector<double>{10, 20, 20, 5}) == std::vector<double>{2, 3.5, 3.5, 1});
}

TEST_CASE("Friedman test") {
    const std::vector<std::vector<double>> same{{1, 2, 3, 4}, {1, 2, 3, 4}, {1, 2, 3, 4}};
    const auto r0 = friedman_test(same);
    CHECK(r0.statistic == 0.0);
    CHECK(r0.p_value == 1.0);

    // k=3, n=4; ranks per block worked out by hand:
    // block1 (9,7,8) -> 3,1,2; block2 (6,5,7) -> 2,1,3; block3 (9,7,8) -> 3,1,2; block4 (8,5,6) -> 3,1,2
    // rank sums 11,4,9; Q = 12/(4*3*4) * (11^2+4^2+9^2) - 3*4*4 = 54.5 - 48 = 6.5
    const std::vector<std::vector<double>> g{{9, 6, 9, 8}, {7, 5, 7, 5}, {8, 7, 8, 6}};
    const auto r = friedman_test(g);
    CHECK(r.statistic == Catch::Approx(6.5));
    CHECK(r.p_value == Catch::Approx(std::exp(-6.5 / 2)));  // chi-square with 2 df

    // one group best in every block: Q = n(k-1)
    const std::vector<std::vector<double>> dom{{10, 11, 12, 13, 14}, {1, 5, 2, 4, 3}, {2, 4, 1, 3, 5}};
    CHECK(friedman_test(dom).statistic <= 5.0 * 2.0);
    const std::vector<std::vector<double>> extreme{{9, 9, 9}, {5, 5, 5}, {1, 1, 1}};
    CHECK(friedman_test(extreme).statistic == Catch::Approx(3.0 * 2.0));

    CHECK_THROWS_AS((friedman_test({{1, 2}, {1, 2, 3}})), Error);
}

TEST_CASE("Wilcoxon rank-sum") {
    const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
    const auto r = wilcoxon_rank_sum(a, b);
    CHECK(r.exact);
    CHECK(r.statistic == 0.0);
    CHECK(r.p_value == Catch::Approx(0.1));
    CHECK(wilcoxon_rank_sum(b, a).p_value == Catch::Approx(r.p_value));

    const std::vector<double> same{3, 1, 2, 5};
    const auto eq = wilcoxon_rank_sum(same, same);
    CHECK_FALSE(eq.exact);
    CHECK(eq.p_value == 1.0);
}

TEST_CASE("Wilcoxon exact path equals enumeration") {
    for (std::size_t na = 2; na <= 6; ++na)
        for (std::size_t nb = 2; nb <= 6; ++nb)
            for (double u = 0; u <= static_cast<double>(na * nb); u += 1)
                CHECK(wilcoxon_exact_p(na, nb, u) == Catch::Approx(enumerated_p(na, nb, u)).epsilon(1e-12));
}

TEST_CASE("Wilcoxon exact and normal paths agree on 8+8 samples") {
    Rng rng(1);
    for (int t = 0; t < 300; ++t) {
        std::vector<double> a, b;
        const double shift = rng.uniform(0, 2);
        for (int i = 0; i < 8; ++i) {
            a.push_back(rng.uniform01());
            b.push_back(rng.uniform01() + shift * 0.5);
        }
        const auto r = wilcoxon_rank_sum(a, b);
        REQUIRE(r.exact);
        CHECK(std::abs(r.p_value - normal_p(a, b)) <= 0.02);
    }
}

TEST_CASE("Holm adjustment") {
    CHECK(holm_adjust(std::vector<double>{0.3}) == std::vector<double>{0.3});
    const auto h = holm_adjust(std::vector<double>{0.01, 0.02, 0.04});
    CHECK(h[0] == Catch::Approx(0.03));
    CHECK(h[1] == Catch::Approx(0.04));
    CHECK(h[2] == Catch::Approx(0.04));

    Rng rng(2);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> p(1 + rng.below(10));
        for (auto& x : p) x = rng.uniform01();
        const auto adj = holm_adjust(p);
        std::vector<std::size_t> order(p.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto x, auto y) { return p[x] < p[y]; });
        for (std::size_t i = 0; i < p.size(); ++i) CHECK(adj[i] >= p[i]);
        for (std::size_t i = 1; i < order.size(); ++i) CHECK(adj[order[i]] >= adj[order[i - 1]]);

        // permuting the input permutes the output
        std::vector<double> rev(p.rbegin(), p.rend());
        auto adj_rev = holm_adjust(rev);
        std::reverse(adj_rev.begin(), adj_rev.end());
        CHECK(adj_rev == adj);
    }
}

TEST_CASE("comparison table") {
    const std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    auto cells = comparison_table({sample("A", x), sample("B", x)});
    for (const auto& c : cells) {
        CHECK(c.better == 0);
        CHECK(c.equal == 1);
        CHECK(c.worse == 0);
    }

    Rng rng(3);
    std::vector<SampleSet> four;
    for (int k = 0; k < 4; ++k) {
        std::vector<double> v;
        for (int i = 0; i < 10; ++i) v.push_back(rng.uniform01() + (k == 2 ? 1e6 : 0.0));
        four.push_back(sample("alg" + std::to_string(k), v));
    }
    cells = comparison_table(four);
    CHECK(cells[2].better == 3);
    CHECK(cells[2].equal == 0);
    CHECK(cells[2].worse == 0);

    // antisymmetry and scale invariance on random settings
    for (int t = 0; t < 50; ++t) {
        std::vector<SampleSet> s;
        for (int k = 0; k < 5; ++k) {
            std::vector<double> v;
            for (int i = 0; i < 10; ++i) v.push_back(rng.uniform01() + 0.3 * k * rng.uniform01());
            s.push_back(sample("a", v));
        }
        const auto c = comparison_table(s);
        std::size_t better = 0, worse = 0;
        for (const auto& cell : c) {
            better += cell.better;
            worse += cell.worse;
            CHECK(cell.better + cell.equal + cell.worse == 4);
        }
        CHECK(better == worse);
        auto scaled = s;
        for (auto& x : scaled)
            for (auto& v : x.hv_values) v *= 123.5;
        const auto c2 = comparison_table(scaled);
        for (std::size_t k = 0; k < c.size(); ++k) {
            CHECK(c2[k].better == c[k].better);
            CHECK(c2[k].worse == c[k].worse);
        }
    }
}
