#include "mocoscale/core.hpp"

#include "../support/oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

using namespace mocoscale;

namespace {

Individual ind(std::initializer_list<double> f) { return {BitString{}, ObjectiveVector(f)}; }

std::set<std::vector<double>> contents(const Archive& a) { return oracle::as_set(a.objective_vectors()); }

} // namespace

TEST_CASE("dominates follows the componentwise definition") {
    CHECK(dominates({1, 2}, {2, 2}));
    CHECK_FALSE(dominates({1, 2}, {1, 2}));
    CHECK_FALSE(dominates({1, 3}, {2, 1}));
    CHECK_FALSE(dominates({2, 1}, {1, 3}));
    CHECK_THROWS_AS(dominates({1, 2}, {1, 2, 3}), ContractViolation);
}

TEST_CASE("non_dominated_filter small cases") {
    std::vector<ObjectiveVector> chain{{1, 3}, {2, 2}, {3, 1}};
    CHECK(non_dominated_filter(chain) == std::vector<std::size_t>{0, 1, 2});
    std::vector<ObjectiveVector> two{{1, 1}, {2, 2}};
    CHECK(non_dominated_filter(two) == std::vector<std::size_t>{0});
    std::vector<ObjectiveVector> dup{{1, 1}, {1, 1}, {0, 5}};
    CHECK(non_dominated_filter(dup) == std::vector<std::size_t>{0, 1, 2});
    CHECK_THROWS_AS(non_dominated_filter(std::vector<ObjectiveVector>{}), Error);
}

TEST_CASE("non_dominated_filter matches pairwise oracle") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        auto set = oracle::random_vectors(rng, 200, 30);
        CHECK(non_dominated_filter(set) == oracle::filter(set));
    }
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<ObjectiveVector> set;
        for (int i = 0; i < 60; ++i) set.push_back({double(rng.below(6)), double(rng.below(6)), double(rng.below(6))});
        CHECK(non_dominated_filter(set) == oracle::filter(set));
    }
}

TEST_CASE("archive insert examples") {
    Archive a;
    CHECK(a.insert(ind({1, 3})).accepted);
    CHECK(a.insert(ind({3, 1})).accepted);
    auto out = a.insert(ind({2, 2}));
    CHECK(out.accepted);
    CHECK(out.removed == 0);
    CHECK(contents(a) == std::set<std::vector<double>>{{1, 3}, {2, 2}, {3, 1}});

    out = a.insert(ind({1, 1}));
    CHECK(out.accepted);
    CHECK(out.removed == 3);
    CHECK(contents(a) == std::set<std::vector<double>>{{1, 1}});

    CHECK_FALSE(a.insert(ind({1, 1})).accepted);
    CHECK_FALSE(a.insert(ind({2, 1})).accepted);
    CHECK(a.covers({1, 1}));
    CHECK(a.covers({5, 5}));
    CHECK_FALSE(a.covers({0, 9}));
}

TEST_CASE("archive after random insertions equals filter of all inserted vectors") {
    Rng rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        Archive a;
        std::vector<ObjectiveVector> seen;
        for (int i = 0; i < 10'000; ++i) {
            ObjectiveVector v{double(rng.below(500)), double(rng.below(500))};
            seen.push_back(v);
            a.insert(ind({v[0], v[1]}));
        }
        CHECK(contents(a) == oracle::archive_of(seen));
        for (std::size_t i = 0; i + 1 < a.size(); ++i) {
            CHECK(a[i].objectives[0] < a[i + 1].objectives[0]);
            CHECK(a[i].objectives[1] > a[i + 1].objectives[1]);
        }
    }
}

TEST_CASE("sorted archive agrees with the naive scan step by step") {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        Archive fast;
        std::vector<Individual> naive;
        const int range = 2 + static_cast<int>(rng.below(40));
        for (int i = 0; i < 100; ++i) {
            Individual c = ind({double(rng.below(range)), double(rng.below(range))});
            const auto a = fast.insert(c);
            const auto b = naive_archive_insert(naive, c);
            REQUIRE(a.accepted == b.accepted);
            REQUIRE(a.removed == b.removed);
        }
        std::vector<ObjectiveVector> nv;
        for (const auto& x : naive) nv.push_back(x.objectives);
        CHECK(contents(fast) == oracle::as_set(nv));
    }
}

TEST_CASE("archive invariants: mutual non-dominance, idempotence, order independence") {
    Rng rng(3);
    std::vector<ObjectiveVector> vs;
    for (int i = 0; i < 300; ++i) vs.push_back({double(rng.below(50)), double(rng.below(50)), double(rng.below(50))});

    Archive a;
    for (const auto& v : vs) a.insert({BitString{}, v});
    for (const auto& x : a)
        for (const auto& y : a) CHECK_FALSE(dominates(x.objectives, y.objectives));

    const auto before = contents(a);
    for (const auto& x : a.objective_vectors()) a.insert({BitString{}, x});
    CHECK(contents(a) == before);

    auto shuffled = vs;
    std::reverse(shuffled.begin(), shuffled.end());
    Archive b;
    for (const auto& v : shuffled) b.insert({BitString{}, v});
    CHECK(contents(b) == before);
    CHECK(before == oracle::archive_of(vs));
}

TEST_CASE("archive rejects mixed objective counts") {
    Archive a;
    a.insert(ind({1, 2}));
    CHECK_THROWS_AS(a.insert(ind({1, 2, 3})), ContractViolation);
}

TEST_CASE("is_permutation and genotype_size") {
    CHECK(is_permutation(std::vector<std::int32_t>{2, 0, 1}));
    CHECK_FALSE(is_permutation(std::vector<std::int32_t>{0, 0, 1}));
    CHECK_FALSE(is_permutation(std::vector<std::int32_t>{0, 3, 1}));
    CHECK(genotype_size(Genotype{BitString{{1, 0, 1}}}) == 3);
    CHECK(genotype_size(Genotype{Permutation{{1, 0}}}) == 2);
}
