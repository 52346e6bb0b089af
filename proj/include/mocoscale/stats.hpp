#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mocoscale {

/// Final HV values of one algorithm in one (problem, dimension, budget) setting.
struct SampleSet {
    std::string algorithm;
    std::string problem;
    std::size_t dimension = 0;
    std::uint64_t budget = 0;
    std::vector<double> hv_values;
};

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    bool exact = false;
};

double mean(std::span<const double> x);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double standard_deviation(std::span<const double> x);

/// Ascending ranks starting at 1, ties receiving the average of their ranks.
std::vector<double> midranks(std::span<const double> x);

/// Friedman rank-sum test over k groups whose i-th entries form block i.
/// statistic = 12n / (k(k+1)) * sum_j (Rbar_j - (k+1)/2)^2, p from the
/// chi-square(k-1) upper tail. Throws Error on unequal or too-short groups.
TestResult friedman_test(const std::vector<std::vector<double>>& groups);

/// Two-sided Wilcoxon rank-sum (Mann-Whitney) test. The statistic is U of the
/// first sample, R_a - n_a(n_a+1)/2. The p-value is exact (enumerated null
/// distribution) when n_a + n_b <= 20 and there are no ties, otherwise normal
/// with tie-corrected variance and continuity correction.
TestResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b);

/// Exact two-sided p-value of U under the null, by enumeration.
double wilcoxon_exact_p(std::size_t n_a, std::size_t n_b, double u);

/// Holm step-down adjustment, returned in input order.
std::vector<double> holm_adjust(std::span<const double> p);

struct ComparisonCell {
    std::size_t better = 0;
    std::size_t equal = 0;
    std::size_t worse = 0;
};

/// Upper-triangle pair list (i < j) in row-major order, as used by the
/// p-value vectors below.
std::vector<std::pair<std::size_t, std::size_t>> comparison_pairs(std::size_t k);

/// Raw Wilcoxon p-value of every pair from comparison_pairs(k).
std::vector<double> pairwise_p_values(const std::vector<SampleSet>& samples);

/// Cells from already adjusted pair p-values: "equal" when p >= alpha,
/// otherwise the higher mean HV wins.
std::vector<ComparisonCell> cells_from_p_values(const std::vector<SampleSet>& samples,
                                                std::span<const double> adjusted, double alpha);

/// Wilcoxon on every pair, Holm over the pairs of this setting, then cells.
std::vector<ComparisonCell> comparison_table(const std::vector<SampleSet>& samples, double alpha = 0.05);

} // namespace mocoscale
