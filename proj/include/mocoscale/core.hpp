#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mocoscale {

/// Recoverable failure reported to the caller (bad input data, I/O).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Objective values in minimisation orientation. Problems that maximise
/// negate their objectives before they reach this type.
class ObjectiveVector {
public:
    ObjectiveVector() = default;
    explicit ObjectiveVector(std::vector<double> values) : values_(std::move(values)) {}
    ObjectiveVector(std::initializer_list<double> values) : values_(values) {}

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    std::span<const double> values() const { return values_; }

    friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;

private:
    std::vector<double> values_;
};

struct BitString {
    std::vector<std::uint8_t> bits;

    std::size_t size() const { return bits.size(); }
    friend bool operator==(const BitString&, const BitString&) = default;
};

/// order[k] is the element placed at position k (the city visited k-th,
/// or the location assigned to facility k).
struct Permutation {
    std::vector<std::int32_t> order;

    std::size_t size() const { return order.size(); }
    friend bool operator==(const Permutation&, const Permutation&) = default;
};

using Genotype = std::variant<BitString, Permutation>;

std::size_t genotype_size(const Genotype& g);
bool is_permutation(std::span<const std::int32_t> order);

struct Individual {
    Genotype genotype;
    ObjectiveVector objectives;
};

/// Pareto dominance under minimisation: a is no worse everywhere and differs
/// somewhere. Throws ContractViolation on a dimension mismatch.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Indices of the vectors not dominated by any other input vector, in input
/// order. Objective-equal vectors do not dominate one another, so all copies
/// of a non-dominated vector are reported.
std::vector<std::size_t> non_dominated_filter(std::span<const ObjectiveVector> set);

struct InsertOutcome {
    bool accepted = false;
    std::size_t removed = 0;
};

/// Unbounded set of mutually non-dominated individuals.
///
/// Members are kept sorted ascending by the first objective (ties by the
/// following ones). With two objectives this makes the second objective
/// strictly decreasing along the list, so insertion needs a binary search
/// plus the removed range. Other objective counts fall back to a linear scan.
/// A candidate whose objective vector equals a member's is rejected.
class Archive {
public:
    Archive() = default;

    InsertOutcome insert(Individual candidate);

    /// True iff some member dominates or equals v.
    bool covers(const ObjectiveVector& v) const;

    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    std::size_t objectives() const { return m_; }
    const Individual& operator[](std::size_t i) const { return members_[i]; }
    const std::vector<Individual>& members() const { return members_; }
    std::vector<ObjectiveVector> objective_vectors() const;

    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

private:
    InsertOutcome insert_bi(Individual candidate);
    InsertOutcome insert_general(Individual candidate);

    std::vector<Individual> members_;
    std::size_t m_ = 0;
};

/// Reference implementation of Archive::insert by full scan, kept for tests
/// and as the m > 2 path.
InsertOutcome naive_archive_insert(std::vector<Individual>& members, Individual candidate);

} // namespace mocoscale
