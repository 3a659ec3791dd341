#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fairnom/enumerate.hpp"
#include "fairnom/model.hpp"

namespace fairnom {

/// Deterministic mechanism: reported profile in, integral allocation out.
using Mechanism = std::function<IntegralAllocation(const Instance&)>;
/// Randomized mechanism: reported profile in, lottery out.
using RandomizedMechanism = std::function<Lottery(const Instance&)>;

enum class TieBreakPolicy {
    SmallestIndex,
    /// Smallest index wins, except that a tie made of exactly the first and the
    /// last agent goes to the last agent. Only meaningful for the utilitarian
    /// maximizer.
    FirstLastToLast,
    /// Lexicographically smallest owner vector among the tied allocations.
    LexAllocation,
};

// ---------------------------------------------------------------- Round-Robin

/// Agents pick in `order` (a permutation of 0..n-1), one item per turn, always a
/// highest-valued remaining item by their bid; equal values go to the smaller
/// item index.
IntegralAllocation round_robin(const Instance& bids, std::span<const std::size_t> order);
IntegralAllocation round_robin(const Instance& bids);  // identity order

/// Number of items the agent at `position` (0-based) of the picking order
/// receives with n agents and m items.
std::size_t round_robin_share(std::size_t position, std::size_t agents, std::size_t items);

struct WorstBest {
    Rational worst;
    Rational best;
    friend bool operator==(const WorstBest&, const WorstBest&) = default;
};

/// Closed-form extreme utilities of the agent at `position` under honest
/// bidding: worst sums her (position + k*n)-th largest values, best her
/// ell largest, where ell is her item count.
WorstBest round_robin_worst_best(std::span<const Rational> true_values, std::size_t position, std::size_t agents);

// ---------------------------------------------------------- welfare maximizers

struct UtilitarianResult {
    IntegralAllocation allocation;
    /// True when the bids were rescaled before maximizing.
    bool normalized = false;
};

/// Gives each item to a highest bidder on the row-normalized profile.
/// Throws NormalizationError on an all-zero bid row.
UtilitarianResult max_utilitarian(const Instance& bids, TieBreakPolicy tie = TieBreakPolicy::FirstLastToLast);

/// Utilitarian maximizer with uniformly random tie-breaking, independently per
/// item, as a lottery over the resulting allocations.
Lottery max_utilitarian_lottery(const Instance& bids, std::uint64_t cap = default_enumeration_cap());

/// Complete allocations maximizing the number of agents with positive utility.
std::vector<IntegralAllocation> max_positive_count(const Instance& bids,
                                                   std::uint64_t cap = default_enumeration_cap());

/// Complete allocations maximizing (positive-utility count, minimum positive
/// utility) lexicographically. Sorted by owner vector.
std::vector<IntegralAllocation> max_egalitarian(const Instance& bids, std::uint64_t cap = default_enumeration_cap());

/// Complete allocations maximizing (positive-utility count, product of the
/// positive utilities) lexicographically. Sorted by owner vector.
std::vector<IntegralAllocation> max_nash(const Instance& bids, std::uint64_t cap = default_enumeration_cap());

/// Complete allocations maximizing the positive-utility count, then the sorted
/// utility vector (lowest first) lexicographically. Sorted by owner vector.
std::vector<IntegralAllocation> leximin(const Instance& bids, std::uint64_t cap = default_enumeration_cap());

/// Lexicographically smallest owner vector; the set must be non-empty.
const IntegralAllocation& select_lex(const std::vector<IntegralAllocation>& candidates);

/// Uniform lottery over a non-empty set of allocations.
Lottery uniform_lottery(const std::vector<IntegralAllocation>& candidates);

/// Deterministic wrappers used by the auditor.
Mechanism utilitarian_mechanism(TieBreakPolicy tie);
Mechanism egalitarian_mechanism();
Mechanism nash_mechanism();
Mechanism leximin_mechanism();
Mechanism positive_count_mechanism();
Mechanism round_robin_mechanism(std::vector<std::size_t> order = {});

}  // namespace fairnom
