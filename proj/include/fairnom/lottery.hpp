#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fairnom/model.hpp"

namespace fairnom {

/// One stretch of time [start, end] during which an agent eats `item`.
struct EatingSegment {
    std::size_t item = 0;
    Rational start;
    Rational end;
    friend bool operator==(const EatingSegment&, const EatingSegment&) = default;
};

/// Per-agent consumption timeline of the simultaneous eating procedure.
/// Each agent's segments tile [0, horizon] in order.
struct EatingSchedule {
    std::vector<std::vector<EatingSegment>> segments;
    Rational horizon;
};

struct SerialResult {
    FractionalAllocation allocation;
    EatingSchedule schedule;
};

/// Probabilistic serial: all agents eat their favorite remaining item at unit
/// speed until everything is gone (time m/n). An agent with tied favorites eats
/// the smaller item index alone.
SerialResult probabilistic_serial(const Instance& bids);

/// Same procedure with explicit preference orders (each a permutation of
/// 0..items-1, most preferred first).
SerialResult eat_by_orders(const std::vector<std::vector<std::size_t>>& orders, std::size_t items);

/// Square matrix with nonnegative rational entries whose rows and columns each
/// sum to exactly one.
class BistochasticMatrix {
public:
    explicit BistochasticMatrix(std::vector<ValueRow> entries);  // throws InvariantError
    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] const std::vector<ValueRow>& entries() const { return entries_; }

private:
    std::vector<ValueRow> entries_;
};

/// `perm[r]` is the column matched to row r.
struct PermutationTerm {
    Rational weight;
    std::vector<std::size_t> perm;
    friend bool operator==(const PermutationTerm&, const PermutationTerm&) = default;
};

/// Convex decomposition into permutation matrices; weights are positive and sum
/// to one. Each step matches rows to columns over the residual's positive
/// entries (augmenting paths, smaller column first) and peels off the smallest
/// matched entry, so at most k^2 - k + 1 terms come back.
std::vector<PermutationTerm> birkhoff(const BistochasticMatrix& matrix);

/// Sum of weight * permutation matrix over the terms.
std::vector<ValueRow> recompose(const std::vector<PermutationTerm>& terms, std::size_t size);

/// Implements the probabilistic-serial outcome as a lottery over integral
/// allocations. Items are padded with zero-valued dummies to n*c (c = ceil(m/n))
/// and ranked below every real item; agent i's consumption during time window
/// (k-1, k] becomes row (i, k) of a bistochastic matrix whose Birkhoff terms
/// each hand agent i one item per window. Identical allocations are merged.
Lottery ps_lottery(const Instance& bids);

/// Same as ps_lottery, but also returns the padded matrix that was decomposed.
struct PsLotteryTrace {
    Lottery lottery;
    std::vector<ValueRow> window_matrix;
    std::vector<PermutationTerm> terms;
    std::size_t windows = 0;
};
PsLotteryTrace ps_lottery_trace(const Instance& bids);

/// Draws one allocation with the exact lottery probabilities; deterministic per
/// seed.
IntegralAllocation sample(const Lottery& lot, std::uint64_t seed);

}  // namespace fairnom
