#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "fairnom/enumerate.hpp"
#include "fairnom/model.hpp"

namespace fairnom {

/// Black-box allocation algorithm plugged into the reduction. Contract: its
/// outputs are clean, non-wasteful and EF1 for the profile it is given.
using InnerAlgorithm = std::function<IntegralAllocation(const Instance&)>;

class InnerContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Desired sets D_i (positively-bid items), D̂_i = M minus everything desired by
/// someone else, and R_i = "the desired sets of all other agents are pairwise
/// disjoint".
struct DesireProfile {
    std::vector<Bundle> desired;
    std::vector<Bundle> exclusive;
    std::vector<bool> others_disjoint;
};

DesireProfile desire_profile(const Instance& bids);

enum class ReductionCase { AllDisjoint = 1, SingleFree = 2, PairFree = 3, Inner = 4 };

struct ReductionOutcome {
    IntegralAllocation allocation;
    ReductionCase branch = ReductionCase::Inner;
    bool inner_invoked = false;
};

struct ReductionOptions {
    /// Check the inner algorithm's output against its contract on every call.
    bool verify_inner = true;
};

/// The four-case reduction followed by per-bundle cleaning (zero-valued items
/// dropped in ascending index order).
ReductionOutcome mechanism_one_trace(const Instance& bids, const InnerAlgorithm& inner,
                                     ReductionOptions options = {});
IntegralAllocation mechanism_one(const Instance& bids, const InnerAlgorithm& inner, ReductionOptions options = {});

/// Lexicographically smallest (by owner vector) allocation that is clean,
/// non-wasteful, EF1 and fractionally Pareto efficient. Exhaustive.
IntegralAllocation exhaustive_inner(const Instance& bids, std::uint64_t cap = default_enumeration_cap());

/// Membership in EF1(i, v): clean for i, non-wasteful for i, EF1 with i as the
/// envier, all judged by the single row `v`.
bool in_ef1_set(std::size_t agent, std::span<const Rational> v, const IntegralAllocation& alloc);

/// Every partial allocation of `items` items among `agents` agents in EF1(i, v),
/// in owner-vector order. Visits (n+1)^m candidates.
std::vector<IntegralAllocation> ef1_set(std::size_t agent, std::span<const Rational> v, std::size_t agents,
                                        std::uint64_t cap = default_enumeration_cap());

/// min over the set of `v_eval(A_agent)`. Throws InvariantError on an empty set.
Rational worst_in_set(std::size_t agent, std::span<const Rational> v_eval,
                      const std::vector<IntegralAllocation>& set);

/// Opponent rows (agent order, `agent` skipped) under which the reduction,
/// given `v` for `agent`, outputs exactly `target`, for any inner algorithm
/// honoring its contract. Throws InvariantError unless target is in EF1(agent, v).
std::vector<ValueRow> realize_allocation(std::size_t agent, std::span<const Rational> v,
                                         const IntegralAllocation& target);

/// Inserts `own` at position `agent` among the opponent rows.
Instance assemble_profile(std::size_t agent, std::span<const Rational> own, const std::vector<ValueRow>& opponents);

struct WorstCaseComparison {
    bool holds = false;
    Rational own_set_worst;    // min over EF1(i, v) of v(A_i)
    Rational other_set_worst;  // min over EF1(i, v') of v(A_i)
    IntegralAllocation minimizer;
    /// Set when the minimizer fails EF1 (as envier) under v' and the swap
    /// construction was exercised.
    std::optional<IntegralAllocation> swapped;
    /// v(swapped_i) <= v(minimizer_i). Not implied by EF1 under v when the
    /// item removed for v' differs from the one removed for v.
    bool swap_keeps_value = true;
    /// The agent, judged by v', envies nobody beyond one item after the swap.
    bool swap_removes_envy = true;
};

/// Compares worst-case own-bundle values of the EF1 sets generated by v and by
/// v', both judged by v, and cross-checks the item-swap argument.
WorstCaseComparison compare_worst_cases(std::size_t agent, std::span<const Rational> v,
                                        std::span<const Rational> v_prime, std::size_t agents,
                                        std::uint64_t cap = default_enumeration_cap());

}  // namespace fairnom
