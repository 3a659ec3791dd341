#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fairnom/errors.hpp"
#include "fairnom/rational.hpp"

namespace fairnom {

using ValueRow = std::vector<Rational>;
using Bundle = std::vector<std::size_t>;  // sorted item indices

/// n agents, m items, additive valuations with nonnegative exact entries.
class Instance {
public:
    Instance() = default;
    Instance(std::size_t agents, std::size_t items, std::vector<ValueRow> values);
    /// Shape inferred from the rows; every row must have the same length.
    explicit Instance(std::vector<ValueRow> values);

    [[nodiscard]] std::size_t agents() const { return agents_; }
    [[nodiscard]] std::size_t items() const { return items_; }
    [[nodiscard]] const std::vector<ValueRow>& values() const { return values_; }
    [[nodiscard]] const ValueRow& row(std::size_t agent) const;
    [[nodiscard]] const Rational& value(std::size_t agent, std::size_t item) const;

    /// Copy with one agent's row replaced.
    [[nodiscard]] Instance with_row(std::size_t agent, ValueRow row) const;

    friend bool operator==(const Instance&, const Instance&) = default;

private:
    std::size_t agents_ = 0;
    std::size_t items_ = 0;
    std::vector<ValueRow> values_;
};

/// Ordered disjoint bundles over items [0, m); partial allocations are allowed.
class IntegralAllocation {
public:
    IntegralAllocation() = default;
    IntegralAllocation(std::size_t items, std::vector<Bundle> bundles);

    /// owner[j] in [0, agents) assigns item j; owner[j] == agents leaves it unallocated.
    static IntegralAllocation from_owners(std::size_t agents, std::span<const std::size_t> owner);
    static IntegralAllocation empty(std::size_t agents, std::size_t items);

    [[nodiscard]] std::size_t agents() const { return bundles_.size(); }
    [[nodiscard]] std::size_t items() const { return items_; }
    [[nodiscard]] const std::vector<Bundle>& bundles() const { return bundles_; }
    [[nodiscard]] const Bundle& bundle(std::size_t agent) const;

    /// Per-item owner vector, `agents()` for unallocated items. This is the
    /// encoding used for every lexicographic tie-break in the library.
    [[nodiscard]] std::vector<std::size_t> owners() const;
    [[nodiscard]] std::vector<std::size_t> unallocated() const;
    [[nodiscard]] bool is_complete() const;

    friend bool operator==(const IntegralAllocation&, const IntegralAllocation&) = default;
    /// Lexicographic order on owners().
    friend bool operator<(const IntegralAllocation& a, const IntegralAllocation& b);

private:
    std::size_t items_ = 0;
    std::vector<Bundle> bundles_;
};

/// n x m matrix of shares in [0,1] whose columns sum to at most one.
class FractionalAllocation {
public:
    FractionalAllocation() = default;
    explicit FractionalAllocation(std::vector<ValueRow> shares);
    static FractionalAllocation zeros(std::size_t agents, std::size_t items);
    static FractionalAllocation from_integral(const IntegralAllocation& alloc);

    [[nodiscard]] std::size_t agents() const { return shares_.size(); }
    [[nodiscard]] std::size_t items() const { return items_; }
    [[nodiscard]] const std::vector<ValueRow>& shares() const { return shares_; }
    [[nodiscard]] const ValueRow& row(std::size_t agent) const { return shares_.at(agent); }
    [[nodiscard]] const Rational& share(std::size_t agent, std::size_t item) const;

    friend bool operator==(const FractionalAllocation&, const FractionalAllocation&) = default;

private:
    std::size_t items_ = 0;
    std::vector<ValueRow> shares_;
};

struct LotteryEntry {
    Rational probability;
    IntegralAllocation allocation;

    friend bool operator==(const LotteryEntry&, const LotteryEntry&) = default;
};

/// Finite distribution over integral allocations; probabilities are positive
/// and sum to exactly one.
class Lottery {
public:
    Lottery() = default;
    explicit Lottery(std::vector<LotteryEntry> support);
    static Lottery point_mass(IntegralAllocation alloc);

    [[nodiscard]] const std::vector<LotteryEntry>& support() const { return support_; }
    [[nodiscard]] std::size_t size() const { return support_.size(); }

private:
    std::vector<LotteryEntry> support_;
};

/// Additive value of `bundle` under `row`.
Rational bundle_value(std::span<const Rational> row, std::span<const std::size_t> bundle);
/// Additive value of a fractional share vector under `row`.
Rational share_value(std::span<const Rational> row, std::span<const Rational> shares);
Rational total_value(std::span<const Rational> row);

Rational utility(const Instance& inst, std::size_t agent, std::span<const std::size_t> bundle);
Rational utility(const Instance& inst, std::size_t agent, const FractionalAllocation& alloc);

FractionalAllocation expected_allocation(const Lottery& lot);

/// Scales each row to sum to one. Throws NormalizationError on an all-zero row.
Instance normalize(const Instance& inst);
ValueRow normalize_row(std::span<const Rational> row);
[[nodiscard]] bool is_normalized(const Instance& inst);

/// Throws DimensionError unless `alloc` has inst's shape.
void require_shape(const Instance& inst, const IntegralAllocation& alloc);
void require_shape(const Instance& inst, const FractionalAllocation& alloc);

}  // namespace fairnom
