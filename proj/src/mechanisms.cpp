#include "fairnom/mechanisms.hpp"

#include <algorithm>
#include <compare>
#include <numeric>
#include <optional>
#include <utility>

namespace fairnom {

namespace {

std::vector<std::size_t> identity_order(std::size_t n) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    return order;
}

void require_permutation(std::span<const std::size_t> order, std::size_t n) {
    if (order.size() != n) throw InvariantError("picking order must list every agent exactly once");
    std::vector<bool> seen(n, false);
    for (std::size_t a : order) {
        if (a >= n || seen[a]) throw InvariantError("picking order is not a permutation of the agents");
        seen[a] = true;
    }
}

std::vector<Rational> utilities_of(const Instance& bids, std::span<const std::size_t> owner) {
    std::vector<Rational> u(bids.agents());
    for (std::size_t j = 0; j < owner.size(); ++j) u[owner[j]] += bids.value(owner[j], j);
    return u;
}

std::size_t positive_count(const std::vector<Rational>& u) {
    return static_cast<std::size_t>(std::count_if(u.begin(), u.end(), [](const Rational& x) { return x.is_positive(); }));
}

// Enumerates every complete allocation and keeps those whose key is maximal.
template <class MakeKey>
std::vector<IntegralAllocation> argmax_allocations(const Instance& bids, std::uint64_t cap, std::string_view what,
                                                   MakeKey make_key) {
    const std::size_t n = bids.agents();
    std::vector<std::size_t> counts(bids.items(), n);
    require_within_cap(count_assignments(counts), cap, what);

    using Key = decltype(make_key(std::vector<Rational>{}));
    std::optional<Key> best;
    std::vector<std::vector<std::size_t>> winners;
    for_each_assignment(complete_choices(n, bids.items()), [&](std::span<const std::size_t> owner) {
        Key key = make_key(utilities_of(bids, owner));
        if (!best || key > *best) {
            best = std::move(key);
            winners.clear();
            winners.emplace_back(owner.begin(), owner.end());
        } else if (key == *best) {
            winners.emplace_back(owner.begin(), owner.end());
        }
        return true;
    });

    std::vector<IntegralAllocation> out;
    out.reserve(winners.size());
    for (const auto& w : winners) out.push_back(IntegralAllocation::from_owners(n, w));
    return out;  // enumeration order is already lexicographic
}

}  // namespace

// ---------------------------------------------------------------- Round-Robin

IntegralAllocation round_robin(const Instance& bids, std::span<const std::size_t> order) {
    const std::size_t n = bids.agents();
    const std::size_t m = bids.items();
    require_permutation(order, n);

    std::vector<bool> taken(m, false);
    std::vector<Bundle> bundles(n);
    for (std::size_t turn = 0; turn < m; ++turn) {
        const std::size_t agent = order[turn % n];
        const auto& row = bids.row(agent);
        std::size_t pick = m;
        for (std::size_t j = 0; j < m; ++j)
            if (!taken[j] && (pick == m || row[j] > row[pick])) pick = j;
        taken[pick] = true;
        bundles[agent].push_back(pick);
    }
    return IntegralAllocation(m, std::move(bundles));
}

IntegralAllocation round_robin(const Instance& bids) { return round_robin(bids, identity_order(bids.agents())); }

std::size_t round_robin_share(std::size_t position, std::size_t agents, std::size_t items) {
    if (agents == 0 || position >= agents) throw std::out_of_range("picking position out of range");
    return items / agents + (position < items % agents ? 1 : 0);
}

WorstBest round_robin_worst_best(std::span<const Rational> true_values, std::size_t position, std::size_t agents) {
    std::vector<Rational> sorted(true_values.begin(), true_values.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const std::size_t ell = round_robin_share(position, agents, sorted.size());
    WorstBest out;
    for (std::size_t k = 0; k < ell; ++k) {
        out.worst += sorted[position + k * agents];
        out.best += sorted[k];
    }
    return out;
}

// ---------------------------------------------------------- welfare maximizers

UtilitarianResult max_utilitarian(const Instance& bids, TieBreakPolicy tie) {
    const bool already = is_normalized(bids);
    const Instance scaled = already ? bids : normalize(bids);
    const std::size_t n = scaled.agents();
    std::vector<std::size_t> owner(scaled.items());
    for (std::size_t j = 0; j < scaled.items(); ++j) {
        Rational top = scaled.value(0, j);
        std::vector<std::size_t> tied{0};
        for (std::size_t i = 1; i < n; ++i) {
            const auto& v = scaled.value(i, j);
            if (v > top) {
                top = v;
                tied.assign(1, i);
            } else if (v == top) {
                tied.push_back(i);
            }
        }
        const bool first_last = tie == TieBreakPolicy::FirstLastToLast && n >= 2 && tied.size() == 2 &&
                                tied[0] == 0 && tied[1] == n - 1;
        owner[j] = first_last ? n - 1 : tied.front();
    }
    return {IntegralAllocation::from_owners(n, owner), !already};
}

Lottery max_utilitarian_lottery(const Instance& bids, std::uint64_t cap) {
    const Instance scaled = is_normalized(bids) ? bids : normalize(bids);
    const std::size_t n = scaled.agents();
    std::vector<std::vector<std::size_t>> choices(scaled.items());
    std::vector<std::size_t> counts(scaled.items());
    for (std::size_t j = 0; j < scaled.items(); ++j) {
        Rational top;
        for (std::size_t i = 0; i < n; ++i) top = max(top, scaled.value(i, j));
        for (std::size_t i = 0; i < n; ++i)
            if (scaled.value(i, j) == top) choices[j].push_back(i);
        counts[j] = choices[j].size();
    }
    const std::uint64_t total = count_assignments(counts);
    require_within_cap(total, cap, "utilitarian tie lottery");
    const Rational p(1, static_cast<std::int64_t>(total));
    std::vector<LotteryEntry> support;
    for_each_assignment(choices, [&](std::span<const std::size_t> owner) {
        support.push_back({p, IntegralAllocation::from_owners(n, owner)});
        return true;
    });
    return Lottery(std::move(support));
}

std::vector<IntegralAllocation> max_positive_count(const Instance& bids, std::uint64_t cap) {
    return argmax_allocations(bids, cap, "positive-count maximization",
                              [](const std::vector<Rational>& u) { return positive_count(u); });
}

std::vector<IntegralAllocation> max_egalitarian(const Instance& bids, std::uint64_t cap) {
    return argmax_allocations(bids, cap, "egalitarian maximization", [](const std::vector<Rational>& u) {
        std::optional<Rational> lowest;
        for (const auto& x : u)
            if (x.is_positive() && (!lowest || x < *lowest)) lowest = x;
        return std::pair{positive_count(u), lowest.value_or(Rational())};
    });
}

std::vector<IntegralAllocation> max_nash(const Instance& bids, std::uint64_t cap) {
    // At a fixed count of positive agents the geometric mean is monotone in
    // the product, so the exact product stands in for it.
    return argmax_allocations(bids, cap, "Nash welfare maximization", [](const std::vector<Rational>& u) {
        Rational product(1);
        for (const auto& x : u)
            if (x.is_positive()) product *= x;
        return std::pair{positive_count(u), std::move(product)};
    });
}

std::vector<IntegralAllocation> leximin(const Instance& bids, std::uint64_t cap) {
    return argmax_allocations(bids, cap, "leximin maximization", [](std::vector<Rational> u) {
        const std::size_t count = positive_count(u);
        std::sort(u.begin(), u.end());
        return std::pair{count, std::move(u)};
    });
}

const IntegralAllocation& select_lex(const std::vector<IntegralAllocation>& candidates) {
    if (candidates.empty()) throw InvariantError("cannot select from an empty allocation set");
    return *std::min_element(candidates.begin(), candidates.end());
}

Lottery uniform_lottery(const std::vector<IntegralAllocation>& candidates) {
    if (candidates.empty()) throw InvariantError("cannot build a lottery over no allocations");
    const Rational p(1, static_cast<std::int64_t>(candidates.size()));
    std::vector<LotteryEntry> support;
    support.reserve(candidates.size());
    for (const auto& a : candidates) support.push_back({p, a});
    return Lottery(std::move(support));
}

Mechanism utilitarian_mechanism(TieBreakPolicy tie) {
    return [tie](const Instance& bids) { return max_utilitarian(bids, tie).allocation; };
}
Mechanism egalitarian_mechanism() {
    return [](const Instance& bids) { return select_lex(max_egalitarian(bids)); };
}
Mechanism nash_mechanism() {
    return [](const Instance& bids) { return select_lex(max_nash(bids)); };
}
Mechanism leximin_mechanism() {
    return [](const Instance& bids) { return select_lex(leximin(bids)); };
}
Mechanism positive_count_mechanism() {
    return [](const Instance& bids) { return select_lex(max_positive_count(bids)); };
}
Mechanism round_robin_mechanism(std::vector<std::size_t> order) {
    return [order = std::move(order)](const Instance& bids) {
        return order.empty() ? round_robin(bids) : round_robin(bids, order);
    };
}

}  // namespace fairnom
