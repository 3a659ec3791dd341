#include "fairnom/reduction.hpp"

#include <algorithm>

#include "fairnom/checkers.hpp"
#include "fairnom/efficiency.hpp"

namespace fairnom {

namespace {

bool disjoint(const Bundle& a, const Bundle& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia == *ib) return false;
        if (*ia < *ib) ++ia;
        else ++ib;
    }
    return true;
}

Bundle intersect(const Bundle& a, const Bundle& b) {
    Bundle out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

IntegralAllocation with_exclusive(const DesireProfile& d, std::size_t agent, std::size_t items) {
    auto bundles = d.desired;
    bundles[agent] = d.exclusive[agent];
    return IntegralAllocation(items, std::move(bundles));
}

IntegralAllocation clean(const Instance& bids, const IntegralAllocation& alloc) {
    std::vector<Bundle> bundles(alloc.agents());
    for (std::size_t i = 0; i < alloc.agents(); ++i)
        for (std::size_t g : alloc.bundle(i))
            if (!bids.value(i, g).is_zero()) bundles[i].push_back(g);
    return IntegralAllocation(alloc.items(), std::move(bundles));
}

IntegralAllocation call_inner(const Instance& bids, const InnerAlgorithm& inner, const ReductionOptions& options) {
    IntegralAllocation out = inner(bids);
    if (options.verify_inner) {
        if (out.agents() != bids.agents() || out.items() != bids.items())
            throw InnerContractError("inner algorithm returned an allocation of the wrong shape");
        if (!is_clean(bids, out)) throw InnerContractError("inner algorithm returned a non-clean allocation");
        if (!is_non_wasteful(bids, out)) throw InnerContractError("inner algorithm returned a wasteful allocation");
        if (!is_ef1(bids, out).ok) throw InnerContractError("inner algorithm returned a non-EF1 allocation");
    }
    return out;
}

}  // namespace

DesireProfile desire_profile(const Instance& bids) {
    const std::size_t n = bids.agents();
    const std::size_t m = bids.items();
    DesireProfile d;
    d.desired.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t g = 0; g < m; ++g)
            if (bids.value(i, g).is_positive()) d.desired[i].push_back(g);

    d.exclusive.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<bool> wanted_elsewhere(m, false);
        for (std::size_t j = 0; j < n; ++j)
            if (j != i)
                for (std::size_t g : d.desired[j]) wanted_elsewhere[g] = true;
        for (std::size_t g = 0; g < m; ++g)
            if (!wanted_elsewhere[g]) d.exclusive[i].push_back(g);
    }

    // Overlap graph: pair (a, b) overlaps iff their desired sets intersect.
    std::vector<std::pair<std::size_t, std::size_t>> overlaps;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (!disjoint(d.desired[a], d.desired[b])) overlaps.emplace_back(a, b);
    d.others_disjoint.assign(n, true);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [a, b] : overlaps)
            if (a != i && b != i) {
                d.others_disjoint[i] = false;
                break;
            }
    return d;
}

ReductionOutcome mechanism_one_trace(const Instance& bids, const InnerAlgorithm& inner, ReductionOptions options) {
    const std::size_t n = bids.agents();
    const std::size_t m = bids.items();
    const DesireProfile d = desire_profile(bids);

    std::vector<std::size_t> free_agents;
    for (std::size_t i = 0; i < n; ++i)
        if (d.others_disjoint[i]) free_agents.push_back(i);

    ReductionOutcome out;
    auto candidate_or_inner = [&](IntegralAllocation candidate) {
        if (is_ef1(bids, candidate).ok) return candidate;
        out.inner_invoked = true;
        return call_inner(bids, inner, options);
    };

    bool pairwise_disjoint = true;
    for (std::size_t a = 0; a < n && pairwise_disjoint; ++a)
        for (std::size_t b = a + 1; b < n && pairwise_disjoint; ++b)
            pairwise_disjoint = disjoint(d.desired[a], d.desired[b]);

    // With two agents R_i holds trivially, so Case I tests disjointness itself.
    IntegralAllocation temporary;
    if (pairwise_disjoint) {
        out.branch = ReductionCase::AllDisjoint;
        temporary = IntegralAllocation(m, d.desired);
    } else if (free_agents.size() == 1) {
        out.branch = ReductionCase::SingleFree;
        temporary = candidate_or_inner(with_exclusive(d, free_agents[0], m));
    } else if (free_agents.size() == 2) {
        out.branch = ReductionCase::PairFree;
        const std::size_t i = free_agents[0];
        const std::size_t j = free_agents[1];
        const Bundle shared = intersect(d.desired[i], d.desired[j]);
        const bool j_values_more = bundle_value(bids.row(i), shared) < bundle_value(bids.row(j), shared);
        temporary = candidate_or_inner(with_exclusive(d, j_values_more ? i : j, m));
    } else if (free_agents.empty()) {
        out.branch = ReductionCase::Inner;
        out.inner_invoked = true;
        temporary = call_inner(bids, inner, options);
    } else {
        // Three free agents force every pair of desired sets to be disjoint,
        // which Case I has already taken.
        throw std::logic_error("reduction reached an impossible disjointness pattern");
    }

    out.allocation = clean(bids, temporary);
    return out;
}

IntegralAllocation mechanism_one(const Instance& bids, const InnerAlgorithm& inner, ReductionOptions options) {
    return mechanism_one_trace(bids, inner, options).allocation;
}

IntegralAllocation exhaustive_inner(const Instance& bids, std::uint64_t cap) {
    const std::size_t n = bids.agents();
    const std::size_t m = bids.items();
    // Clean + non-wasteful: a desired item goes to one of its admirers, an
    // undesired item stays unallocated.
    std::vector<std::vector<std::size_t>> choices(m);
    std::vector<std::size_t> counts(m);
    for (std::size_t g = 0; g < m; ++g) {
        for (std::size_t i = 0; i < n; ++i)
            if (bids.value(i, g).is_positive()) choices[g].push_back(i);
        if (choices[g].empty()) choices[g].push_back(n);
        counts[g] = choices[g].size();
    }
    require_within_cap(count_assignments(counts), cap, "exhaustive inner algorithm");

    std::optional<IntegralAllocation> found;
    for_each_assignment(choices, [&](std::span<const std::size_t> owner) {
        auto alloc = IntegralAllocation::from_owners(n, owner);
        if (is_ef1(bids, alloc).ok && is_fpo(bids, alloc)) {
            found = std::move(alloc);
            return false;
        }
        return true;
    });
    if (!found) throw std::logic_error("no clean, non-wasteful, EF1, fPO allocation found");
    return *found;
}

bool in_ef1_set(std::size_t agent, std::span<const Rational> v, const IntegralAllocation& alloc) {
    if (v.size() != alloc.items()) throw DimensionError("valuation row length mismatch");
    if (agent >= alloc.agents()) throw std::out_of_range("agent index out of range");
    for (std::size_t g : alloc.bundle(agent))
        if (!v[g].is_positive()) return false;
    for (std::size_t g : alloc.unallocated())
        if (!v[g].is_zero()) return false;
    return ef1_for_row(v, agent, alloc);
}

std::vector<IntegralAllocation> ef1_set(std::size_t agent, std::span<const Rational> v, std::size_t agents,
                                        std::uint64_t cap) {
    if (agent >= agents) throw std::out_of_range("agent index out of range");
    const std::size_t m = v.size();
    std::vector<std::size_t> counts(m, agents + 1);
    require_within_cap(count_assignments(counts), cap, "EF1 set enumeration");
    std::vector<IntegralAllocation> out;
    for_each_assignment(partial_choices(agents, m), [&](std::span<const std::size_t> owner) {
        // Cheap filters on the owner vector before building the allocation.
        for (std::size_t g = 0; g < m; ++g) {
            if (owner[g] == agent && !v[g].is_positive()) return true;
            if (owner[g] == agents && !v[g].is_zero()) return true;
        }
        auto alloc = IntegralAllocation::from_owners(agents, owner);
        if (ef1_for_row(v, agent, alloc)) out.push_back(std::move(alloc));
        return true;
    });
    return out;
}

Rational worst_in_set(std::size_t agent, std::span<const Rational> v_eval, const std::vector<IntegralAllocation>& set) {
    if (set.empty()) throw InvariantError("worst case over an empty allocation set");
    Rational worst = bundle_value(v_eval, set.front().bundle(agent));
    for (const auto& a : set) worst = min(worst, bundle_value(v_eval, a.bundle(agent)));
    return worst;
}

std::vector<ValueRow> realize_allocation(std::size_t agent, std::span<const Rational> v,
                                         const IntegralAllocation& target) {
    if (!in_ef1_set(agent, v, target))
        throw InvariantError("target allocation is not clean, non-wasteful and EF1 for the agent");
    const std::size_t n = target.agents();
    const std::size_t m = target.items();

    Bundle wanted;
    for (std::size_t g = 0; g < m; ++g)
        if (v[g].is_positive()) wanted.push_back(g);

    std::vector<std::size_t> touching;
    for (std::size_t j = 0; j < n; ++j)
        if (j != agent && !disjoint(target.bundle(j), wanted)) touching.push_back(j);

    std::vector<ValueRow> rows;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == agent) continue;
        ValueRow row(m);
        for (std::size_t g : target.bundle(j)) row[g] = Rational(1);
        if (touching.size() == 1 && touching[0] == j) {
            // Outbid the agent on the shared items so the pair case hands her
            // the complement of everyone else's desires.
            const Bundle shared = intersect(target.bundle(j), wanted);
            const Rational doubled = Rational(2) * bundle_value(v, shared);
            for (std::size_t g : shared) row[g] = doubled;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Instance assemble_profile(std::size_t agent, std::span<const Rational> own, const std::vector<ValueRow>& opponents) {
    std::vector<ValueRow> rows;
    rows.reserve(opponents.size() + 1);
    for (std::size_t j = 0, k = 0; j <= opponents.size(); ++j) {
        if (j == agent) rows.emplace_back(own.begin(), own.end());
        else rows.push_back(opponents.at(k++));
    }
    if (agent > opponents.size()) throw std::out_of_range("agent index out of range");
    return Instance(std::move(rows));
}

WorstCaseComparison compare_worst_cases(std::size_t agent, std::span<const Rational> v,
                                        std::span<const Rational> v_prime, std::size_t agents, std::uint64_t cap) {
    if (v.size() != v_prime.size()) throw DimensionError("valuation rows differ in length");
    const auto own_set = ef1_set(agent, v, agents, cap);
    const auto other_set = ef1_set(agent, v_prime, agents, cap);

    WorstCaseComparison out;
    out.own_set_worst = worst_in_set(agent, v, own_set);
    out.other_set_worst = worst_in_set(agent, v, other_set);
    out.holds = out.own_set_worst >= out.other_set_worst;

    for (const auto& a : own_set)
        if (bundle_value(v, a.bundle(agent)) == out.own_set_worst) {
            out.minimizer = a;
            break;
        }
    const IntegralAllocation& a = out.minimizer;
    if (ef1_for_row(v_prime, agent, a)) return out;

    // The minimizer leaves the agent envious (beyond one item) under v'. Hand
    // her the most coveted bundle minus its best item, and give its owner her
    // old bundle plus that item.
    std::optional<std::size_t> chosen;
    Rational chosen_value;
    for (std::size_t k = 0; k < agents; ++k) {
        if (k == agent || a.bundle(k).empty()) continue;
        Rational total = bundle_value(v_prime, a.bundle(k));
        Rational top;
        for (std::size_t g : a.bundle(k)) top = max(top, v_prime[g]);
        Rational up_to_one = total - top;
        if (!chosen || up_to_one > chosen_value) {
            chosen = k;
            chosen_value = std::move(up_to_one);
        }
    }
    const std::size_t j = *chosen;  // non-empty: the agent envies someone
    std::size_t best_item = a.bundle(j).front();
    for (std::size_t g : a.bundle(j))
        if (v_prime[g] > v_prime[best_item]) best_item = g;

    auto bundles = a.bundles();
    Bundle taken;
    for (std::size_t g : a.bundle(j))
        if (g != best_item) taken.push_back(g);
    Bundle given = a.bundle(agent);
    given.push_back(best_item);
    bundles[agent] = std::move(taken);
    bundles[j] = std::move(given);
    IntegralAllocation swapped(a.items(), std::move(bundles));

    out.swap_keeps_value = bundle_value(v, swapped.bundle(agent)) <= bundle_value(v, a.bundle(agent));
    out.swap_removes_envy = ef1_for_row(v_prime, agent, swapped);
    out.swapped = std::move(swapped);
    return out;
}

}  // namespace fairnom
