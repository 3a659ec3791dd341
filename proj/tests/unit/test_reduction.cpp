#include <doctest.h>

#include <set>

#include "fairnom/checkers.hpp"
#include "fairnom/efficiency.hpp"
#include "fairnom/reduction.hpp"
#include "oracle.hpp"
#include "random.hpp"

using namespace fairnom;

namespace {

Rational r(long p, long q = 1) { return Rational(p, q); }

InnerAlgorithm inner() {
    return [](const Instance& b) { return exhaustive_inner(b); };
}

}  // namespace

TEST_CASE("desire profile") {
    const Instance inst({{r(1), r(1), r(0), r(0)}, {r(0), r(1), r(0), r(0)}, {r(0), r(0), r(2), r(0)}});
    const auto d = desire_profile(inst);
    CHECK(d.desired[0] == Bundle{0, 1});
    CHECK(d.desired[2] == Bundle{2});
    CHECK(d.exclusive[0] == Bundle{0, 3});
    CHECK(d.exclusive[1] == Bundle{3});
    // Agents 0 and 1 overlap, so only agent 2 sees overlapping rivals.
    CHECK(d.others_disjoint == std::vector<bool>{true, true, false});
}

TEST_CASE("case I hands every agent her support") {
    const Instance inst({{r(1), r(0), r(0)}, {r(0), r(3), r(0)}, {r(0), r(0), r(0)}});
    const auto out = mechanism_one_trace(inst, inner());
    CHECK(out.branch == ReductionCase::AllDisjoint);
    CHECK_FALSE(out.inner_invoked);
    CHECK(out.allocation == IntegralAllocation(3, {{0}, {1}, {}}));
}

TEST_CASE("case IV runs the inner algorithm when every value is positive") {
    const Instance inst({{r(3), r(1), r(1)}, {r(1), r(3), r(1)}, {r(1), r(1), r(3)}});
    const auto out = mechanism_one_trace(inst, inner());
    CHECK(out.branch == ReductionCase::Inner);
    CHECK(out.inner_invoked);
    CHECK(out.allocation == exhaustive_inner(inst));
    CHECK(out.allocation == IntegralAllocation(3, {{0}, {1}, {2}}));
}

TEST_CASE("case II gives the free agent everything nobody else wants") {
    // Agent 0 overlaps both rivals, who are disjoint from each other.
    const Instance inst({{r(1), r(1), r(0), r(1)}, {r(1), r(0), r(0), r(0)}, {r(0), r(1), r(1), r(0)}});
    const auto out = mechanism_one_trace(inst, inner());
    CHECK(out.branch == ReductionCase::SingleFree);
    CHECK_FALSE(out.inner_invoked);
    CHECK(out.allocation == IntegralAllocation(4, {{3}, {0}, {1, 2}}));
}

TEST_CASE("case III with two agents and an overlap") {
    // Agent 1 values the shared item more, so agent 0 takes D̂_0.
    const Instance inst({{r(1), r(1)}, {r(0), r(5)}});
    const auto out = mechanism_one_trace(inst, inner());
    CHECK(out.branch == ReductionCase::PairFree);
    CHECK(out.allocation == IntegralAllocation(2, {{0}, {1}}));
    // Equal intersections fall to the else-branch: agent 1 takes D̂_1.
    const Instance tie({{r(1), r(1)}, {r(0), r(1)}});
    const auto t = mechanism_one_trace(tie, inner());
    CHECK(t.branch == ReductionCase::PairFree);
    CHECK(t.allocation.bundle(0) == Bundle{0, 1});
    CHECK(t.allocation.bundle(1).empty());
}

TEST_CASE("inner contract violations are caught") {
    const Instance inst({{r(3), r(1), r(1)}, {r(1), r(3), r(1)}, {r(1), r(1), r(3)}});
    const InnerAlgorithm greedy = [](const Instance&) { return IntegralAllocation(3, {{0, 1, 2}, {}, {}}); };
    CHECK_THROWS_AS(mechanism_one(inst, greedy), InnerContractError);
    const InnerAlgorithm lazy = [](const Instance&) { return IntegralAllocation::empty(3, 3); };
    CHECK_THROWS_AS(mechanism_one(inst, lazy), InnerContractError);
    CHECK_NOTHROW(mechanism_one(inst, lazy, ReductionOptions{false}));
}

TEST_CASE("EF1 sets match the oracle") {
    gen::Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = gen::pick(rng, 2, 3), m = gen::pick(rng, 1, 3), i = gen::pick(rng, 0, n - 1);
        const auto v = gen::row(rng, m, 3, 30);
        std::set<oracle::Owners> expect;
        oracle::each_owner_vector(n + 1, m, [&](const oracle::Owners& o) {
            if (oracle::in_ef1_set(i, oracle::row_of(v), n, o)) expect.insert(o);
        });
        std::set<oracle::Owners> got;
        for (const auto& a : ef1_set(i, v, n)) {
            CHECK(in_ef1_set(i, v, a));
            const auto o = a.owners();
            got.insert(oracle::Owners(o.begin(), o.end()));
        }
        CHECK(got == expect);
    }
}

TEST_CASE("worst in set and profile assembly") {
    const ValueRow v{r(2), r(1)};
    const std::vector<IntegralAllocation> set{IntegralAllocation(2, {{0}, {1}}), IntegralAllocation(2, {{1}, {0}})};
    CHECK(worst_in_set(0, v, set) == r(1));
    CHECK_THROWS_AS(worst_in_set(0, v, {}), InvariantError);
    const auto inst = assemble_profile(1, v, {{r(5), r(5)}, {r(7), r(7)}});
    CHECK(inst.row(1) == v);
    CHECK(inst.row(2) == ValueRow{r(7), r(7)});
}

TEST_CASE("realize_allocation rejects targets outside EF1(i, v)") {
    const ValueRow v{r(1), r(1), r(0)};
    CHECK_THROWS_AS(realize_allocation(0, v, IntegralAllocation(3, {{}, {0, 1}, {}})), InvariantError);
    CHECK_THROWS_AS(realize_allocation(0, v, IntegralAllocation(3, {{0, 2}, {1}, {}})), InvariantError);
}

TEST_CASE("property: realizing any EF1(i, v) member round-trips, n = 2 and 3") {
    gen::Rng rng(41);
    for (int t = 0; t < 12; ++t) {
        const std::size_t n = gen::pick(rng, 2, 3), m = gen::pick(rng, 1, 3), i = gen::pick(rng, 0, n - 1);
        const auto v = gen::row(rng, m, 4, 25);
        for (const auto& target : ef1_set(i, v, n)) {
            const auto profile = assemble_profile(i, v, realize_allocation(i, v, target));
            const auto out = mechanism_one_trace(profile, inner());
            CHECK(out.allocation == target);
            CHECK_FALSE(out.inner_invoked);
        }
    }
}

TEST_CASE("property: outputs are clean, non-wasteful, EF1 and fPO") {
    gen::Rng rng(77);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = gen::pick(rng, 2, 3), m = gen::pick(rng, 1, 4);
        const auto inst = gen::instance(rng, n, m, 4, 35);
        const auto a = mechanism_one(inst, inner());
        const auto v = oracle::rows_of(inst);
        const auto o = a.owners();
        const oracle::Owners owners(o.begin(), o.end());
        CHECK(oracle::clean(v, owners));
        CHECK(oracle::non_wasteful(v, owners));
        CHECK(oracle::ef1(v, owners));
        CHECK(is_fpo(inst, a));
    }
}

TEST_CASE("worst-case comparison on a small pair") {
    const ValueRow v{r(3), r(2), r(1)}, w{r(1), r(0), r(0)};
    const auto cmp = compare_worst_cases(0, v, w, 2);
    CHECK(cmp.holds);
    CHECK(cmp.own_set_worst >= cmp.other_set_worst);
    CHECK(cmp.own_set_worst == worst_in_set(0, v, ef1_set(0, v, 2)));
    CHECK(cmp.other_set_worst == worst_in_set(0, v, ef1_set(0, w, 2)));
    CHECK(in_ef1_set(0, v, cmp.minimizer));
    CHECK_THROWS_AS(compare_worst_cases(0, v, ValueRow{r(1)}, 2), DimensionError);
}
