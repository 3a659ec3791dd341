#include <doctest.h>

#include "fairnom/checkers.hpp"
#include "fairnom/enumerate.hpp"
#include "oracle.hpp"
#include "random.hpp"

using namespace fairnom;

namespace {
Rational r(long p, long q = 1) { return Rational(p, q); }
}  // namespace

TEST_CASE("envy-freeness and proportionality on a hand example") {
    const Instance inst({{r(3), r(1), r(1)}, {r(1), r(1), r(1)}});
    const IntegralAllocation a(3, {{0}, {1, 2}});
    CHECK(is_ef(inst, a).ok);
    CHECK(is_prop(inst, a).ok);
    const IntegralAllocation b(3, {{1}, {0, 2}});
    const auto ef = is_ef(inst, b);
    CHECK_FALSE(ef.ok);
    CHECK(ef.witness->agent == 0);
    CHECK(ef.witness->envied == std::optional<std::size_t>(1));
    CHECK(is_ef1(inst, b).ok);
    const auto prop = is_prop(inst, b);
    CHECK_FALSE(prop.ok);
    CHECK_FALSE(prop.witness->envied.has_value());
}

TEST_CASE("EF1 fails when two valued items sit in one rival bundle") {
    const Instance inst({{r(1), r(1), r(1)}, {r(1), r(1), r(1)}});
    const IntegralAllocation a(3, {{}, {0, 1, 2}});
    const auto rep = is_ef1(inst, a);
    CHECK_FALSE(rep.ok);
    CHECK(rep.witness->agent == 0);
    CHECK_FALSE(is_ef1_for_agent(inst, 0, a).ok);
    CHECK(is_ef1_for_agent(inst, 1, a).ok);
    CHECK_FALSE(ef1_for_row(inst.row(0), 0, a));
    CHECK(ef1_for_row(ValueRow{r(0), r(0), r(5)}, 0, a));
}

TEST_CASE("clean, non-wasteful and complete") {
    const Instance inst({{r(1), r(0), r(0)}, {r(0), r(2), r(0)}});
    CHECK(is_clean(inst, IntegralAllocation(3, {{0}, {1}})));
    CHECK_FALSE(is_clean(inst, IntegralAllocation(3, {{0, 2}, {1}})));
    CHECK(is_non_wasteful(inst, IntegralAllocation(3, {{0}, {1}})));
    CHECK_FALSE(is_non_wasteful(inst, IntegralAllocation(3, {{0}, {}})));
    CHECK_FALSE(is_complete(IntegralAllocation(3, {{0}, {1}})));
    CHECK(is_complete(IntegralAllocation(3, {{0, 2}, {1}})));
}

TEST_CASE("fractional predicates") {
    const Instance inst({{r(2), r(1)}, {r(1), r(2)}});
    const FractionalAllocation half({{r(1, 2), r(1, 2)}, {r(1, 2), r(1, 2)}});
    CHECK(is_ef(inst, half).ok);
    CHECK(is_prop(inst, half).ok);
    const FractionalAllocation skew({{r(0), r(1, 2)}, {r(1), r(1, 2)}});
    CHECK_FALSE(is_ef(inst, skew).ok);
    CHECK_FALSE(is_prop(inst, skew).ok);
}

TEST_CASE("property: predicates agree with brute-force oracles") {
    gen::Rng rng(2024);
    for (int t = 0; t < 150; ++t) {
        const std::size_t n = gen::pick(rng, 1, 3), m = gen::pick(rng, 1, 4);
        const auto inst = gen::instance(rng, n, m, 6, 30);
        const auto v = oracle::rows_of(inst);
        std::vector<std::size_t> owner(m);
        for (auto& o : owner) o = gen::pick(rng, 0, n);
        const auto a = IntegralAllocation::from_owners(n, owner);
        const oracle::Owners o(owner.begin(), owner.end());
        CHECK(is_ef(inst, a).ok == oracle::envy_free(v, o));
        CHECK(is_ef1(inst, a).ok == oracle::ef1(v, o));
        CHECK(is_clean(inst, a) == oracle::clean(v, o));
        CHECK(is_non_wasteful(inst, a) == oracle::non_wasteful(v, o));
        // EF implies EF1, and for complete allocations EF implies PROP.
        if (is_ef(inst, a).ok) {
            CHECK(is_ef1(inst, a).ok);
            if (a.is_complete()) CHECK(is_prop(inst, a).ok);
        }
    }
}

TEST_CASE("enumeration helpers") {
    const std::vector<std::size_t> counts{3, 4, 5};
    CHECK(count_assignments(counts) == 60);
    const std::vector<std::size_t> huge(80, 10);
    CHECK(count_assignments(huge) == UINT64_MAX);
    CHECK_THROWS_AS(require_within_cap(11, 10, "test"), ScaleError);
    CHECK_NOTHROW(require_within_cap(10, 10, "test"));

    std::vector<std::vector<std::size_t>> seen;
    for_each_assignment({{0, 2}, {1}, {0, 1}}, [&](std::span<const std::size_t> o) {
        seen.emplace_back(o.begin(), o.end());
        return true;
    });
    CHECK(seen == std::vector<std::vector<std::size_t>>{{0, 1, 0}, {0, 1, 1}, {2, 1, 0}, {2, 1, 1}});

    int visits = 0;
    for_each_assignment(complete_choices(2, 3), [&](std::span<const std::size_t>) { return ++visits < 3; });
    CHECK(visits == 3);
    CHECK(partial_choices(2, 1).front() == std::vector<std::size_t>{0, 1, 2});
}
