#include <doctest.h>

#include <map>

#include "fairnom/checkers.hpp"
#include "fairnom/lottery.hpp"
#include "oracle.hpp"
#include "random.hpp"

using namespace fairnom;

namespace {
Rational r(long p, long q = 1) { return Rational(p, q); }
}  // namespace

TEST_CASE("probabilistic serial on identical preferences splits evenly") {
    const Instance inst({{r(3), r(2)}, {r(3), r(2)}});
    const auto ps = probabilistic_serial(inst);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t g = 0; g < 2; ++g) CHECK(ps.allocation.share(i, g) == r(1, 2));
    CHECK(ps.schedule.horizon == r(1));
}

TEST_CASE("eating schedule tiles the horizon") {
    const Instance inst({{r(3), r(2), r(1)}, {r(1), r(3), r(2)}, {r(3), r(1), r(2)}});
    const auto ps = probabilistic_serial(inst);
    for (const auto& segs : ps.schedule.segments) {
        REQUIRE_FALSE(segs.empty());
        CHECK(segs.front().start == r(0));
        CHECK(segs.back().end == ps.schedule.horizon);
        for (std::size_t k = 1; k < segs.size(); ++k) CHECK(segs[k].start == segs[k - 1].end);
    }
    // Agents 0 and 2 share item 0, agent 1 eats item 1 alone until it is gone.
    CHECK(ps.allocation.share(0, 0) == r(1, 2));
    CHECK(ps.allocation.share(1, 1) == r(1, 1) - ps.allocation.share(0, 1) - ps.allocation.share(2, 1));
}

TEST_CASE("eat_by_orders validates orders") {
    CHECK_THROWS_AS(eat_by_orders({{0, 0}}, 2), InvariantError);
    CHECK_THROWS_AS(eat_by_orders({{0}}, 2), DimensionError);
    const auto res = eat_by_orders({{1, 0}, {1, 0}}, 2);
    CHECK(res.allocation.share(0, 1) == r(1, 2));
}

TEST_CASE("birkhoff decomposes and recomposes") {
    const BistochasticMatrix m({{r(1, 2), r(1, 2)}, {r(1, 2), r(1, 2)}});
    const auto terms = birkhoff(m);
    CHECK(terms.size() == 2);
    CHECK(recompose(terms, 2) == m.entries());
    CHECK_THROWS_AS(BistochasticMatrix({{r(1), r(0)}, {r(1), r(0)}}), InvariantError);
    CHECK_THROWS_AS(BistochasticMatrix({{r(1), r(0)}}), InvariantError);
}

TEST_CASE("property: birkhoff on random convex combinations") {
    gen::Rng rng(17);
    for (int t = 0; t < 40; ++t) {
        const std::size_t k = gen::pick(rng, 1, 6);
        const auto entries = gen::bistochastic(rng, k, gen::pick(rng, 1, 2 * k));
        const auto terms = birkhoff(BistochasticMatrix(entries));
        CHECK(terms.size() <= k * k - k + 1);
        Rational total;
        for (const auto& term : terms) {
            CHECK(term.weight.is_positive());
            total += term.weight;
            std::vector<bool> used(k, false);
            for (auto c : term.perm) used.at(c) = true;
            CHECK(std::all_of(used.begin(), used.end(), [](bool b) { return b; }));
        }
        CHECK(total == r(1));
        CHECK(recompose(terms, k) == entries);
    }
}

TEST_CASE("PS-Lottery on three items, two agents") {
    const Instance inst({{r(3), r(2), r(1)}, {r(3), r(2), r(1)}});
    const auto trace = ps_lottery_trace(inst);
    CHECK(trace.windows == 2);
    CHECK(trace.window_matrix.size() == 4);
    const auto x = expected_allocation(trace.lottery);
    CHECK(x == probabilistic_serial(inst).allocation);
    for (const auto& e : trace.lottery.support()) CHECK(is_ef1(inst, e.allocation).ok);
}

TEST_CASE("PS-Lottery with an agent who values nothing") {
    const Instance inst({{r(0), r(0)}, {r(1), r(2)}});
    const auto lot = ps_lottery(inst);
    CHECK(expected_allocation(lot) == probabilistic_serial(inst).allocation);
}

TEST_CASE("property: PS matches an event-driven oracle; lottery implements it") {
    gen::Rng rng(23);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = gen::pick(rng, 1, 3), m = gen::pick(rng, 1, 5);
        const auto inst = gen::instance(rng, n, m, 10, 15);
        const auto ps = probabilistic_serial(inst);
        const auto expect = oracle::eat(oracle::rows_of(inst));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t g = 0; g < m; ++g) CHECK(ps.allocation.share(i, g).raw() == expect[i][g]);
        const auto lot = ps_lottery(inst);
        CHECK(expected_allocation(lot) == ps.allocation);
    }
}

TEST_CASE("sampling is reproducible and respects the support") {
    const IntegralAllocation a(2, {{0}, {1}}), b(2, {{1}, {0}});
    const Lottery lot({{r(1, 3), a}, {r(2, 3), b}});
    CHECK(sample(lot, 42) == sample(lot, 42));
    std::map<std::vector<std::size_t>, int> counts;
    for (std::uint64_t s = 0; s < 300; ++s) ++counts[sample(lot, s).owners()];
    CHECK(counts.size() == 2);
    CHECK(counts[b.owners()] > counts[a.owners()]);
}
