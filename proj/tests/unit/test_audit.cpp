#include <doctest.h>

#include "fairnom/audit.hpp"
#include "fairnom/lottery.hpp"
#include "fairnom/reduction.hpp"
#include "random.hpp"

using namespace fairnom;

namespace {

Rational r(long p, long q = 1) { return Rational(p, q); }

// All items to agent 0 exactly when she reports (1, 1), otherwise all to agent 1.
IntegralAllocation rigged(const Instance& b) {
    if (b.row(0) == ValueRow{r(1), r(1)}) return IntegralAllocation(2, {{0, 1}, {}});
    return IntegralAllocation(2, {{}, {0, 1}});
}

}  // namespace

TEST_CASE("report space numbering") {
    ReportSpace space;
    space.add_row({r(1), r(0)});
    space.add_row({r(0), r(1)});
    space.add_row({r(1), r(0)});
    space.add_row({r(1), r(1)});
    CHECK(space.rows.size() == 3);
    space.add_profile({{r(2), r(2)}, {r(3), r(3)}});
    space.add_profile({{r(2), r(2)}, {r(3), r(3)}});
    CHECK(space.profile_count(2) == 10);
    CHECK(space.profile(0, 2) == std::vector<ValueRow>{space.rows[0], space.rows[0]});
    CHECK(space.profile(1, 2) == std::vector<ValueRow>{space.rows[0], space.rows[1]});
    CHECK(space.profile(3, 2) == std::vector<ValueRow>{space.rows[1], space.rows[0]});
    CHECK(space.profile(9, 2) == space.profiles[0]);
    CHECK_THROWS_AS(space.add_row({r(1)}), DimensionError);
    CHECK_THROWS_AS(space.add_profile({{r(1), r(1)}}), DimensionError);
}

TEST_CASE("structural families") {
    CHECK(opposite_order(ValueRow{r(3), r(1), r(2)}) == ValueRow{r(1), r(3), r(2)});
    CHECK(opposite_order(ValueRow{r(5), r(5), r(1)}) == ValueRow{r(1), r(5), r(5)});
    ReportSpace space;
    space.add_families(ValueRow{r(3), r(1), r(2)});
    // truth, opposite, three unit vectors, zero row
    CHECK(space.rows.size() == 6);
    CHECK(space.rows.back() == ValueRow(3));
    ReportSpace some;
    some.add_families(ValueRow{r(1), r(1)}, UnitVectors | ZeroRow);
    CHECK(some.rows.size() == 3);
}

TEST_CASE("verdict strings") {
    AuditReport a;
    a.honest_worst.value = r(1);
    a.honest_best.value = r(2);
    a.misreport_worst.value = r(1);
    a.misreport_best.value = r(2);
    CHECK(a.verdict() == "GridNOM");
    a.misreport_best.value = r(3);
    CHECK(a.verdict() == "OMWitness(best)");
    a.misreport_worst.value = r(3, 2);
    CHECK(a.verdict() == "OMWitness(worst,best)");
    a.misreport_best.value = r(2);
    CHECK(a.verdict() == "OMWitness(worst)");
}

TEST_CASE("a rigged mechanism is caught") {
    ReportSpace space;
    space.add_families(ValueRow{r(2), r(1)});
    const auto reports = audit_deterministic(rigged, 0, ValueRow{r(2), r(1)}, {{r(1), r(1)}, {r(0), r(1)}}, space, 2);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].verdict() == "OMWitness(worst,best)");
    CHECK(reports[0].misreport_worst.value == r(3));
    CHECK(reports[0].honest_best.value == r(0));
    CHECK(reports[1].verdict() == "GridNOM");
}

TEST_CASE("extremes match a direct scan and do not depend on thread count") {
    gen::Rng rng(8);
    const auto outcome = deterministic_outcome(round_robin_mechanism());
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = gen::pick(rng, 2, 3), m = gen::pick(rng, 2, 4);
        ReportSpace space;
        for (int k = 0; k < 4; ++k) space.add_row(gen::row(rng, m, 3, 20));
        const auto truth = gen::row(rng, m, 3, 0);
        const std::size_t agent = gen::pick(rng, 0, n - 1);

        const auto one = tabulate(outcome, agent, truth, space, n, {1});
        const auto many = tabulate(outcome, agent, truth, space, n, {3});
        CHECK(one.shares == many.shares);
        CHECK(one.distinct == many.distinct);

        Rational lo, hi;
        std::uint64_t lo_at = 0;
        for (std::uint64_t p = 0; p < space.profile_count(n - 1); ++p) {
            const auto inst = assemble_profile(agent, truth, space.profile(p, n - 1));
            const auto u = bundle_value(truth, round_robin(inst).bundle(agent));
            if (p == 0 || u < lo) {
                lo = u;
                lo_at = p;
            }
            if (p == 0 || u > hi) hi = u;
        }
        const auto worst = worst_case(one, truth, space, n);
        CHECK(worst.value == lo);
        CHECK(worst.index == lo_at);
        CHECK(worst.opponents == space.profile(lo_at, n - 1));
        CHECK(best_case(one, truth, space, n).value == hi);
    }
}

TEST_CASE("randomized outcomes use the expected allocation") {
    ReportSpace space;
    space.add_row({r(1), r(1)});
    const auto table = tabulate(randomized_outcome([](const Instance& b) { return ps_lottery(b); }), 0,
                                ValueRow{r(1), r(1)}, space, 2);
    CHECK(table.shares.front() == ValueRow{r(1, 2), r(1, 2)});
    CHECK(table.distinct.size() == 1);
}

TEST_CASE("grid audit over round robin finds nothing") {
    std::vector<ValueRow> reports{{r(3), r(2), r(1)}, {r(1), r(2), r(3)}, {r(1), r(1), r(1)}, {r(1), r(0), r(0)}};
    ReportSpace space;
    for (const auto& row : reports) space.add_row(row);
    const auto summary = grid_audit(deterministic_outcome(round_robin_mechanism()), 0, reports, space, 2);
    CHECK(summary.pairs == 12);
    CHECK(summary.witnesses.empty());
}

TEST_CASE("audit argument checks") {
    ReportSpace empty;
    CHECK(audit_deterministic(rigged, 0, ValueRow{r(1), r(1)}, {}, empty, 2).empty());
    CHECK_THROWS_AS(audit_deterministic(rigged, 0, ValueRow{r(1), r(1)}, {{r(1), r(0)}}, empty, 2), InvariantError);
    ReportSpace space;
    space.add_row({r(1), r(1)});
    CHECK_THROWS_AS(audit_deterministic(rigged, 2, ValueRow{r(1), r(1)}, {}, space, 2), std::out_of_range);
    CHECK_THROWS_AS(audit_deterministic(rigged, 0, ValueRow{r(1), r(1)}, {{r(1)}}, space, 2), DimensionError);
}
