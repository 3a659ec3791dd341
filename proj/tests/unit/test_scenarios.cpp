#include <doctest.h>

#include <algorithm>

#include "fairnom/reduction.hpp"
#include "fairnom/scenarios.hpp"

using namespace fairnom;

namespace {
Rational r(long p, long q = 1) { return Rational(p, q); }
}  // namespace

TEST_CASE("row grids") {
    const auto all = product_rows({r(0), r(1), r(2)}, 2, false);
    CHECK(all.size() == 9);
    CHECK(all.front() == ValueRow{r(0), r(0)});
    CHECK(all[1] == ValueRow{r(0), r(1)});
    CHECK(product_rows({r(0), r(1), r(2)}, 2).size() == 8);

    const auto norm = normalized_unique({{r(1), r(1)}, {r(2), r(2)}, {r(0), r(0)}, {r(1), r(3)}});
    CHECK(norm == std::vector<ValueRow>{{r(1, 2), r(1, 2)}, {r(1, 4), r(3, 4)}});
}

TEST_CASE("scenario catalogue") {
    const auto names = scenario_names();
    for (const char* want : {"thm3.1", "lemma3.3", "thm3.4", "thm4.1", "thm4.2-nom", "thm4.3", "thm4.4", "thm5.5",
                             "thm6.1", "thm6.2"})
        CHECK(std::find(names.begin(), names.end(), want) != names.end());
    CHECK_THROWS_AS(run_scenario("thm9.9"), std::invalid_argument);
}

TEST_CASE("quick scenarios reproduce") {
    for (const char* name : {"thm3.1", "thm3.4", "thm4.1", "thm4.3", "thm6.1", "thm6.2"}) {
        CAPTURE(name);
        const auto res = run_scenario(name);
        CHECK(res.name == name);
        CHECK(res.reproduced);
    }
}

TEST_CASE("realization space contains every construction") {
    const ValueRow truth{r(2), r(1), r(0)};
    const auto space = realization_space(0, {truth}, 3);
    CHECK(std::find(space.rows.begin(), space.rows.end(), ValueRow(3)) != space.rows.end());
    for (const auto& a : ef1_set(0, truth, 3)) {
        const auto opp = realize_allocation(0, truth, a);
        CHECK(std::find(space.profiles.begin(), space.profiles.end(), opp) != space.profiles.end());
    }
}

TEST_CASE("worst-case grid summary on a tiny grid") {
    const auto rows = product_rows({r(0), r(1), r(2)}, 2, false);
    const auto s = verify_worst_cases(rows, 2, {0, 1});
    CHECK(s.pairs == 2 * rows.size() * rows.size());
    CHECK(s.violations == 0);
    CHECK_FALSE(s.first_violation);
    CHECK(s.swap_envy_left == 0);
}
