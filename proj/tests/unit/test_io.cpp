#include <doctest.h>

#include "fairnom/io.hpp"

using namespace fairnom;
using io::json;

namespace {
Rational r(long p, long q = 1) { return Rational(p, q); }
}  // namespace

TEST_CASE("rationals travel as strings or integers") {
    CHECK(io::to_rational(json("39/10")) == r(39, 10));
    CHECK(io::to_rational(json("0.9")) == r(9, 10));
    CHECK(io::to_rational(json(4)) == r(4));
    CHECK_THROWS_AS(io::to_rational(json(0.5)), io::FormatError);
    CHECK_THROWS_AS(io::to_rational(json("x")), io::FormatError);
    CHECK_THROWS_AS(io::to_rational(json::array()), io::FormatError);
    CHECK(io::from_rational(r(6, 4)) == json("3/2"));
    CHECK(io::parse_row("3.9,3,2,0.9") == ValueRow{r(39, 10), r(3), r(2), r(9, 10)});
    CHECK_THROWS_AS(io::parse_row("1,,2"), io::FormatError);
}

TEST_CASE("instances round-trip") {
    const Instance inst({{r(1, 3), r(2)}, {r(0), r(5, 7)}});
    const json j = io::from_instance(inst);
    CHECK(j.at("agents") == 2);
    CHECK(j.at("values")[0][0] == "1/3");
    CHECK(io::to_instance(j) == inst);
    CHECK(io::to_instance(json::parse(R"([["1","2"],[3,4]])")).value(1, 0) == r(3));
    CHECK_THROWS(io::to_instance(json::parse(R"({"items":2})")));
}

TEST_CASE("allocations are 1-based on the wire") {
    const IntegralAllocation a(3, {{2}, {0}});
    const json j = io::from_allocation(a);
    CHECK(j.at("bundles") == json::parse("[[3],[1]]"));
    CHECK(j.at("unallocated") == json::parse("[2]"));
    CHECK(io::to_allocation(j, 3) == a);
    CHECK(io::to_allocation(json::parse("[[3],[1]]"), 3) == a);
    CHECK_THROWS_AS(io::to_allocation(json::parse("[[0]]"), 3), io::FormatError);
    CHECK_THROWS_AS(io::to_allocation(json::parse("[[4]]"), 3), io::FormatError);
    CHECK_THROWS_AS(io::to_allocation(json::parse("[3]"), 3), io::FormatError);
}

TEST_CASE("fractional allocations, lotteries and matrices round-trip") {
    const FractionalAllocation x({{r(1, 2), r(1)}, {r(1, 2), r(0)}});
    CHECK(io::to_fractional(io::from_fractional(x)) == x);

    const Lottery lot({{r(1, 3), IntegralAllocation(2, {{0}, {1}})}, {r(2, 3), IntegralAllocation(2, {{1}, {0}})}});
    const Lottery back = io::to_lottery(io::from_lottery(lot), 2);
    CHECK(back.support() == lot.support());

    const auto m = io::to_matrix(json::parse(R"([["1/2","1/2"],["1/2","1/2"]])"));
    CHECK(m.size() == 2);
    CHECK(io::to_matrix(json{{"matrix", io::from_matrix(m.entries())}}).entries() == m.entries());
    const std::vector<PermutationTerm> terms{{r(1), {1, 0}}};
    CHECK(io::from_terms(terms)[0].at("perm") == json::parse("[2,1]"));
}

TEST_CASE("report spaces from JSON") {
    const auto bare = io::to_space(json::parse(R"([["1","0"],["0","1"],["1","0"]])"));
    CHECK(bare.rows.size() == 2);
    const auto full = io::to_space(json::parse(R"({"rows":[[1,0]],"profiles":[[[1,1],[2,2]]]})"));
    CHECK(full.rows.size() == 1);
    CHECK(full.profiles.size() == 1);
    CHECK(full.profile_count(2) == 2);
}

TEST_CASE("reports serialize with ordered keys") {
    AuditReport a;
    a.agent = 0;
    a.truth = {r(1), r(0)};
    a.misreport = {r(0), r(1)};
    const json j = io::from_report(a);
    CHECK(j.begin().key() == "agent");
    CHECK(j.at("agent") == 1);
    CHECK(j.at("verdict") == "GridNOM");
    CHECK(j.at("honest_worst").at("value") == "0");
}

TEST_CASE("missing files are format errors") {
    CHECK_THROWS_AS(io::read_file("/nonexistent/fairnom.json"), io::FormatError);
}
