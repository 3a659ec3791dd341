#include <doctest.h>

#include "fairnom/bobw.hpp"
#include "fairnom/checkers.hpp"
#include "fairnom/efficiency.hpp"

using namespace fairnom;

namespace {
Rational r(long p, long q = 1) { return Rational(p, q); }
}  // namespace

TEST_CASE("names") {
    CHECK(to_string(ExPost::PoMaxPositiveCount) == "po-max-positive-count");
    CHECK(to_string(ExPost::Leximin) == "leximin");
    CHECK(to_string(ExPost::MaxNash) == "mnw");
    CHECK(to_string(ExPost::PoEgalitarian) == "po-egalitarian");
    CHECK(to_string(ExAnte::Prop) == "prop");
    CHECK(to_string(ExAnte::Ef) == "ef");
}

TEST_CASE("symmetric instance admits an ex-ante envy-free lottery") {
    const Instance inst({{r(1), r(1)}, {r(1), r(1)}});
    for (ExPost p : {ExPost::PoMaxPositiveCount, ExPost::Leximin, ExPost::MaxNash, ExPost::PoEgalitarian})
        for (ExAnte e : {ExAnte::Prop, ExAnte::Ef}) {
            const auto rep = bobw_feasible(inst, p, e);
            REQUIRE(rep.feasible);
            REQUIRE(rep.witness);
            CHECK_FALSE(rep.certificate);
            const auto x = expected_allocation(*rep.witness);
            CHECK(is_prop(inst, x).ok);
            if (e == ExAnte::Ef) CHECK(is_ef(inst, x).ok);
            for (const auto& entry : rep.witness->support()) CHECK(is_po(inst, entry.allocation));
        }
}

TEST_CASE("ex-post candidates") {
    const Instance inst({{r(2), r(1)}, {r(1), r(0)}});
    // Only giving item 0 to agent 1 makes both agents positive.
    const auto mpc = expost_candidates(inst, ExPost::PoMaxPositiveCount);
    REQUIRE(mpc.size() == 1);
    CHECK(mpc[0] == IntegralAllocation(2, {{1}, {0}}));
    CHECK(expost_candidates(inst, ExPost::MaxNash) == mpc);
    CHECK(expost_candidates(inst, ExPost::Leximin) == mpc);
}

TEST_CASE("exante rows and certificate verification") {
    const Instance inst({{r(2), r(1)}, {r(1), r(0)}});
    const auto candidates = expost_candidates(inst, ExPost::MaxNash);
    const auto sys = exante_system(inst, candidates, ExAnte::Prop);
    REQUIRE(sys.labels.size() == 2);
    CHECK(sys.labels[0] == "prop 1");
    CHECK(sys.thresholds[0] == r(3, 2));
    CHECK(sys.coefficients[0][0] == r(1));

    const auto rep = bobw_feasible(inst, ExPost::MaxNash, ExAnte::Prop);
    CHECK_FALSE(rep.feasible);
    REQUIRE(rep.certificate);
    CHECK(verify_certificate(rep.system, *rep.certificate));
    // Tampering breaks it.
    auto bad = *rep.certificate;
    bad.offset += r(1000);
    CHECK_FALSE(verify_certificate(rep.system, bad));
    bad = *rep.certificate;
    for (auto& w : bad.weights) w = -w - r(1);
    CHECK_FALSE(verify_certificate(rep.system, bad));

    const auto ef = exante_system(inst, candidates, ExAnte::Ef);
    CHECK(ef.labels.size() == 2);
    CHECK(ef.labels[0] == "ef 1 over 2");
}
