#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fairnom/model.hpp"
#include "fairnom/rational.hpp"

namespace fairnom::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Sense { Maximize, Minimize };
enum class Status { Optimal, Infeasible, Unbounded };

struct Constraint {
    ValueRow coefficients;
    Relation relation = Relation::LessEqual;
    Rational rhs;
};

/// Missing lower bound means -infinity, missing upper bound +infinity.
struct Bound {
    std::optional<Rational> lower = Rational(0);
    std::optional<Rational> upper;

    static Bound free() { return {std::nullopt, std::nullopt}; }
    static Bound between(Rational lo, Rational hi) { return {std::move(lo), std::move(hi)}; }
};

struct LinearProgram {
    Sense sense = Sense::Maximize;
    ValueRow objective;
    std::vector<Constraint> constraints;
    std::vector<Bound> bounds;  // empty means every variable is >= 0

    [[nodiscard]] std::size_t variables() const { return objective.size(); }
    void add(ValueRow coefficients, Relation rel, Rational rhs) {
        constraints.push_back({std::move(coefficients), rel, std::move(rhs)});
    }
};

struct Result {
    Status status = Status::Infeasible;
    std::optional<Rational> optimum;
    std::optional<ValueRow> solution;
};

/// Two-phase primal simplex over exact rationals with Bland's rule.
/// Throws DimensionError on a malformed program.
Result solve(const LinearProgram& program);

/// True iff `x` satisfies every constraint and bound of `program` exactly.
bool satisfies(const LinearProgram& program, const ValueRow& x);
Rational objective_value(const LinearProgram& program, const ValueRow& x);

}  // namespace fairnom::lp
