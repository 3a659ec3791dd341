#pragma once

#include <cstdint>

#include "fairnom/enumerate.hpp"
#include "fairnom/lp.hpp"
#include "fairnom/model.hpp"

namespace fairnom {

/// LP over shares X'[i][j] in [0,1] (variable i*m + j) with column sums <= 1 and
/// alpha * v_i(X'_i) >= v_i(X_i) for every agent; maximizes
/// sum_i alpha * v_i(X'_i). An optimum above sum_i v_i(X_i) exhibits a
/// dominating allocation.
lp::LinearProgram fpo_program(const Instance& inst, const FractionalAllocation& alloc, const Rational& alpha);

/// Fractional Pareto efficiency (alpha-approximate when alpha != 1): no
/// fractional allocation weakly improves every agent, scaled by alpha, with
/// at least one strict improvement.
bool is_fpo(const Instance& inst, const FractionalAllocation& alloc, const Rational& alpha = Rational(1));
bool is_fpo(const Instance& inst, const IntegralAllocation& alloc, const Rational& alpha = Rational(1));

/// Pareto efficiency among integral allocations by exhaustive search.
/// Throws ScaleError when n^m exceeds `cap`.
bool is_po(const Instance& inst, const IntegralAllocation& alloc, const Rational& alpha = Rational(1),
           std::uint64_t cap = default_enumeration_cap());

}  // namespace fairnom
