#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairnom/enumerate.hpp"
#include "fairnom/model.hpp"

namespace fairnom {

enum class ExPost { PoMaxPositiveCount, Leximin, MaxNash, PoEgalitarian };
enum class ExAnte { Prop, Ef };

std::string to_string(ExPost p);
std::string to_string(ExAnte p);

/// Every integral allocation satisfying the ex-post predicate, in owner-vector order.
std::vector<IntegralAllocation> expost_candidates(const Instance& inst, ExPost predicate,
                                                  std::uint64_t cap = default_enumeration_cap());

/// Ex-ante requirement written as rows: sum_z p_z * coefficients[k][z] >= thresholds[k].
struct ExAnteSystem {
    std::vector<std::vector<Rational>> coefficients;
    std::vector<Rational> thresholds;
    std::vector<std::string> labels;
};

ExAnteSystem exante_system(const Instance& inst, const std::vector<IntegralAllocation>& candidates, ExAnte predicate);

/// Farkas multipliers: weights >= 0 on the ex-ante rows and a free offset on the
/// sum-to-one row such that every candidate column scores <= 0 while the
/// right-hand side scores > 0. No distribution can then meet all rows.
struct InfeasibilityCertificate {
    std::vector<Rational> weights;
    Rational offset;
};

bool verify_certificate(const ExAnteSystem& system, const InfeasibilityCertificate& cert);

struct FeasibilityReport {
    bool feasible = false;
    std::vector<IntegralAllocation> candidates;
    ExAnteSystem system;
    std::optional<Lottery> witness;
    std::optional<InfeasibilityCertificate> certificate;
};

FeasibilityReport bobw_feasible(const Instance& inst, ExPost expost, ExAnte exante,
                                std::uint64_t cap = default_enumeration_cap());

}  // namespace fairnom
