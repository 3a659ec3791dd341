#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fairnom/enumerate.hpp"
#include "fairnom/mechanisms.hpp"
#include "fairnom/model.hpp"

namespace fairnom {

/// Structural report families appended relative to an agent's true row.
enum Family : unsigned {
    SameOrder = 1u,      // the true row itself
    OppositeOrder = 2u,  // the true values reassigned in reversed rank order
    UnitVectors = 4u,    // all-in-one-item rows
    ZeroRow = 8u,
    AllFamilies = 15u,
};

/// Finite set of opponent profiles: every opponent independently picks a row
/// from `rows`, plus explicitly listed full opponent profiles.
struct ReportSpace {
    std::vector<ValueRow> rows;
    std::vector<std::vector<ValueRow>> profiles;

    /// Appends unless an identical row is already present.
    void add_row(ValueRow row);
    void add_profile(std::vector<ValueRow> opponents);
    void add_families(std::span<const Rational> truth, unsigned families = AllFamilies);

    [[nodiscard]] std::uint64_t profile_count(std::size_t opponents) const;
    /// Profiles are numbered product-first (last opponent varies fastest),
    /// then the explicit ones in insertion order.
    [[nodiscard]] std::vector<ValueRow> profile(std::uint64_t index, std::size_t opponents) const;
};

ValueRow opposite_order(std::span<const Rational> truth);

/// Agent's (expected) share vector under a reported profile.
using OutcomeFn = std::function<ValueRow(const Instance&, std::size_t agent)>;
OutcomeFn deterministic_outcome(Mechanism mech);
OutcomeFn randomized_outcome(RandomizedMechanism mech);

struct AuditOptions {
    unsigned threads = 1;
    std::uint64_t cap = default_enumeration_cap();
};

/// Outcome for one report of the audited agent against every profile of a space.
struct OutcomeTable {
    std::size_t agent = 0;
    ValueRow report;
    std::vector<ValueRow> shares;  // indexed by profile number
    /// Distinct share vectors with the first profile producing each.
    std::vector<std::pair<ValueRow, std::uint64_t>> distinct;
};

OutcomeTable tabulate(const OutcomeFn& outcome, std::size_t agent, std::span<const Rational> report,
                      const ReportSpace& space, std::size_t agents, const AuditOptions& options = {});

struct Extreme {
    Rational value;
    std::uint64_t index = 0;           // profile number in the space
    std::vector<ValueRow> opponents;   // the extremizing opponent rows
};

/// Lowest-numbered profile attaining the min / max of truth-valued utility.
Extreme worst_case(const OutcomeTable& table, std::span<const Rational> truth, const ReportSpace& space,
                   std::size_t agents);
Extreme best_case(const OutcomeTable& table, std::span<const Rational> truth, const ReportSpace& space,
                  std::size_t agents);

struct AuditReport {
    std::size_t agent = 0;
    ValueRow truth;
    ValueRow misreport;
    Extreme honest_worst;
    Extreme honest_best;
    Extreme misreport_worst;
    Extreme misreport_best;

    [[nodiscard]] bool worst_improved() const { return misreport_worst.value > honest_worst.value; }
    [[nodiscard]] bool best_improved() const { return misreport_best.value > honest_best.value; }
    [[nodiscard]] bool is_witness() const { return worst_improved() || best_improved(); }
    /// "GridNOM", "OMWitness(worst)", "OMWitness(best)" or "OMWitness(worst,best)".
    [[nodiscard]] std::string verdict() const;
};

AuditReport compare(std::size_t agent, std::span<const Rational> truth, const OutcomeTable& honest,
                    const OutcomeTable& lie, const ReportSpace& space, std::size_t agents);

std::vector<AuditReport> audit(const OutcomeFn& outcome, std::size_t agent, std::span<const Rational> truth,
                               const std::vector<ValueRow>& misreports, const ReportSpace& space, std::size_t agents,
                               const AuditOptions& options = {});

/// Utility is the holder's value of her integral bundle.
std::vector<AuditReport> audit_deterministic(const Mechanism& mech, std::size_t agent, std::span<const Rational> truth,
                                             const std::vector<ValueRow>& misreports, const ReportSpace& space,
                                             std::size_t agents, const AuditOptions& options = {});
/// Utility is the expected value of the lottery's expected allocation.
std::vector<AuditReport> audit_randomized(const RandomizedMechanism& mech, std::size_t agent,
                                          std::span<const Rational> truth, const std::vector<ValueRow>& misreports,
                                          const ReportSpace& space, std::size_t agents,
                                          const AuditOptions& options = {});

struct GridAuditSummary {
    std::uint64_t pairs = 0;
    std::vector<AuditReport> witnesses;
};

/// Every (truth, misreport) pair drawn from `reports`, opponents from `space`.
/// Each report is tabulated once, so the mechanism runs |reports| * |space|
/// times regardless of the number of pairs.
GridAuditSummary grid_audit(const OutcomeFn& outcome, std::size_t agent, const std::vector<ValueRow>& reports,
                            const ReportSpace& space, std::size_t agents, const AuditOptions& options = {});

}  // namespace fairnom
