#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fairnom/audit.hpp"
#include "fairnom/bobw.hpp"
#include "fairnom/model.hpp"

namespace fairnom {

/// Every row in values^items, in odometer order (last item fastest).
std::vector<ValueRow> product_rows(const std::vector<Rational>& values, std::size_t items, bool skip_zero = true);

/// Rows scaled to sum to one, duplicates removed, first occurrence kept.
/// All-zero rows are dropped.
std::vector<ValueRow> normalized_unique(const std::vector<ValueRow>& rows);

/// Opponent profiles realizing every member of EF1(agent, r) for each report r,
/// plus the all-zero row. Against this space the reduction attains its exact
/// worst and best cases for every listed report.
ReportSpace realization_space(std::size_t agent, const std::vector<ValueRow>& reports, std::size_t agents,
                              std::uint64_t cap = default_enumeration_cap());

struct NamedFeasibility {
    std::string expost;
    std::string exante;
    FeasibilityReport report;
};

struct ScenarioResult {
    std::string name;
    std::string claim;
    bool reproduced = false;
    /// An OM witness or an infeasible system turned up.
    bool witness_found = false;
    std::vector<std::pair<std::string, std::string>> facts;
    std::vector<AuditReport> reports;
    std::vector<NamedFeasibility> feasibility;
    std::optional<Instance> instance;
};

std::vector<std::string> scenario_names();

/// Throws std::invalid_argument for an unknown name.
ScenarioResult run_scenario(std::string_view name, const AuditOptions& options = {});

struct WorstCaseGridSummary {
    std::uint64_t pairs = 0;
    std::uint64_t violations = 0;
    std::uint64_t swaps_exercised = 0;
    std::uint64_t swap_value_increases = 0;
    std::uint64_t swap_envy_left = 0;
    std::optional<std::pair<ValueRow, ValueRow>> first_violation;
};

/// compare_worst_cases over every ordered pair of rows, for each listed agent.
WorstCaseGridSummary verify_worst_cases(const std::vector<ValueRow>& rows, std::size_t agents,
                                        const std::vector<std::size_t>& audited,
                                        std::uint64_t cap = default_enumeration_cap());

}  // namespace fairnom
