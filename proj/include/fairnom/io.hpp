#pragma once

// JSON encoding of the domain types. Rationals travel as strings ("3/2");
// agent and item indices are 1-based on the wire.

#include <json.hpp>

#include "fairnom/audit.hpp"
#include "fairnom/bobw.hpp"
#include "fairnom/lottery.hpp"
#include "fairnom/model.hpp"
#include "fairnom/scenarios.hpp"

namespace fairnom::io {

using json = nlohmann::ordered_json;

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Accepts "p/q", decimal strings and JSON integers. Floats are rejected.
Rational to_rational(const json& j);
json from_rational(const Rational& r);

ValueRow to_row(const json& j);
json from_row(std::span<const Rational> row);
/// Comma-separated list, e.g. "3.9,3,2,0.9".
ValueRow parse_row(std::string_view text);

/// {"agents": n, "items": m, "values": [[...], ...]}; agents/items optional.
Instance to_instance(const json& j);
json from_instance(const Instance& inst);

/// {"bundles": [[1, 2], [3]]} or a bare array of bundles, items 1-based.
IntegralAllocation to_allocation(const json& j, std::size_t items);
json from_allocation(const IntegralAllocation& a);

/// {"shares": [[...]]}.
FractionalAllocation to_fractional(const json& j);
json from_fractional(const FractionalAllocation& x);

json from_lottery(const Lottery& lot);
Lottery to_lottery(const json& j, std::size_t items);

/// {"matrix": [[...]]} or a bare square array.
BistochasticMatrix to_matrix(const json& j);
json from_matrix(const std::vector<ValueRow>& m);
json from_terms(const std::vector<PermutationTerm>& terms);

/// {"rows": [...], "profiles": [[row, ...], ...]}.
ReportSpace to_space(const json& j);

json from_report(const AuditReport& r);
json from_feasibility(const FeasibilityReport& r);
json from_scenario(const ScenarioResult& r);
json from_summary(const WorstCaseGridSummary& s);

json read_file(const std::string& path);

}  // namespace fairnom::io
