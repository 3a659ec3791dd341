#include "fairnom/scenarios.hpp"

#include <algorithm>
#include <stdexcept>

#include "fairnom/lottery.hpp"
#include "fairnom/mechanisms.hpp"
#include "fairnom/reduction.hpp"

namespace fairnom {

namespace {

Rational q(std::string_view text) { return Rational::parse(text); }

ValueRow row_of(std::initializer_list<std::string_view> entries) {
    ValueRow out;
    for (auto e : entries) out.push_back(q(e));
    return out;
}

std::vector<Rational> range_over(std::int64_t count, std::int64_t den) {
    std::vector<Rational> out;
    for (std::int64_t k = 0; k <= count; ++k) out.emplace_back(k, den);
    return out;
}

std::vector<ValueRow> permutations_of(std::span<const Rational> truth) {
    ValueRow sorted(truth.begin(), truth.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<ValueRow> out;
    do out.push_back(sorted);
    while (std::next_permutation(sorted.begin(), sorted.end()));
    return out;
}

void fact(ScenarioResult& r, std::string key, const Rational& value) { r.facts.emplace_back(std::move(key), value.to_string()); }
void fact(ScenarioResult& r, std::string key, std::string value) { r.facts.emplace_back(std::move(key), std::move(value)); }

bool any_witness(const std::vector<AuditReport>& reports) {
    return std::any_of(reports.begin(), reports.end(), [](const AuditReport& a) { return a.is_witness(); });
}

void append(std::vector<AuditReport>& to, std::vector<AuditReport> from) {
    for (auto& r : from) to.push_back(std::move(r));
}

ScenarioResult started(std::string name, std::string claim) {
    ScenarioResult r;
    r.name = std::move(name);
    r.claim = std::move(claim);
    return r;
}

const Rational kEpsilon(1, 100);

// Two agents, two items; agent 1 slightly prefers the first item.
ValueRow near_two_thirds() { return {Rational(2, 3) + kEpsilon, Rational(1, 3) - kEpsilon}; }

ReportSpace two_item_line(std::span<const Rational> truth) {
    ReportSpace space;
    for (const auto& x : range_over(300, 300)) space.add_row({x, Rational(1) - x});
    space.add_families(truth, AllFamilies & ~ZeroRow);
    return space;
}

ScenarioResult utilitarian_two_agents(const AuditOptions& options) {
    ScenarioResult r = started("thm4.1", "utilitarian maximizer with two agents is obviously manipulable");
    const ValueRow truth = near_two_thirds();
    const ValueRow lie = {Rational(1), Rational(0)};
    const ReportSpace space = two_item_line(truth);

    auto det = audit_deterministic(utilitarian_mechanism(TieBreakPolicy::SmallestIndex), 0, truth, {lie}, space, 2, options);
    auto lot = audit_randomized([](const Instance& b) { return max_utilitarian_lottery(b); }, 0, truth, {lie}, space, 2,
                                options);
    const Rational low = Rational(1, 3) - kEpsilon;
    fact(r, "epsilon", kEpsilon);
    fact(r, "deterministic.honest_worst", det[0].honest_worst.value);
    fact(r, "deterministic.misreport_worst", det[0].misreport_worst.value);
    fact(r, "lottery.honest_worst", lot[0].honest_worst.value);
    fact(r, "lottery.misreport_worst", lot[0].misreport_worst.value);
    r.reproduced = det[0].honest_worst.value <= low && lot[0].honest_worst.value <= low &&
                   det[0].misreport_worst.value >= Rational(2, 3) + kEpsilon &&
                   lot[0].misreport_worst.value >= Rational(1, 3) + kEpsilon / Rational(2) && det[0].worst_improved() &&
                   lot[0].worst_improved();
    append(r.reports, std::move(det));
    append(r.reports, std::move(lot));
    r.witness_found = any_witness(r.reports);
    return r;
}

ScenarioResult utilitarian_three_agents(const AuditOptions& options) {
    ScenarioResult r = started("thm4.2-nom", "utilitarian maximizer with the first/last tie rule, three agents, is not obviously manipulable");
    const auto grid = normalized_unique(product_rows({Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)}, 3));
    ReportSpace space;
    for (const auto& row : grid) space.add_row(row);
    const auto outcome = deterministic_outcome(utilitarian_mechanism(TieBreakPolicy::FirstLastToLast));
    std::uint64_t pairs = 0;
    for (std::size_t agent = 0; agent < 3; ++agent) {
        auto summary = grid_audit(outcome, agent, grid, space, 3, options);
        pairs += summary.pairs;
        append(r.reports, std::move(summary.witnesses));
    }
    fact(r, "grid_rows", std::to_string(grid.size()));
    fact(r, "pairs_checked", std::to_string(pairs));
    fact(r, "witnesses", std::to_string(r.reports.size()));
    r.witness_found = !r.reports.empty();
    r.reproduced = !r.witness_found;
    return r;
}

ScenarioResult egalitarian_three_agents(const AuditOptions& options) {
    ScenarioResult r = started("thm4.3", "egalitarian maximizer is obviously manipulable");
    const ValueRow truth = row_of({"0.3", "0.3", "0.3", "0.1"});
    const ValueRow lie = row_of({"1/3", "1/3", "1/3", "0"});
    ReportSpace space;
    for (const auto& row : normalized_unique(product_rows({Rational(0), Rational(1), Rational(2)}, 4))) space.add_row(row);
    space.add_row(row_of({"0", "0", "1", "0"}));
    space.add_row(row_of({"0.05", "0.05", "0.9", "0"}));
    space.add_families(truth);

    auto reports = audit_deterministic(egalitarian_mechanism(), 0, truth, {lie}, space, 3, options);
    const auto& a = reports[0];
    fact(r, "honest_worst", a.honest_worst.value);
    fact(r, "misreport_worst", a.misreport_worst.value);
    r.reproduced = a.honest_worst.value == Rational(1, 10) && a.misreport_worst.value == Rational(3, 10);
    r.witness_found = a.is_witness();
    r.reports = std::move(reports);
    return r;
}

ScenarioResult nash_three_agents(const AuditOptions& options) {
    ScenarioResult r = started("thm4.4", "Nash welfare maximizer is obviously manipulable");
    const ValueRow truth = row_of({"3.9", "3", "2", "0.9"});
    const ValueRow lie = row_of({"2", "2", "1", "1"});
    ReportSpace space;
    for (const auto& row : product_rows({Rational(0), Rational(1), Rational(2)}, 4)) {
        const auto support = std::count_if(row.begin(), row.end(), [](const Rational& x) { return x.is_positive(); });
        if (support <= 2) space.add_row(row);
    }
    space.add_families(truth);

    auto reports = audit_deterministic(nash_mechanism(), 0, truth, {lie}, space, 3, options);
    const auto& a = reports[0];
    fact(r, "honest_worst", a.honest_worst.value);
    fact(r, "misreport_worst", a.misreport_worst.value);
    r.reproduced = a.honest_worst.value == Rational(2) && a.misreport_worst.value > Rational(2);
    r.witness_found = a.is_witness();
    r.reports = std::move(reports);
    return r;
}

ScenarioResult positive_count_two_agents(const AuditOptions& options) {
    ScenarioResult r = started("thm6.1", "maximizing the number of agents with positive utility is obviously manipulable");
    const ValueRow truth = near_two_thirds();
    const ValueRow lie = {Rational(1), Rational(0)};
    ReportSpace space = two_item_line(truth);
    space.add_row(ValueRow(2));

    auto det = audit_deterministic(positive_count_mechanism(), 0, truth, {lie}, space, 2, options);
    auto lot = audit_randomized([](const Instance& b) { return uniform_lottery(max_positive_count(b)); }, 0, truth,
                                {lie}, space, 2, options);
    fact(r, "deterministic.honest_worst", det[0].honest_worst.value);
    fact(r, "deterministic.misreport_worst", det[0].misreport_worst.value);
    fact(r, "lottery.honest_worst", lot[0].honest_worst.value);
    fact(r, "lottery.misreport_worst", lot[0].misreport_worst.value);
    r.reproduced = det[0].worst_improved() && lot[0].worst_improved();
    append(r.reports, std::move(det));
    append(r.reports, std::move(lot));
    r.witness_found = any_witness(r.reports);
    return r;
}

ScenarioResult bobw_nonexistence(const AuditOptions& options) {
    ScenarioResult r = started("thm6.2", "ex-ante proportional lotteries over these ex-post efficient allocations need not exist");
    const Instance inst({near_two_thirds(), {Rational(1), Rational(0)}});
    r.instance = inst;
    bool all_infeasible = true;
    for (ExPost p : {ExPost::PoMaxPositiveCount, ExPost::Leximin, ExPost::MaxNash, ExPost::PoEgalitarian}) {
        auto report = bobw_feasible(inst, p, ExAnte::Prop, options.cap);
        all_infeasible = all_infeasible && !report.feasible && report.certificate &&
                         verify_certificate(report.system, *report.certificate);
        fact(r, to_string(p) + "+prop", report.feasible ? "feasible" : "infeasible");
        r.feasibility.push_back({to_string(p), to_string(ExAnte::Prop), std::move(report)});
    }
    r.reproduced = all_infeasible;
    r.witness_found = all_infeasible;
    return r;
}

ScenarioResult round_robin_bounds(const AuditOptions& options) {
    ScenarioResult r = started("thm3.1", "Round-Robin is not obviously manipulable");
    const ValueRow truth = row_of({"9", "7", "4", "2", "1"});
    const std::size_t n = 2;
    ReportSpace space;
    for (const auto& row : permutations_of(truth)) space.add_row(row);
    std::vector<ValueRow> lies = space.rows;
    for (const auto& row : product_rows({Rational(0), Rational(1)}, truth.size())) lies.push_back(row);

    bool closed_forms = true;
    for (std::size_t agent = 0; agent < n; ++agent) {
        auto reports = audit_deterministic(round_robin_mechanism(), agent, truth, lies, space, n, options);
        const auto wb = round_robin_worst_best(truth, agent, n);
        closed_forms = closed_forms && reports[0].honest_worst.value == wb.worst && reports[0].honest_best.value == wb.best;
        fact(r, "agent" + std::to_string(agent + 1) + ".closed_form_worst", wb.worst);
        fact(r, "agent" + std::to_string(agent + 1) + ".closed_form_best", wb.best);
        fact(r, "agent" + std::to_string(agent + 1) + ".honest_worst", reports[0].honest_worst.value);
        fact(r, "agent" + std::to_string(agent + 1) + ".honest_best", reports[0].honest_best.value);
        for (auto& a : reports)
            if (a.is_witness()) r.reports.push_back(std::move(a));
    }
    r.witness_found = !r.reports.empty();
    r.reproduced = closed_forms && !r.witness_found;
    return r;
}

ScenarioResult ps_lottery_nom(const AuditOptions& options) {
    ScenarioResult r = started("thm3.4", "PS-Lottery is not obviously manipulable in expectation");
    const ValueRow truth = row_of({"3", "2", "1"});
    ReportSpace space;
    for (const auto& row : product_rows({Rational(0), Rational(1), Rational(2)}, 3)) space.add_row(row);
    space.add_families(truth);
    const auto lies = product_rows({Rational(0), Rational(1), Rational(2), Rational(3)}, 3);

    auto reports = audit_randomized([](const Instance& b) { return ps_lottery(b); }, 0, truth, lies, space, 2, options);
    // m/n = 3/2: the top item entirely plus half of the next one.
    const Rational best_possible = Rational(3) + Rational(2) / Rational(2);
    fact(r, "honest_worst", reports[0].honest_worst.value);
    fact(r, "honest_best", reports[0].honest_best.value);
    fact(r, "best_possible", best_possible);
    const bool best_ok = reports[0].honest_best.value == best_possible;
    for (auto& a : reports)
        if (a.is_witness()) r.reports.push_back(std::move(a));
    r.witness_found = !r.reports.empty();
    r.reproduced = best_ok && !r.witness_found;
    return r;
}

ScenarioResult ps_lottery_proportional(const AuditOptions& options) {
    ScenarioResult r = started("lemma3.3", "ex-ante proportional mechanisms meet the worst-case guarantee");
    ReportSpace space;
    for (const auto& row : product_rows({Rational(0), Rational(1)}, 4)) space.add_row(row);
    const std::vector<ValueRow> truths = {row_of({"4", "3", "2", "1"}), row_of({"1", "1", "1", "1"}),
                                          row_of({"5", "0", "0", "1"})};
    bool all = true;
    for (std::size_t t = 0; t < truths.size(); ++t) {
        ReportSpace local = space;
        local.add_families(truths[t]);
        const OutcomeTable honest = tabulate(randomized_outcome([](const Instance& b) { return ps_lottery(b); }), 0,
                                             truths[t], local, 3, options);
        const Rational worst = worst_case(honest, truths[t], local, 3).value;
        const Rational share = total_value(truths[t]) / Rational(3);
        fact(r, "truth" + std::to_string(t + 1) + ".honest_worst", worst);
        fact(r, "truth" + std::to_string(t + 1) + ".proportional_share", share);
        all = all && worst >= share;
    }
    r.reproduced = all;
    return r;
}

ScenarioResult reduction_nom(const AuditOptions& options) {
    ScenarioResult r = started("thm5.5", "the reduction with an fPO+EF1 inner algorithm is not obviously manipulable");
    const ValueRow truth = row_of({"3", "2", "1"});
    const std::size_t n = 3;
    auto lies = product_rows({Rational(0), Rational(1), Rational(2)}, 3, false);
    std::vector<ValueRow> reports{truth};
    for (const auto& l : lies) reports.push_back(l);
    const ReportSpace space = realization_space(0, reports, n, options.cap);

    const Mechanism mech = [](const Instance& b) {
        return mechanism_one(b, [](const Instance& x) { return exhaustive_inner(x); });
    };
    auto audited = audit_deterministic(mech, 0, truth, lies, space, n, options);
    fact(r, "profiles", std::to_string(space.profile_count(n - 1)));
    fact(r, "honest_worst", audited[0].honest_worst.value);
    fact(r, "honest_best", audited[0].honest_best.value);
    for (auto& a : audited)
        if (a.is_witness()) r.reports.push_back(std::move(a));
    r.witness_found = !r.reports.empty();
    r.reproduced = !r.witness_found;
    return r;
}

}  // namespace

std::vector<ValueRow> product_rows(const std::vector<Rational>& values, std::size_t items, bool skip_zero) {
    std::vector<std::vector<std::size_t>> choices(items);
    for (auto& c : choices)
        for (std::size_t k = 0; k < values.size(); ++k) c.push_back(k);
    std::vector<ValueRow> out;
    for_each_assignment(choices, [&](std::span<const std::size_t> pick) {
        ValueRow row;
        bool zero = true;
        for (std::size_t k : pick) {
            row.push_back(values[k]);
            zero = zero && values[k].is_zero();
        }
        if (!(skip_zero && zero)) out.push_back(std::move(row));
        return true;
    });
    return out;
}

std::vector<ValueRow> normalized_unique(const std::vector<ValueRow>& rows) {
    std::vector<ValueRow> out;
    for (const auto& row : rows) {
        if (total_value(row).is_zero()) continue;
        ValueRow n = normalize_row(row);
        if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(std::move(n));
    }
    return out;
}

ReportSpace realization_space(std::size_t agent, const std::vector<ValueRow>& reports, std::size_t agents,
                              std::uint64_t cap) {
    ReportSpace space;
    if (reports.empty()) return space;
    space.add_row(ValueRow(reports.front().size()));
    for (const auto& b : reports)
        for (const auto& a : ef1_set(agent, b, agents, cap)) space.add_profile(realize_allocation(agent, b, a));
    return space;
}

std::vector<std::string> scenario_names() {
    return {"thm3.1", "lemma3.3", "thm3.4", "thm4.1", "thm4.2-nom", "thm4.3", "thm4.4", "thm5.5", "thm6.1", "thm6.2"};
}

ScenarioResult run_scenario(std::string_view name, const AuditOptions& options) {
    if (name == "thm3.1") return round_robin_bounds(options);
    if (name == "lemma3.3") return ps_lottery_proportional(options);
    if (name == "thm3.4") return ps_lottery_nom(options);
    if (name == "thm4.1") return utilitarian_two_agents(options);
    if (name == "thm4.2-nom") return utilitarian_three_agents(options);
    if (name == "thm4.3") return egalitarian_three_agents(options);
    if (name == "thm4.4") return nash_three_agents(options);
    if (name == "thm5.5") return reduction_nom(options);
    if (name == "thm6.1") return positive_count_two_agents(options);
    if (name == "thm6.2") return bobw_nonexistence(options);
    throw std::invalid_argument("unknown scenario: " + std::string(name));
}

WorstCaseGridSummary verify_worst_cases(const std::vector<ValueRow>& rows, std::size_t agents,
                                        const std::vector<std::size_t>& audited, std::uint64_t cap) {
    WorstCaseGridSummary s;
    for (std::size_t agent : audited)
        for (const auto& v : rows)
            for (const auto& w : rows) {
                const auto c = compare_worst_cases(agent, v, w, agents, cap);
                ++s.pairs;
                if (!c.holds) {
                    ++s.violations;
                    if (!s.first_violation) s.first_violation = {v, w};
                }
                if (c.swapped) {
                    ++s.swaps_exercised;
                    if (!c.swap_keeps_value) ++s.swap_value_increases;
                    if (!c.swap_removes_envy) ++s.swap_envy_left;
                }
            }
    return s;
}

}  // namespace fairnom
