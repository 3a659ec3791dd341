#include "fairnom/audit.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <numeric>
#include <thread>

#include "fairnom/reduction.hpp"

namespace fairnom {

namespace {

void require_row(std::span<const Rational> row, std::size_t items) {
    if (row.size() != items) throw DimensionError("report row has the wrong number of items");
}

// Runs body(k) for k in [0, count) on up to `threads` workers. Results are
// written by index, so the schedule cannot influence them.
template <class Body>
void parallel_for(std::uint64_t count, unsigned threads, Body body) {
    const std::uint64_t workers = std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, count));
    if (workers <= 1) {
        for (std::uint64_t k = 0; k < count; ++k) body(k);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::uint64_t k = w; k < count; k += workers) body(k);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

template <class Better>
Extreme extreme(const OutcomeTable& table, std::span<const Rational> truth, const ReportSpace& space,
                std::size_t agents, Better better) {
    if (table.distinct.empty()) throw InvariantError("report space holds no opponent profiles");
    std::uint64_t best_index = table.distinct[0].second;
    Rational best_value = share_value(truth, table.distinct[0].first);
    for (std::size_t k = 1; k < table.distinct.size(); ++k) {
        Rational u = share_value(truth, table.distinct[k].first);
        if (better(u, best_value) || (u == best_value && table.distinct[k].second < best_index)) {
            best_value = std::move(u);
            best_index = table.distinct[k].second;
        }
    }
    return {std::move(best_value), best_index, space.profile(best_index, agents - 1)};
}

}  // namespace

void ReportSpace::add_row(ValueRow row) {
    if (!rows.empty() && rows.front().size() != row.size()) throw DimensionError("report rows differ in length");
    if (std::find(rows.begin(), rows.end(), row) == rows.end()) rows.push_back(std::move(row));
}

void ReportSpace::add_profile(std::vector<ValueRow> opponents) {
    if (!profiles.empty() && profiles.front().size() != opponents.size())
        throw DimensionError("explicit profiles differ in opponent count");
    if (std::find(profiles.begin(), profiles.end(), opponents) == profiles.end())
        profiles.push_back(std::move(opponents));
}

ValueRow opposite_order(std::span<const Rational> truth) {
    const std::size_t m = truth.size();
    std::vector<std::size_t> rank(m);
    std::iota(rank.begin(), rank.end(), std::size_t{0});
    std::stable_sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) { return truth[a] > truth[b]; });
    ValueRow out(m);
    for (std::size_t k = 0; k < m; ++k) out[rank[k]] = truth[rank[m - 1 - k]];
    return out;
}

void ReportSpace::add_families(std::span<const Rational> truth, unsigned families) {
    const std::size_t m = truth.size();
    if (families & SameOrder) add_row(ValueRow(truth.begin(), truth.end()));
    if (families & OppositeOrder) add_row(opposite_order(truth));
    if (families & UnitVectors)
        for (std::size_t j = 0; j < m; ++j) {
            ValueRow e(m);
            e[j] = Rational(1);
            add_row(std::move(e));
        }
    if (families & ZeroRow) add_row(ValueRow(m));
}

std::uint64_t ReportSpace::profile_count(std::size_t opponents) const {
    std::vector<std::size_t> counts(opponents, rows.size());
    std::uint64_t product = rows.empty() && opponents > 0 ? 0 : count_assignments(counts);
    return product + profiles.size();
}

std::vector<ValueRow> ReportSpace::profile(std::uint64_t index, std::size_t opponents) const {
    std::vector<std::size_t> counts(opponents, rows.size());
    const std::uint64_t product = rows.empty() && opponents > 0 ? 0 : count_assignments(counts);
    if (index >= product) {
        const auto& p = profiles.at(index - product);
        if (p.size() != opponents) throw DimensionError("explicit profile has the wrong opponent count");
        return p;
    }
    std::vector<ValueRow> out(opponents);
    for (std::size_t k = opponents; k-- > 0;) {
        out[k] = rows[index % rows.size()];
        index /= rows.size();
    }
    return out;
}

OutcomeFn deterministic_outcome(Mechanism mech) {
    return [mech = std::move(mech)](const Instance& bids, std::size_t agent) {
        const IntegralAllocation a = mech(bids);
        ValueRow shares(bids.items());
        for (std::size_t g : a.bundle(agent)) shares[g] = Rational(1);
        return shares;
    };
}

OutcomeFn randomized_outcome(RandomizedMechanism mech) {
    return [mech = std::move(mech)](const Instance& bids, std::size_t agent) {
        return expected_allocation(mech(bids)).row(agent);
    };
}

OutcomeTable tabulate(const OutcomeFn& outcome, std::size_t agent, std::span<const Rational> report,
                      const ReportSpace& space, std::size_t agents, const AuditOptions& options) {
    if (agents == 0 || agent >= agents) throw std::out_of_range("audited agent out of range");
    const std::size_t m = report.size();
    for (const auto& r : space.rows) require_row(r, m);
    const std::uint64_t count = space.profile_count(agents - 1);
    require_within_cap(count, options.cap, "opponent profile enumeration");

    OutcomeTable table;
    table.agent = agent;
    table.report.assign(report.begin(), report.end());
    table.shares.resize(count);
    parallel_for(count, options.threads, [&](std::uint64_t k) {
        const Instance bids = assemble_profile(agent, report, space.profile(k, agents - 1));
        table.shares[k] = outcome(bids, agent);
    });
    std::map<ValueRow, std::uint64_t> first_seen;
    for (std::uint64_t k = 0; k < count; ++k) first_seen.try_emplace(table.shares[k], k);
    for (auto& [shares, k] : first_seen) table.distinct.emplace_back(shares, k);
    return table;
}

Extreme worst_case(const OutcomeTable& table, std::span<const Rational> truth, const ReportSpace& space,
                   std::size_t agents) {
    return extreme(table, truth, space, agents, [](const Rational& a, const Rational& b) { return a < b; });
}

Extreme best_case(const OutcomeTable& table, std::span<const Rational> truth, const ReportSpace& space,
                  std::size_t agents) {
    return extreme(table, truth, space, agents, [](const Rational& a, const Rational& b) { return a > b; });
}

std::string AuditReport::verdict() const {
    if (worst_improved() && best_improved()) return "OMWitness(worst,best)";
    if (worst_improved()) return "OMWitness(worst)";
    if (best_improved()) return "OMWitness(best)";
    return "GridNOM";
}

AuditReport compare(std::size_t agent, std::span<const Rational> truth, const OutcomeTable& honest,
                    const OutcomeTable& lie, const ReportSpace& space, std::size_t agents) {
    AuditReport r;
    r.agent = agent;
    r.truth.assign(truth.begin(), truth.end());
    r.misreport = lie.report;
    r.honest_worst = worst_case(honest, truth, space, agents);
    r.honest_best = best_case(honest, truth, space, agents);
    r.misreport_worst = worst_case(lie, truth, space, agents);
    r.misreport_best = best_case(lie, truth, space, agents);
    return r;
}

std::vector<AuditReport> audit(const OutcomeFn& outcome, std::size_t agent, std::span<const Rational> truth,
                               const std::vector<ValueRow>& misreports, const ReportSpace& space, std::size_t agents,
                               const AuditOptions& options) {
    const OutcomeTable honest = tabulate(outcome, agent, truth, space, agents, options);
    std::vector<AuditReport> out;
    out.reserve(misreports.size());
    for (const auto& b : misreports) {
        require_row(b, truth.size());
        out.push_back(compare(agent, truth, honest, tabulate(outcome, agent, b, space, agents, options), space, agents));
    }
    return out;
}

std::vector<AuditReport> audit_deterministic(const Mechanism& mech, std::size_t agent, std::span<const Rational> truth,
                                             const std::vector<ValueRow>& misreports, const ReportSpace& space,
                                             std::size_t agents, const AuditOptions& options) {
    return audit(deterministic_outcome(mech), agent, truth, misreports, space, agents, options);
}

std::vector<AuditReport> audit_randomized(const RandomizedMechanism& mech, std::size_t agent,
                                          std::span<const Rational> truth, const std::vector<ValueRow>& misreports,
                                          const ReportSpace& space, std::size_t agents, const AuditOptions& options) {
    return audit(randomized_outcome(mech), agent, truth, misreports, space, agents, options);
}

GridAuditSummary grid_audit(const OutcomeFn& outcome, std::size_t agent, const std::vector<ValueRow>& reports,
                            const ReportSpace& space, std::size_t agents, const AuditOptions& options) {
    std::vector<OutcomeTable> tables;
    tables.reserve(reports.size());
    for (const auto& r : reports) tables.push_back(tabulate(outcome, agent, r, space, agents, options));

    GridAuditSummary summary;
    for (std::size_t t = 0; t < reports.size(); ++t) {
        const auto& truth = reports[t];
        const Rational honest_worst = worst_case(tables[t], truth, space, agents).value;
        const Rational honest_best = best_case(tables[t], truth, space, agents).value;
        for (std::size_t b = 0; b < reports.size(); ++b) {
            if (b == t) continue;
            ++summary.pairs;
            // Cheap screen first; only witnesses get the full report.
            if (worst_case(tables[b], truth, space, agents).value > honest_worst ||
                best_case(tables[b], truth, space, agents).value > honest_best)
                summary.witnesses.push_back(compare(agent, truth, tables[t], tables[b], space, agents));
        }
    }
    return summary;
}

}  // namespace fairnom
