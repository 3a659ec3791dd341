#include "fairnom/io.hpp"

#include <fstream>

namespace fairnom::io {

namespace {

std::size_t to_index(const json& j, std::size_t limit, const char* what) {
    if (!j.is_number_integer()) throw FormatError(std::string(what) + " must be an integer");
    const auto k = j.get<std::int64_t>();
    if (k < 1 || static_cast<std::uint64_t>(k) > limit)
        throw FormatError(std::string(what) + " " + std::to_string(k) + " out of range 1.." + std::to_string(limit));
    return static_cast<std::size_t>(k - 1);
}

const json& field_or_self(const json& j, const char* key) {
    if (j.is_object()) {
        if (!j.contains(key)) throw FormatError(std::string("missing \"") + key + "\"");
        return j.at(key);
    }
    return j;
}

json from_extreme(const Extreme& e) {
    json rows = json::array();
    for (const auto& r : e.opponents) rows.push_back(from_row(r));
    return {{"value", from_rational(e.value)}, {"profile_index", e.index}, {"opponents", rows}};
}

}  // namespace

Rational to_rational(const json& j) {
    if (j.is_string()) {
        try {
            return Rational::parse(j.get<std::string>());
        } catch (const std::exception& e) {
            throw FormatError(e.what());
        }
    }
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_number_float()) throw FormatError("write non-integer values as strings (\"39/10\" or \"3.9\")");
    throw FormatError("expected a rational, got " + j.dump());
}

json from_rational(const Rational& r) { return r.to_string(); }

ValueRow to_row(const json& j) {
    if (!j.is_array()) throw FormatError("expected an array of values");
    ValueRow row;
    for (const auto& x : j) row.push_back(to_rational(x));
    return row;
}

json from_row(std::span<const Rational> row) {
    json out = json::array();
    for (const auto& x : row) out.push_back(from_rational(x));
    return out;
}

ValueRow parse_row(std::string_view text) {
    ValueRow row;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string_view piece = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        try {
            row.push_back(Rational::parse(piece));
        } catch (const std::exception& e) {
            throw FormatError(e.what());
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return row;
}

Instance to_instance(const json& j) {
    std::vector<ValueRow> rows;
    for (const auto& r : field_or_self(j, "values")) rows.push_back(to_row(r));
    if (j.is_object() && (j.contains("agents") || j.contains("items"))) {
        const std::size_t n = j.value("agents", rows.size());
        const std::size_t m = j.value("items", rows.empty() ? std::size_t{0} : rows.front().size());
        return Instance(n, m, std::move(rows));
    }
    return Instance(std::move(rows));
}

json from_instance(const Instance& inst) {
    json values = json::array();
    for (const auto& r : inst.values()) values.push_back(from_row(r));
    return {{"agents", inst.agents()}, {"items", inst.items()}, {"values", values}};
}

IntegralAllocation to_allocation(const json& j, std::size_t items) {
    std::vector<Bundle> bundles;
    for (const auto& b : field_or_self(j, "bundles")) {
        if (!b.is_array()) throw FormatError("each bundle must be an array of item numbers");
        Bundle bundle;
        for (const auto& g : b) bundle.push_back(to_index(g, items, "item"));
        bundles.push_back(std::move(bundle));
    }
    return IntegralAllocation(items, std::move(bundles));
}

json from_allocation(const IntegralAllocation& a) {
    json bundles = json::array();
    for (const auto& b : a.bundles()) {
        json items = json::array();
        for (std::size_t g : b) items.push_back(g + 1);
        bundles.push_back(items);
    }
    json unallocated = json::array();
    for (std::size_t g : a.unallocated()) unallocated.push_back(g + 1);
    return {{"bundles", bundles}, {"unallocated", unallocated}};
}

FractionalAllocation to_fractional(const json& j) {
    std::vector<ValueRow> rows;
    for (const auto& r : field_or_self(j, "shares")) rows.push_back(to_row(r));
    return FractionalAllocation(std::move(rows));
}

json from_fractional(const FractionalAllocation& x) {
    json rows = json::array();
    for (const auto& r : x.shares()) rows.push_back(from_row(r));
    return {{"shares", rows}};
}

json from_lottery(const Lottery& lot) {
    json support = json::array();
    for (const auto& e : lot.support())
        support.push_back({{"prob", from_rational(e.probability)}, {"alloc", from_allocation(e.allocation)}});
    return {{"support", support}};
}

Lottery to_lottery(const json& j, std::size_t items) {
    std::vector<LotteryEntry> support;
    for (const auto& e : field_or_self(j, "support"))
        support.push_back({to_rational(e.at("prob")), to_allocation(e.at("alloc"), items)});
    return Lottery(std::move(support));
}

BistochasticMatrix to_matrix(const json& j) {
    std::vector<ValueRow> rows;
    for (const auto& r : field_or_self(j, "matrix")) rows.push_back(to_row(r));
    return BistochasticMatrix(std::move(rows));
}

json from_matrix(const std::vector<ValueRow>& m) {
    json rows = json::array();
    for (const auto& r : m) rows.push_back(from_row(r));
    return rows;
}

json from_terms(const std::vector<PermutationTerm>& terms) {
    json out = json::array();
    for (const auto& t : terms) {
        json perm = json::array();
        for (std::size_t c : t.perm) perm.push_back(c + 1);
        out.push_back({{"weight", from_rational(t.weight)}, {"perm", perm}});
    }
    return out;
}

ReportSpace to_space(const json& j) {
    ReportSpace space;
    if (j.is_array()) {
        for (const auto& r : j) space.add_row(to_row(r));
        return space;
    }
    if (j.contains("rows"))
        for (const auto& r : j.at("rows")) space.add_row(to_row(r));
    if (j.contains("profiles"))
        for (const auto& p : j.at("profiles")) {
            std::vector<ValueRow> opponents;
            for (const auto& r : p) opponents.push_back(to_row(r));
            space.add_profile(std::move(opponents));
        }
    return space;
}

json from_report(const AuditReport& r) {
    return {{"agent", r.agent + 1},
            {"truth", from_row(r.truth)},
            {"misreport", from_row(r.misreport)},
            {"verdict", r.verdict()},
            {"honest_worst", from_extreme(r.honest_worst)},
            {"honest_best", from_extreme(r.honest_best)},
            {"misreport_worst", from_extreme(r.misreport_worst)},
            {"misreport_best", from_extreme(r.misreport_best)}};
}

json from_feasibility(const FeasibilityReport& r) {
    json candidates = json::array();
    for (const auto& a : r.candidates) candidates.push_back(from_allocation(a));
    json out = {{"feasible", r.feasible}, {"candidates", candidates}};
    if (r.witness) out["witness"] = from_lottery(*r.witness);
    if (r.certificate) {
        json weights = json::object();
        for (std::size_t k = 0; k < r.certificate->weights.size(); ++k)
            weights[r.system.labels[k]] = from_rational(r.certificate->weights[k]);
        out["certificate"] = {{"weights", weights},
                              {"offset", from_rational(r.certificate->offset)},
                              {"verified", verify_certificate(r.system, *r.certificate)}};
    }
    return out;
}

json from_scenario(const ScenarioResult& r) {
    json facts = json::object();
    for (const auto& [k, v] : r.facts) facts[k] = v;
    json out = {{"scenario", r.name},
                {"claim", r.claim},
                {"reproduced", r.reproduced},
                {"witness_found", r.witness_found},
                {"facts", facts}};
    if (r.instance) out["instance"] = from_instance(*r.instance);
    if (!r.reports.empty()) {
        json reports = json::array();
        for (const auto& a : r.reports) reports.push_back(from_report(a));
        out["reports"] = reports;
    }
    if (!r.feasibility.empty()) {
        json feas = json::array();
        for (const auto& f : r.feasibility) {
            json entry = from_feasibility(f.report);
            entry["expost"] = f.expost;
            entry["exante"] = f.exante;
            feas.push_back(entry);
        }
        out["feasibility"] = feas;
    }
    return out;
}

json from_summary(const WorstCaseGridSummary& s) {
    json out = {{"pairs", s.pairs},
                {"violations", s.violations},
                {"swaps_exercised", s.swaps_exercised},
                {"swap_value_increases", s.swap_value_increases},
                {"swap_envy_left", s.swap_envy_left}};
    if (s.first_violation)
        out["first_violation"] = {{"v", from_row(s.first_violation->first)}, {"v_prime", from_row(s.first_violation->second)}};
    return out;
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

}  // namespace fairnom::io
