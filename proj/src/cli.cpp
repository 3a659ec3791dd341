#include "fairnom/cli.hpp"

#include <CLI11.hpp>
#include <iomanip>
#include <ostream>

#include "fairnom/checkers.hpp"
#include "fairnom/efficiency.hpp"
#include "fairnom/io.hpp"
#include "fairnom/lottery.hpp"
#include "fairnom/mechanisms.hpp"
#include "fairnom/reduction.hpp"
#include "fairnom/scenarios.hpp"

namespace fairnom::cli {

namespace {

using io::json;

struct Globals {
    bool pretty = false;
    unsigned threads = 1;
    std::uint64_t cap = 0;
};

// Thrown for invalid flag combinations found after parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(std::ostream& out, const json& j, const Globals& g) { out << j.dump(g.pretty ? 2 : -1) << '\n'; }

std::vector<std::size_t> parse_order(const std::string& text, std::size_t agents) {
    std::vector<std::size_t> order;
    for (const auto& x : io::parse_row(text)) {
        if (!x.is_integer() || x < Rational(1) || x > Rational(static_cast<std::int64_t>(agents)))
            throw UsageError("--order must list agent numbers 1.." + std::to_string(agents));
        order.push_back(static_cast<std::size_t>(std::stoul(x.to_string())) - 1);
    }
    return order;
}

TieBreakPolicy parse_tie(const std::string& tie) {
    if (tie == "theorem42") return TieBreakPolicy::FirstLastToLast;
    if (tie == "smallest") return TieBreakPolicy::SmallestIndex;
    if (tie == "lex") return TieBreakPolicy::LexAllocation;
    throw UsageError("unknown tie rule: " + tie);
}

json utilities_of(const Instance& inst, const IntegralAllocation& a) {
    json u = json::array();
    for (std::size_t i = 0; i < inst.agents(); ++i) u.push_back(io::from_rational(utility(inst, i, a.bundle(i))));
    return u;
}

json utilities_of(const Instance& inst, const FractionalAllocation& x) {
    json u = json::array();
    for (std::size_t i = 0; i < inst.agents(); ++i) u.push_back(io::from_rational(utility(inst, i, x)));
    return u;
}

json envy_json(const EnvyReport& r) {
    json out = {{"ok", r.ok}};
    if (r.witness) {
        out["witness"] = {{"agent", r.witness->agent + 1}};
        if (r.witness->envied) out["witness"]["envied"] = *r.witness->envied + 1;
    }
    return out;
}

InnerAlgorithm inner_named(const std::string& name, std::uint64_t cap) {
    if (name != "exhaustive") throw UsageError("unknown inner algorithm: " + name);
    return [cap](const Instance& b) { return exhaustive_inner(b, cap); };
}

std::optional<Mechanism> deterministic_named(const std::string& name, TieBreakPolicy tie, std::uint64_t cap) {
    if (name == "round-robin") return round_robin_mechanism();
    if (name == "util") return utilitarian_mechanism(tie == TieBreakPolicy::LexAllocation ? TieBreakPolicy::SmallestIndex : tie);
    if (name == "egal") return Mechanism([cap](const Instance& b) { return select_lex(max_egalitarian(b, cap)); });
    if (name == "nash") return Mechanism([cap](const Instance& b) { return select_lex(max_nash(b, cap)); });
    if (name == "leximin") return Mechanism([cap](const Instance& b) { return select_lex(leximin(b, cap)); });
    if (name == "max-positive-count")
        return Mechanism([cap](const Instance& b) { return select_lex(max_positive_count(b, cap)); });
    if (name == "reduction") {
        auto inner = inner_named("exhaustive", cap);
        return Mechanism([inner](const Instance& b) { return mechanism_one(b, inner); });
    }
    return std::nullopt;
}

std::optional<RandomizedMechanism> randomized_named(const std::string& name, std::uint64_t cap) {
    if (name == "ps-lottery") return RandomizedMechanism([](const Instance& b) { return ps_lottery(b); });
    if (name == "util-lottery")
        return RandomizedMechanism([cap](const Instance& b) { return max_utilitarian_lottery(b, cap); });
    if (name == "max-positive-count-lottery")
        return RandomizedMechanism([cap](const Instance& b) { return uniform_lottery(max_positive_count(b, cap)); });
    return std::nullopt;
}

// ------------------------------------------------------------------ solve

struct SolveArgs {
    std::string mechanism;
    std::string instance;
    std::string order;
    std::string tie = "theorem42";
    std::string inner = "exhaustive";
    std::optional<std::uint64_t> seed;
    bool full_lottery = false;
    bool all_optimal = false;
};

int solve(const SolveArgs& a, const Globals& g, std::ostream& out) {
    const Instance inst = io::to_instance(io::read_file(a.instance));
    json result = {{"mechanism", a.mechanism}};

    auto integral = [&](const IntegralAllocation& alloc) {
        result["allocation"] = io::from_allocation(alloc);
        result["utilities"] = utilities_of(inst, alloc);
    };
    auto optimal_set = [&](const std::vector<IntegralAllocation>& set) {
        integral(select_lex(set));
        result["optimal_count"] = set.size();
        if (a.all_optimal) {
            json all = json::array();
            for (const auto& s : set) all.push_back(io::from_allocation(s));
            result["optimal"] = all;
        }
    };
    auto lottery = [&](const Lottery& lot) {
        const auto expected = expected_allocation(lot);
        if (a.full_lottery || !a.seed) result["lottery"] = io::from_lottery(lot);
        result["expected"] = io::from_fractional(expected);
        result["expected_utilities"] = utilities_of(inst, expected);
        if (a.seed) {
            result["seed"] = *a.seed;
            result["sample"] = io::from_allocation(sample(lot, *a.seed));
        }
    };

    if (a.mechanism == "round-robin") {
        integral(a.order.empty() ? round_robin(inst) : round_robin(inst, parse_order(a.order, inst.agents())));
    } else if (a.mechanism == "util") {
        const auto tie = parse_tie(a.tie);
        const auto r = max_utilitarian(inst, tie == TieBreakPolicy::LexAllocation ? TieBreakPolicy::SmallestIndex : tie);
        integral(r.allocation);
        result["normalized"] = r.normalized;
    } else if (a.mechanism == "util-lottery") {
        lottery(max_utilitarian_lottery(inst, g.cap));
    } else if (a.mechanism == "egal") {
        optimal_set(max_egalitarian(inst, g.cap));
    } else if (a.mechanism == "nash") {
        optimal_set(max_nash(inst, g.cap));
    } else if (a.mechanism == "leximin") {
        optimal_set(leximin(inst, g.cap));
    } else if (a.mechanism == "max-positive-count") {
        optimal_set(max_positive_count(inst, g.cap));
    } else if (a.mechanism == "ps") {
        const auto ps = probabilistic_serial(inst);
        result["allocation"] = io::from_fractional(ps.allocation);
        result["utilities"] = utilities_of(inst, ps.allocation);
        json schedule = json::array();
        for (const auto& segs : ps.schedule.segments) {
            json row = json::array();
            for (const auto& s : segs)
                row.push_back({{"item", s.item + 1}, {"start", io::from_rational(s.start)}, {"end", io::from_rational(s.end)}});
            schedule.push_back(row);
        }
        result["schedule"] = schedule;
    } else if (a.mechanism == "ps-lottery") {
        lottery(ps_lottery(inst));
    } else if (a.mechanism == "reduction") {
        const auto trace = mechanism_one_trace(inst, inner_named(a.inner, g.cap));
        integral(trace.allocation);
        result["case"] = static_cast<int>(trace.branch);
        result["inner_invoked"] = trace.inner_invoked;
    } else {
        throw UsageError("unknown mechanism: " + a.mechanism);
    }
    emit(out, result, g);
    return 0;
}

// ------------------------------------------------------------------ check

struct CheckArgs {
    std::string property;
    std::string instance;
    std::string alloc;
    std::string alpha = "1";
};

int check(const CheckArgs& a, const Globals& g, std::ostream& out) {
    const Instance inst = io::to_instance(io::read_file(a.instance));
    const json alloc_json = io::read_file(a.alloc);
    const bool fractional = alloc_json.is_object() && alloc_json.contains("shares");
    const Rational alpha = Rational::parse(a.alpha);

    json result = {{"property", a.property}};
    auto integral = [&] {
        if (fractional) throw UsageError("property " + a.property + " needs an integral allocation");
        IntegralAllocation x = io::to_allocation(alloc_json, inst.items());
        require_shape(inst, x);
        return x;
    };
    auto frac = [&] {
        FractionalAllocation x = fractional ? io::to_fractional(alloc_json)
                                            : FractionalAllocation::from_integral(io::to_allocation(alloc_json, inst.items()));
        require_shape(inst, x);
        return x;
    };

    bool ok = false;
    if (a.property == "ef" || a.property == "prop") {
        const auto x = frac();
        const auto r = a.property == "ef" ? is_ef(inst, x) : is_prop(inst, x);
        result.update(envy_json(r));
        ok = r.ok;
    } else if (a.property == "ef1") {
        const auto r = is_ef1(inst, integral());
        result.update(envy_json(r));
        ok = r.ok;
    } else if (a.property == "fpo") {
        ok = is_fpo(inst, frac(), alpha);
        result["ok"] = ok;
    } else if (a.property == "po") {
        ok = is_po(inst, integral(), alpha, g.cap);
        result["ok"] = ok;
    } else if (a.property == "clean") {
        ok = is_clean(inst, integral());
        result["ok"] = ok;
    } else if (a.property == "nonwasteful") {
        ok = is_non_wasteful(inst, integral());
        result["ok"] = ok;
    } else if (a.property == "complete") {
        ok = is_complete(integral());
        result["ok"] = ok;
    } else {
        throw UsageError("unknown property: " + a.property);
    }
    if (a.property == "fpo" || a.property == "po") result["alpha"] = io::from_rational(alpha);
    emit(out, result, g);
    return ok ? 0 : 1;
}

// ------------------------------------------------------------------ audit

struct AuditArgs {
    std::string mechanism;
    std::string truth;
    std::vector<std::string> misreports;
    std::string space;
    std::string tie = "theorem42";
    std::size_t agents = 0;
    std::size_t agent = 1;
    bool families = false;
};

int audit_cmd(const AuditArgs& a, const Globals& g, std::ostream& out) {
    const ValueRow truth = io::parse_row(a.truth);
    ReportSpace space = a.space.empty() ? ReportSpace{} : io::to_space(io::read_file(a.space));
    if (a.families || a.space.empty()) space.add_families(truth);

    std::size_t n = a.agents;
    if (n == 0) {
        if (space.profiles.empty()) throw UsageError("--agents is required unless the space lists full profiles");
        n = space.profiles.front().size() + 1;
    }
    if (a.agent < 1 || a.agent > n) throw UsageError("--agent must be in 1.." + std::to_string(n));

    std::vector<ValueRow> lies;
    for (const auto& m : a.misreports) lies.push_back(io::parse_row(m));
    if (lies.empty()) lies = space.rows;

    AuditOptions options;
    options.threads = g.threads;
    options.cap = g.cap;
    std::vector<AuditReport> reports;
    if (auto det = deterministic_named(a.mechanism, parse_tie(a.tie), g.cap)) {
        reports = audit_deterministic(*det, a.agent - 1, truth, lies, space, n, options);
    } else if (auto rnd = randomized_named(a.mechanism, g.cap)) {
        reports = audit_randomized(*rnd, a.agent - 1, truth, lies, space, n, options);
    } else {
        throw UsageError("unknown mechanism: " + a.mechanism);
    }

    bool witness = false;
    json list = json::array();
    for (const auto& r : reports) {
        witness = witness || r.is_witness();
        list.push_back(io::from_report(r));
    }
    emit(out,
         {{"mechanism", a.mechanism},
          {"agent", a.agent},
          {"agents", n},
          {"profiles", space.profile_count(n - 1)},
          {"witness_found", witness},
          {"reports", list}},
         g);
    return witness ? 1 : 0;
}

// ------------------------------------------------------------------ reproduce

int reproduce(const std::string& scenario, bool all, const Globals& g, std::ostream& out) {
    AuditOptions options;
    options.threads = g.threads;
    options.cap = g.cap;
    if (!all) {
        if (scenario.empty()) throw UsageError("give --scenario NAME or --all");
        const auto r = run_scenario(scenario, options);
        emit(out, io::from_scenario(r), g);
        return r.witness_found ? 1 : 0;
    }
    json table = json::array();
    bool every = true;
    std::vector<ScenarioResult> results;
    for (const auto& name : scenario_names()) {
        results.push_back(run_scenario(name, options));
        const auto& r = results.back();
        every = every && r.reproduced;
        table.push_back({{"scenario", r.name},
                         {"claim", r.claim},
                         {"reproduced", r.reproduced},
                         {"witness_found", r.witness_found}});
    }
    if (g.pretty) {
        for (const auto& r : results)
            out << std::left << std::setw(12) << r.name << (r.reproduced ? "PASS  " : "FAIL  ") << r.claim << '\n';
    } else {
        emit(out, {{"all_reproduced", every}, {"scenarios", table}}, g);
    }
    return every ? 0 : 1;
}

// ------------------------------------------------------------------ decompose

int decompose(const std::string& path, const Globals& g, std::ostream& out) {
    const BistochasticMatrix m = io::to_matrix(io::read_file(path));
    const auto terms = birkhoff(m);
    const std::size_t k = m.size();
    emit(out,
         {{"size", k},
          {"terms", io::from_terms(terms)},
          {"term_count", terms.size()},
          {"term_bound", k * k - k + 1},
          {"reconstruction_exact", recompose(terms, k) == m.entries()}},
         g);
    return 0;
}

// ------------------------------------------------------------------ verify

int verify(const std::string& lemma, const std::string& grid_path, const Globals& g, std::ostream& out) {
    if (lemma != "5.4") throw UsageError("only --lemma 5.4 is available");
    const json grid = io::read_file(grid_path);
    const std::size_t n = grid.at("agents").get<std::size_t>();
    std::vector<ValueRow> rows;
    if (grid.contains("rows")) {
        for (const auto& r : grid.at("rows")) rows.push_back(io::to_row(r));
    } else {
        rows = product_rows(io::to_row(grid.at("values")), grid.at("items").get<std::size_t>(), false);
    }
    std::vector<std::size_t> audited;
    if (grid.contains("audited")) {
        for (const auto& k : grid.at("audited")) audited.push_back(k.get<std::size_t>() - 1);
    } else {
        for (std::size_t i = 0; i < n; ++i) audited.push_back(i);
    }
    const auto summary = verify_worst_cases(rows, n, audited, g.cap);
    json result = io::from_summary(summary);
    result["lemma"] = lemma;
    result["rows"] = rows.size();
    emit(out, result, g);
    return summary.violations == 0 ? 0 : 1;
}

// ------------------------------------------------------------------ bobw

ExPost parse_expost(const std::string& s) {
    if (s == "po-max-positive-count" || s == "po-mpc") return ExPost::PoMaxPositiveCount;
    if (s == "leximin") return ExPost::Leximin;
    if (s == "mnw") return ExPost::MaxNash;
    if (s == "po-egalitarian" || s == "po-egal") return ExPost::PoEgalitarian;
    throw UsageError("unknown ex-post predicate: " + s);
}

ExAnte parse_exante(const std::string& s) {
    if (s == "prop") return ExAnte::Prop;
    if (s == "ef") return ExAnte::Ef;
    throw UsageError("unknown ex-ante predicate: " + s);
}

int bobw(const std::string& instance, const std::string& expost, const std::string& exante, const Globals& g,
         std::ostream& out) {
    const Instance inst = io::to_instance(io::read_file(instance));
    const auto report = bobw_feasible(inst, parse_expost(expost), parse_exante(exante), g.cap);
    json result = io::from_feasibility(report);
    result["expost"] = expost;
    result["exante"] = exante;
    emit(out, result, g);
    return report.feasible ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact fair-division mechanisms, checkers and manipulability audits"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    g.cap = default_enumeration_cap();
    app.add_flag("--pretty", g.pretty, "Indent JSON; tables where available");
    app.add_option("--threads", g.threads, "Worker threads for audits")->check(CLI::Range(1u, 256u));
    app.add_option("--cap", g.cap, "Enumeration cap (default from FAIRNOM_ENUMERATION_CAP or 2000000)");

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "Run a mechanism on an instance");
    solve_cmd->add_option("--mechanism", solve_args.mechanism)
        ->required()
        ->check(CLI::IsMember({"round-robin", "util", "util-lottery", "egal", "nash", "leximin", "max-positive-count",
                               "ps", "ps-lottery", "reduction"}));
    solve_cmd->add_option("--instance", solve_args.instance)->required();
    solve_cmd->add_option("--order", solve_args.order, "Picking order, e.g. 2,1,3");
    solve_cmd->add_option("--tie", solve_args.tie)->check(CLI::IsMember({"theorem42", "smallest", "lex"}));
    solve_cmd->add_option("--inner", solve_args.inner)->check(CLI::IsMember({"exhaustive"}));
    solve_cmd->add_option("--seed", solve_args.seed, "Draw one allocation from the lottery");
    solve_cmd->add_flag("--full-lottery", solve_args.full_lottery);
    solve_cmd->add_flag("--all-optimal", solve_args.all_optimal, "List every optimal allocation");

    CheckArgs check_args;
    auto* check_cmd = app.add_subcommand("check", "Evaluate a fairness or efficiency property");
    check_cmd->add_option("--property", check_args.property)
        ->required()
        ->check(CLI::IsMember({"ef", "ef1", "prop", "fpo", "po", "clean", "nonwasteful", "complete"}));
    check_cmd->add_option("--instance", check_args.instance)->required();
    check_cmd->add_option("--alloc", check_args.alloc)->required();
    check_cmd->add_option("--alpha", check_args.alpha);

    AuditArgs audit_args;
    auto* audit_sub = app.add_subcommand("audit", "Worst/best-case audit of misreports over a report space");
    audit_sub->add_option("--mechanism", audit_args.mechanism)->required();
    audit_sub->add_option("--truth", audit_args.truth)->required();
    audit_sub->add_option("--misreport", audit_args.misreports, "Repeatable; default: every space row");
    audit_sub->add_option("--space", audit_args.space);
    audit_sub->add_option("--agents", audit_args.agents);
    audit_sub->add_option("--agent", audit_args.agent, "Audited agent (1-based)");
    audit_sub->add_option("--tie", audit_args.tie)->check(CLI::IsMember({"theorem42", "smallest", "lex"}));
    audit_sub->add_flag("--families", audit_args.families, "Add structural families relative to the truth");

    std::string scenario;
    bool all = false;
    auto* reproduce_cmd = app.add_subcommand("reproduce", "Run pinned reproduction scenarios");
    auto* scenario_opt = reproduce_cmd->add_option("--scenario", scenario)->check(CLI::IsMember(scenario_names()));
    reproduce_cmd->add_flag("--all", all)->excludes(scenario_opt);

    std::string matrix;
    auto* decompose_cmd = app.add_subcommand("decompose", "Birkhoff decomposition of a bistochastic matrix");
    decompose_cmd->add_option("--matrix", matrix)->required();

    std::string lemma;
    std::string grid;
    auto* verify_cmd = app.add_subcommand("verify", "Exhaustive structural checks");
    verify_cmd->add_option("--lemma", lemma)->required();
    verify_cmd->add_option("--grid", grid)->required();

    std::string bobw_instance;
    std::string expost;
    std::string exante = "prop";
    auto* bobw_cmd = app.add_subcommand("bobw", "Ex-ante/ex-post feasibility with certificates");
    bobw_cmd->add_option("--instance", bobw_instance)->required();
    bobw_cmd->add_option("--expost", expost)->required();
    bobw_cmd->add_option("--exante", exante);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve_cmd->parsed()) return solve(solve_args, g, out);
        if (check_cmd->parsed()) return check(check_args, g, out);
        if (audit_sub->parsed()) return audit_cmd(audit_args, g, out);
        if (reproduce_cmd->parsed()) return reproduce(scenario, all, g, out);
        if (decompose_cmd->parsed()) return decompose(matrix, g, out);
        if (verify_cmd->parsed()) return verify(lemma, grid, g, out);
        if (bobw_cmd->parsed()) return bobw(bobw_instance, expost, exante, g, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace fairnom::cli
