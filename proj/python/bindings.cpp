#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fairnom/bobw.hpp"
#include "fairnom/checkers.hpp"
#include "fairnom/cli.hpp"
#include "fairnom/efficiency.hpp"
#include "fairnom/io.hpp"
#include "fairnom/lottery.hpp"
#include "fairnom/mechanisms.hpp"
#include "fairnom/reduction.hpp"
#include "fairnom/scenarios.hpp"

namespace py = pybind11;
using namespace fairnom;

// Rationals cross the boundary as strings; fairnom/__init__.py turns them into
// fractions.Fraction. Items and agents are 0-based here.
namespace {

using Strings = std::vector<std::string>;
using Bundles = std::vector<Bundle>;

ValueRow row_in(const Strings& s) {
    ValueRow out;
    for (const auto& x : s) out.push_back(Rational::parse(x));
    return out;
}

Strings row_out(const ValueRow& r) {
    Strings out;
    for (const auto& x : r) out.push_back(x.to_string());
    return out;
}

Instance inst_in(const std::vector<Strings>& rows) {
    std::vector<ValueRow> values;
    for (const auto& r : rows) values.push_back(row_in(r));
    return Instance(std::move(values));
}

IntegralAllocation alloc_in(const Instance& inst, const Bundles& bundles) {
    return IntegralAllocation(inst.items(), bundles);
}

std::vector<Bundles> bundles_out(const std::vector<IntegralAllocation>& as) {
    std::vector<Bundles> out;
    for (const auto& a : as) out.push_back(a.bundles());
    return out;
}

TieBreakPolicy tie_in(const std::string& s) {
    if (s == "theorem42") return TieBreakPolicy::FirstLastToLast;
    if (s == "smallest") return TieBreakPolicy::SmallestIndex;
    if (s == "lex") return TieBreakPolicy::LexAllocation;
    throw py::value_error("tie must be theorem42, smallest or lex");
}

ExPost expost_in(const std::string& s) {
    for (ExPost p : {ExPost::PoMaxPositiveCount, ExPost::Leximin, ExPost::MaxNash, ExPost::PoEgalitarian})
        if (to_string(p) == s) return p;
    throw py::value_error("unknown ex-post predicate: " + s);
}

ExAnte exante_in(const std::string& s) {
    if (s == "prop") return ExAnte::Prop;
    if (s == "ef") return ExAnte::Ef;
    throw py::value_error("unknown ex-ante predicate: " + s);
}

}  // namespace

PYBIND11_MODULE(_fairnom, m) {
    m.doc() = "Exact fair-division mechanisms, checkers and manipulability audits";

    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<InvariantError>(m, "InvariantError", PyExc_ValueError);
    py::register_exception<NormalizationError>(m, "NormalizationError", PyExc_ValueError);
    py::register_exception<ScaleError>(m, "ScaleError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    m.def("round_robin", [](const std::vector<Strings>& v, std::vector<std::size_t> order) {
        const auto inst = inst_in(v);
        return (order.empty() ? round_robin(inst) : round_robin(inst, order)).bundles();
    }, py::arg("values"), py::arg("order") = std::vector<std::size_t>{});
    m.def("round_robin_worst_best", [](const Strings& truth, std::size_t position, std::size_t agents) {
        const auto wb = round_robin_worst_best(row_in(truth), position, agents);
        return std::pair{wb.worst.to_string(), wb.best.to_string()};
    });
    m.def("max_utilitarian", [](const std::vector<Strings>& v, const std::string& tie) {
        return max_utilitarian(inst_in(v), tie_in(tie)).allocation.bundles();
    }, py::arg("values"), py::arg("tie") = "theorem42");
    m.def("max_nash", [](const std::vector<Strings>& v) { return bundles_out(max_nash(inst_in(v))); });
    m.def("max_egalitarian", [](const std::vector<Strings>& v) { return bundles_out(max_egalitarian(inst_in(v))); });
    m.def("leximin", [](const std::vector<Strings>& v) { return bundles_out(leximin(inst_in(v))); });
    m.def("max_positive_count", [](const std::vector<Strings>& v) { return bundles_out(max_positive_count(inst_in(v))); });

    m.def("probabilistic_serial", [](const std::vector<Strings>& v) {
        const auto result = probabilistic_serial(inst_in(v));
        std::vector<Strings> out;
        for (const auto& r : result.allocation.shares()) out.push_back(row_out(r));
        return out;
    });
    m.def("ps_lottery", [](const std::vector<Strings>& v) {
        const auto lottery = ps_lottery(inst_in(v));
        std::vector<std::pair<std::string, Bundles>> out;
        for (const auto& e : lottery.support()) out.emplace_back(e.probability.to_string(), e.allocation.bundles());
        return out;
    });
    m.def("birkhoff", [](const std::vector<Strings>& rows) {
        std::vector<ValueRow> entries;
        for (const auto& r : rows) entries.push_back(row_in(r));
        std::vector<std::pair<std::string, std::vector<std::size_t>>> out;
        for (const auto& t : birkhoff(BistochasticMatrix(std::move(entries)))) out.emplace_back(t.weight.to_string(), t.perm);
        return out;
    });

    m.def("is_ef", [](const std::vector<Strings>& v, const Bundles& b) {
        const auto inst = inst_in(v);
        return is_ef(inst, alloc_in(inst, b)).ok;
    });
    m.def("is_ef1", [](const std::vector<Strings>& v, const Bundles& b) {
        const auto inst = inst_in(v);
        return is_ef1(inst, alloc_in(inst, b)).ok;
    });
    m.def("is_prop", [](const std::vector<Strings>& v, const Bundles& b) {
        const auto inst = inst_in(v);
        return is_prop(inst, alloc_in(inst, b)).ok;
    });
    m.def("is_fpo", [](const std::vector<Strings>& v, const Bundles& b, const std::string& alpha) {
        const auto inst = inst_in(v);
        return is_fpo(inst, alloc_in(inst, b), Rational::parse(alpha));
    }, py::arg("values"), py::arg("bundles"), py::arg("alpha") = "1");
    m.def("is_po", [](const std::vector<Strings>& v, const Bundles& b) {
        const auto inst = inst_in(v);
        return is_po(inst, alloc_in(inst, b));
    });

    m.def("mechanism_one", [](const std::vector<Strings>& v) {
        return mechanism_one(inst_in(v), [](const Instance& b) { return exhaustive_inner(b); }).bundles();
    });
    m.def("ef1_set", [](std::size_t agent, const Strings& row, std::size_t agents) {
        return bundles_out(ef1_set(agent, row_in(row), agents));
    });
    m.def("realize_allocation", [](std::size_t agent, const Strings& row, const Bundles& target) {
        std::vector<Strings> out;
        for (const auto& r : realize_allocation(agent, row_in(row), IntegralAllocation(row.size(), target)))
            out.push_back(row_out(r));
        return out;
    });

    m.def("bobw_feasible", [](const std::vector<Strings>& v, const std::string& expost, const std::string& exante) {
        const auto report = bobw_feasible(inst_in(v), expost_in(expost), exante_in(exante));
        return io::from_feasibility(report).dump();
    }, "JSON report; see fairnom.bobw_feasible for the decoded form");

    m.def("scenario_names", &scenario_names);
    m.def("run_scenario", [](const std::string& name, unsigned threads) {
        AuditOptions options;
        options.threads = threads;
        py::gil_scoped_release release;
        return io::from_scenario(run_scenario(name, options)).dump();
    }, py::arg("name"), py::arg("threads") = 1);

    m.def("cli", [](std::vector<std::string> args) {
        args.insert(args.begin(), "fairnom");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
