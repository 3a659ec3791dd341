#include "fairnom/bobw.hpp"

#include <stdexcept>

#include "fairnom/efficiency.hpp"
#include "fairnom/lp.hpp"
#include "fairnom/mechanisms.hpp"

namespace fairnom {

std::string to_string(ExPost p) {
    switch (p) {
        case ExPost::PoMaxPositiveCount: return "po-max-positive-count";
        case ExPost::Leximin: return "leximin";
        case ExPost::MaxNash: return "mnw";
        case ExPost::PoEgalitarian: return "po-egalitarian";
    }
    throw std::invalid_argument("unknown ex-post predicate");
}

std::string to_string(ExAnte p) { return p == ExAnte::Prop ? "prop" : "ef"; }

std::vector<IntegralAllocation> expost_candidates(const Instance& inst, ExPost predicate, std::uint64_t cap) {
    auto keep_po = [&](std::vector<IntegralAllocation> set) {
        std::vector<IntegralAllocation> out;
        for (auto& a : set)
            if (is_po(inst, a, Rational(1), cap)) out.push_back(std::move(a));
        return out;
    };
    switch (predicate) {
        case ExPost::PoMaxPositiveCount: return keep_po(max_positive_count(inst, cap));
        case ExPost::Leximin: return leximin(inst, cap);
        case ExPost::MaxNash: return max_nash(inst, cap);
        case ExPost::PoEgalitarian: return keep_po(max_egalitarian(inst, cap));
    }
    throw std::invalid_argument("unknown ex-post predicate");
}

ExAnteSystem exante_system(const Instance& inst, const std::vector<IntegralAllocation>& candidates, ExAnte predicate) {
    const std::size_t n = inst.agents();
    ExAnteSystem sys;
    if (predicate == ExAnte::Prop) {
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Rational> row;
            for (const auto& a : candidates) row.push_back(utility(inst, i, a.bundle(i)));
            sys.coefficients.push_back(std::move(row));
            sys.thresholds.push_back(total_value(inst.row(i)) / Rational(static_cast<std::int64_t>(n)));
            sys.labels.push_back("prop " + std::to_string(i + 1));
        }
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                std::vector<Rational> row;
                for (const auto& a : candidates)
                    row.push_back(utility(inst, i, a.bundle(i)) - utility(inst, i, a.bundle(j)));
                sys.coefficients.push_back(std::move(row));
                sys.thresholds.emplace_back();
                sys.labels.push_back("ef " + std::to_string(i + 1) + " over " + std::to_string(j + 1));
            }
    }
    return sys;
}

bool verify_certificate(const ExAnteSystem& system, const InfeasibilityCertificate& cert) {
    const std::size_t rows = system.coefficients.size();
    if (cert.weights.size() != rows) return false;
    for (const auto& y : cert.weights)
        if (y.is_negative()) return false;
    const std::size_t columns = rows == 0 ? 0 : system.coefficients[0].size();
    for (std::size_t z = 0; z < columns; ++z) {
        Rational score = cert.offset;
        for (std::size_t k = 0; k < rows; ++k) score += cert.weights[k] * system.coefficients[k][z];
        if (score.is_positive()) return false;
    }
    Rational rhs = cert.offset;
    for (std::size_t k = 0; k < rows; ++k) rhs += cert.weights[k] * system.thresholds[k];
    return rhs.is_positive();
}

FeasibilityReport bobw_feasible(const Instance& inst, ExPost expost, ExAnte exante, std::uint64_t cap) {
    FeasibilityReport report;
    report.candidates = expost_candidates(inst, expost, cap);
    report.system = exante_system(inst, report.candidates, exante);
    const auto& sys = report.system;
    const std::size_t columns = report.candidates.size();
    const std::size_t rows = sys.coefficients.size();

    // Primal: find p >= 0, sum p = 1, meeting every ex-ante row.
    lp::LinearProgram primal;
    primal.objective.assign(columns, Rational());
    for (std::size_t k = 0; k < rows; ++k) primal.add(sys.coefficients[k], lp::Relation::GreaterEqual, sys.thresholds[k]);
    primal.add(std::vector<Rational>(columns, Rational(1)), lp::Relation::Equal, Rational(1));
    const auto solved = lp::solve(primal);
    if (solved.status == lp::Status::Optimal) {
        report.feasible = true;
        std::vector<LotteryEntry> support;
        for (std::size_t z = 0; z < columns; ++z)
            if ((*solved.solution)[z].is_positive()) support.push_back({(*solved.solution)[z], report.candidates[z]});
        report.witness = Lottery(std::move(support));
        return report;
    }

    // Alternative system: y >= 0 (rows), w free; y.c_z + w <= 0 for every
    // column, y.t + w <= 1; maximize y.t + w.
    lp::LinearProgram alt;
    alt.objective = sys.thresholds;
    alt.objective.emplace_back(1);
    alt.bounds.assign(rows, lp::Bound{});
    alt.bounds.push_back(lp::Bound::free());
    for (std::size_t z = 0; z < columns; ++z) {
        std::vector<Rational> c;
        for (std::size_t k = 0; k < rows; ++k) c.push_back(sys.coefficients[k][z]);
        c.emplace_back(1);
        alt.add(std::move(c), lp::Relation::LessEqual, Rational());
    }
    alt.add(alt.objective, lp::Relation::LessEqual, Rational(1));
    const auto dual = lp::solve(alt);
    if (dual.status != lp::Status::Optimal || !dual.optimum->is_positive())
        throw std::logic_error("infeasible ex-ante system without a separating certificate");
    InfeasibilityCertificate cert;
    cert.weights.assign(dual.solution->begin(), dual.solution->begin() + static_cast<std::ptrdiff_t>(rows));
    cert.offset = dual.solution->back();
    if (!verify_certificate(sys, cert)) throw std::logic_error("certificate failed verification");
    report.certificate = std::move(cert);
    return report;
}

}  // namespace fairnom
