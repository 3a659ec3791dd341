#include "fairnom/efficiency.hpp"

namespace fairnom {

lp::LinearProgram fpo_program(const Instance& inst, const FractionalAllocation& alloc, const Rational& alpha) {
    require_shape(inst, alloc);
    const std::size_t n = inst.agents();
    const std::size_t m = inst.items();
    const std::size_t vars = n * m;

    lp::LinearProgram program;
    program.sense = lp::Sense::Maximize;
    program.objective.assign(vars, Rational());
    program.bounds.assign(vars, lp::Bound::between(Rational(0), Rational(1)));

    for (std::size_t i = 0; i < n; ++i) {
        const Rational current = utility(inst, i, alloc);
        ValueRow row(vars);
        for (std::size_t j = 0; j < m; ++j) {
            row[i * m + j] = alpha * inst.value(i, j);
            program.objective[i * m + j] = alpha * inst.value(i, j);
        }
        program.add(std::move(row), lp::Relation::GreaterEqual, current);
    }
    for (std::size_t j = 0; j < m; ++j) {
        ValueRow col(vars);
        for (std::size_t i = 0; i < n; ++i) col[i * m + j] = Rational(1);
        program.add(std::move(col), lp::Relation::LessEqual, Rational(1));
    }
    return program;
}

bool is_fpo(const Instance& inst, const FractionalAllocation& alloc, const Rational& alpha) {
    const auto program = fpo_program(inst, alloc, alpha);
    const auto result = lp::solve(program);
    if (result.status == lp::Status::Infeasible) return true;
    if (result.status == lp::Status::Unbounded) return false;  // cannot happen: shares are boxed
    Rational baseline;
    for (std::size_t i = 0; i < inst.agents(); ++i) baseline += utility(inst, i, alloc);
    return *result.optimum <= baseline;
}

bool is_fpo(const Instance& inst, const IntegralAllocation& alloc, const Rational& alpha) {
    require_shape(inst, alloc);
    return is_fpo(inst, FractionalAllocation::from_integral(alloc), alpha);
}

bool is_po(const Instance& inst, const IntegralAllocation& alloc, const Rational& alpha, std::uint64_t cap) {
    require_shape(inst, alloc);
    const std::size_t n = inst.agents();
    const auto choices = complete_choices(n, inst.items());
    std::vector<std::size_t> counts(inst.items(), n);
    require_within_cap(count_assignments(counts), cap, "Pareto check");

    std::vector<Rational> current(n);
    for (std::size_t i = 0; i < n; ++i) current[i] = utility(inst, i, alloc.bundle(i));

    bool dominated = false;
    std::vector<Rational> candidate(n);
    for_each_assignment(choices, [&](std::span<const std::size_t> owner) {
        for (auto& c : candidate) c = Rational();
        for (std::size_t j = 0; j < owner.size(); ++j) candidate[owner[j]] += inst.value(owner[j], j);
        bool weakly = true;
        bool strictly = false;
        for (std::size_t i = 0; i < n && weakly; ++i) {
            const Rational scaled = alpha * candidate[i];
            if (scaled < current[i]) weakly = false;
            else if (scaled > current[i]) strictly = true;
        }
        dominated = weakly && strictly;
        return !dominated;
    });
    return !dominated;
}

}  // namespace fairnom
