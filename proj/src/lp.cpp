#include "fairnom/lp.hpp"

#include <utility>

namespace fairnom::lp {

namespace {

// x_k = offset + sum(coeff * y_col) with every y_col >= 0.
struct Substitution {
    Rational offset;
    std::vector<std::pair<std::size_t, Rational>> terms;
};

struct StandardRow {
    ValueRow coeffs;  // over y
    Relation relation;
    Rational rhs;
};

// Dense tableau; the last entry of each row is its right-hand side. Row 0 of
// `objective` holds reduced costs with -z in the rhs slot.
class Tableau {
public:
    Tableau(std::vector<ValueRow> rows, std::vector<std::size_t> basis, std::size_t columns)
        : rows_(std::move(rows)), basis_(std::move(basis)), columns_(columns), objective_(columns + 1) {}

    void set_costs(const ValueRow& costs) {
        objective_.assign(columns_ + 1, Rational());
        for (std::size_t j = 0; j < columns_; ++j) objective_[j] = costs[j];
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rational& cb = costs[basis_[i]];
            if (cb.is_zero()) continue;
            for (std::size_t j = 0; j <= columns_; ++j)
                if (!rows_[i][j].is_zero()) objective_[j] -= cb * rows_[i][j];
        }
    }

    // Runs Bland's-rule pivoting restricted to `allowed` columns.
    // Returns false if the objective is unbounded.
    bool optimize(const std::vector<bool>& allowed) {
        for (;;) {
            std::size_t entering = columns_;
            for (std::size_t j = 0; j < columns_; ++j)
                if (allowed[j] && objective_[j].is_positive()) {
                    entering = j;
                    break;
                }
            if (entering == columns_) return true;

            std::size_t leaving = rows_.size();
            Rational best_ratio;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                const Rational& a = rows_[i][entering];
                if (!a.is_positive()) continue;
                Rational ratio = rows_[i][columns_] / a;
                if (leaving == rows_.size() || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leaving])) {
                    leaving = i;
                    best_ratio = std::move(ratio);
                }
            }
            if (leaving == rows_.size()) return false;
            pivot(leaving, entering);
        }
    }

    void pivot(std::size_t r, std::size_t e) {
        const Rational p = rows_[r][e];
        for (auto& v : rows_[r])
            if (!v.is_zero()) v /= p;
        auto eliminate = [&](ValueRow& row) {
            if (row[e].is_zero()) return;
            const Rational f = row[e];
            for (std::size_t j = 0; j <= columns_; ++j)
                if (!rows_[r][j].is_zero()) row[j] -= f * rows_[r][j];
        };
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (i != r) eliminate(rows_[i]);
        eliminate(objective_);
        basis_[r] = e;
    }

    void drop_row(std::size_t r) {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    }

    [[nodiscard]] Rational value() const { return -objective_[columns_]; }
    [[nodiscard]] std::size_t row_count() const { return rows_.size(); }
    [[nodiscard]] std::size_t basic(std::size_t r) const { return basis_[r]; }
    [[nodiscard]] const Rational& at(std::size_t r, std::size_t c) const { return rows_[r][c]; }
    [[nodiscard]] const Rational& rhs(std::size_t r) const { return rows_[r][columns_]; }

private:
    std::vector<ValueRow> rows_;
    std::vector<std::size_t> basis_;
    std::size_t columns_;
    ValueRow objective_;
};

void validate(const LinearProgram& program) {
    const std::size_t n = program.variables();
    for (const auto& c : program.constraints)
        if (c.coefficients.size() != n) throw DimensionError("constraint width does not match objective");
    if (!program.bounds.empty() && program.bounds.size() != n)
        throw DimensionError("bounds vector does not match objective");
}

}  // namespace

Result solve(const LinearProgram& program) {
    validate(program);
    const std::size_t n = program.variables();

    // Map each x_k onto nonnegative y variables.
    std::vector<Substitution> subst(n);
    std::vector<StandardRow> rows;
    std::size_t ny = 0;
    std::vector<std::pair<std::size_t, Rational>> upper_rows;  // y_col <= value
    for (std::size_t k = 0; k < n; ++k) {
        const Bound b = program.bounds.empty() ? Bound{} : program.bounds[k];
        if (b.lower) {
            subst[k].offset = *b.lower;
            subst[k].terms.emplace_back(ny, Rational(1));
            if (b.upper) upper_rows.emplace_back(ny, *b.upper - *b.lower);
            ++ny;
        } else if (b.upper) {
            subst[k].offset = *b.upper;
            subst[k].terms.emplace_back(ny++, Rational(-1));
        } else {
            subst[k].terms.emplace_back(ny++, Rational(1));
            subst[k].terms.emplace_back(ny++, Rational(-1));
        }
    }

    for (const auto& c : program.constraints) {
        StandardRow row{ValueRow(ny), c.relation, c.rhs};
        for (std::size_t k = 0; k < n; ++k) {
            const Rational& a = c.coefficients[k];
            if (a.is_zero()) continue;
            row.rhs -= a * subst[k].offset;
            for (const auto& [col, coeff] : subst[k].terms) row.coeffs[col] += a * coeff;
        }
        rows.push_back(std::move(row));
    }
    for (auto& [col, value] : upper_rows) {
        StandardRow row{ValueRow(ny), Relation::LessEqual, value};
        row.coeffs[col] = Rational(1);
        rows.push_back(std::move(row));
    }

    ValueRow costs_y(ny);
    Rational cost_offset;
    const bool minimize = program.sense == Sense::Minimize;
    for (std::size_t k = 0; k < n; ++k) {
        const Rational c = minimize ? -program.objective[k] : program.objective[k];
        if (c.is_zero()) continue;
        cost_offset += c * subst[k].offset;
        for (const auto& [col, coeff] : subst[k].terms) costs_y[col] += c * coeff;
    }

    // Column layout: y | slack/surplus | artificial.
    for (auto& row : rows) {
        if (row.rhs.is_negative()) {
            for (auto& v : row.coeffs) v = -v;
            row.rhs = -row.rhs;
            if (row.relation == Relation::LessEqual) row.relation = Relation::GreaterEqual;
            else if (row.relation == Relation::GreaterEqual) row.relation = Relation::LessEqual;
        }
    }
    std::size_t slack_count = 0;
    std::size_t artificial_count = 0;
    for (const auto& row : rows) {
        if (row.relation != Relation::Equal) ++slack_count;
        if (row.relation != Relation::LessEqual) ++artificial_count;
    }
    const std::size_t first_slack = ny;
    const std::size_t first_artificial = ny + slack_count;
    const std::size_t columns = first_artificial + artificial_count;

    std::vector<ValueRow> table;
    std::vector<std::size_t> basis;
    std::size_t next_slack = first_slack;
    std::size_t next_artificial = first_artificial;
    for (const auto& row : rows) {
        ValueRow t(columns + 1);
        for (std::size_t j = 0; j < ny; ++j) t[j] = row.coeffs[j];
        t[columns] = row.rhs;
        switch (row.relation) {
            case Relation::LessEqual:
                t[next_slack] = Rational(1);
                basis.push_back(next_slack++);
                break;
            case Relation::GreaterEqual:
                t[next_slack++] = Rational(-1);
                t[next_artificial] = Rational(1);
                basis.push_back(next_artificial++);
                break;
            case Relation::Equal:
                t[next_artificial] = Rational(1);
                basis.push_back(next_artificial++);
                break;
        }
        table.push_back(std::move(t));
    }

    Tableau tab(std::move(table), std::move(basis), columns);
    std::vector<bool> allowed(columns, true);

    if (artificial_count > 0) {
        ValueRow phase1(columns);
        for (std::size_t j = first_artificial; j < columns; ++j) phase1[j] = Rational(-1);
        tab.set_costs(phase1);
        tab.optimize(allowed);  // bounded by construction
        if (tab.value().is_negative()) return {Status::Infeasible, std::nullopt, std::nullopt};

        // Drive zero-valued artificials out of the basis; drop redundant rows.
        for (std::size_t r = 0; r < tab.row_count();) {
            if (tab.basic(r) < first_artificial) {
                ++r;
                continue;
            }
            std::size_t col = first_artificial;
            for (std::size_t j = 0; j < first_artificial; ++j)
                if (!tab.at(r, j).is_zero()) {
                    col = j;
                    break;
                }
            if (col == first_artificial) {
                tab.drop_row(r);
            } else {
                tab.pivot(r, col);
                ++r;
            }
        }
        for (std::size_t j = first_artificial; j < columns; ++j) allowed[j] = false;
    }

    ValueRow phase2(columns);
    for (std::size_t j = 0; j < ny; ++j) phase2[j] = costs_y[j];
    tab.set_costs(phase2);
    if (!tab.optimize(allowed)) return {Status::Unbounded, std::nullopt, std::nullopt};

    ValueRow y(ny);
    for (std::size_t r = 0; r < tab.row_count(); ++r)
        if (tab.basic(r) < ny) y[tab.basic(r)] = tab.rhs(r);

    ValueRow x(n);
    for (std::size_t k = 0; k < n; ++k) {
        x[k] = subst[k].offset;
        for (const auto& [col, coeff] : subst[k].terms) x[k] += coeff * y[col];
    }
    Rational optimum = tab.value() + cost_offset;
    if (minimize) optimum = -optimum;
    return {Status::Optimal, std::move(optimum), std::move(x)};
}

Rational objective_value(const LinearProgram& program, const ValueRow& x) {
    Rational z;
    for (std::size_t k = 0; k < program.variables(); ++k) z += program.objective[k] * x.at(k);
    return z;
}

bool satisfies(const LinearProgram& program, const ValueRow& x) {
    if (x.size() != program.variables()) return false;
    for (const auto& c : program.constraints) {
        Rational lhs;
        for (std::size_t k = 0; k < x.size(); ++k) lhs += c.coefficients[k] * x[k];
        switch (c.relation) {
            case Relation::LessEqual:
                if (lhs > c.rhs) return false;
                break;
            case Relation::Equal:
                if (lhs != c.rhs) return false;
                break;
            case Relation::GreaterEqual:
                if (lhs < c.rhs) return false;
                break;
        }
    }
    for (std::size_t k = 0; k < program.bounds.size(); ++k) {
        if (program.bounds[k].lower && x[k] < *program.bounds[k].lower) return false;
        if (program.bounds[k].upper && x[k] > *program.bounds[k].upper) return false;
    }
    if (program.bounds.empty())
        for (const auto& v : x)
            if (v.is_negative()) return false;
    return true;
}

}  // namespace fairnom::lp
