#include "fairnom/lottery.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

namespace fairnom {

namespace {

std::vector<std::size_t> preference_order(std::span<const Rational> row) {
    std::vector<std::size_t> order(row.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return row[a] > row[b]; });
    return order;
}

// Kuhn's augmenting-path matching on the positive support, rows in order and
// columns smallest-first.
class SupportMatcher {
public:
    explicit SupportMatcher(const std::vector<ValueRow>& residual)
        : residual_(residual), k_(residual.size()), row_of_(k_, k_) {}

    std::optional<std::vector<std::size_t>> perfect_matching() {
        for (std::size_t r = 0; r < k_; ++r) {
            std::vector<bool> visited(k_, false);
            if (!augment(r, visited)) return std::nullopt;
        }
        std::vector<std::size_t> perm(k_);
        for (std::size_t c = 0; c < k_; ++c) perm[row_of_[c]] = c;
        return perm;
    }

private:
    bool augment(std::size_t r, std::vector<bool>& visited) {
        for (std::size_t c = 0; c < k_; ++c) {
            if (visited[c] || !residual_[r][c].is_positive()) continue;
            visited[c] = true;
            if (row_of_[c] == k_ || augment(row_of_[c], visited)) {
                row_of_[c] = r;
                return true;
            }
        }
        return false;
    }

    const std::vector<ValueRow>& residual_;
    std::size_t k_;
    std::vector<std::size_t> row_of_;
};

}  // namespace

SerialResult eat_by_orders(const std::vector<std::vector<std::size_t>>& orders, std::size_t items) {
    const std::size_t n = orders.size();
    if (n == 0) throw DimensionError("eating procedure needs at least one agent");
    for (const auto& o : orders) {
        if (o.size() != items) throw DimensionError("preference order must rank every item");
        std::vector<bool> seen(items, false);
        for (std::size_t j : o) {
            if (j >= items || seen[j]) throw InvariantError("preference order is not a permutation");
            seen[j] = true;
        }
    }

    std::vector<ValueRow> shares(n, ValueRow(items));
    EatingSchedule schedule;
    schedule.segments.resize(n);
    std::vector<Rational> remaining(items, Rational(1));
    std::vector<std::size_t> cursor(n, 0);
    std::size_t left = items;
    Rational now;

    while (left > 0) {
        std::vector<std::size_t> eating(n);
        std::vector<std::int64_t> eaters(items, 0);
        for (std::size_t i = 0; i < n; ++i) {
            while (remaining[orders[i][cursor[i]]].is_zero()) ++cursor[i];
            eating[i] = orders[i][cursor[i]];
            ++eaters[eating[i]];
        }
        std::optional<Rational> step;
        for (std::size_t j = 0; j < items; ++j) {
            if (eaters[j] == 0) continue;
            Rational t = remaining[j] / Rational(eaters[j]);
            if (!step || t < *step) step = std::move(t);
        }
        const Rational next = now + *step;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = eating[i];
            shares[i][j] += *step;
            auto& segs = schedule.segments[i];
            if (!segs.empty() && segs.back().item == j && segs.back().end == now) {
                segs.back().end = next;
            } else {
                segs.push_back({j, now, next});
            }
        }
        for (std::size_t j = 0; j < items; ++j) {
            if (eaters[j] == 0) continue;
            remaining[j] -= *step * Rational(eaters[j]);
            if (remaining[j].is_zero()) --left;
        }
        now = next;
    }
    schedule.horizon = now;
    return {FractionalAllocation(std::move(shares)), std::move(schedule)};
}

SerialResult probabilistic_serial(const Instance& bids) {
    std::vector<std::vector<std::size_t>> orders;
    orders.reserve(bids.agents());
    for (const auto& row : bids.values()) orders.push_back(preference_order(row));
    return eat_by_orders(orders, bids.items());
}

BistochasticMatrix::BistochasticMatrix(std::vector<ValueRow> entries) : entries_(std::move(entries)) {
    const std::size_t k = entries_.size();
    std::vector<Rational> column(k);
    for (std::size_t r = 0; r < k; ++r) {
        if (entries_[r].size() != k) throw InvariantError("bistochastic matrix must be square");
        Rational row;
        for (std::size_t c = 0; c < k; ++c) {
            if (entries_[r][c].is_negative()) throw InvariantError("bistochastic matrix has a negative entry");
            row += entries_[r][c];
            column[c] += entries_[r][c];
        }
        if (row != Rational(1)) throw InvariantError("row " + std::to_string(r) + " sums to " + row.to_string());
    }
    for (std::size_t c = 0; c < k; ++c)
        if (column[c] != Rational(1))
            throw InvariantError("column " + std::to_string(c) + " sums to " + column[c].to_string());
}

std::vector<PermutationTerm> birkhoff(const BistochasticMatrix& matrix) {
    const std::size_t k = matrix.size();
    std::vector<ValueRow> residual = matrix.entries();
    std::vector<PermutationTerm> terms;
    Rational mass(1);
    while (k > 0 && mass.is_positive()) {
        auto perm = SupportMatcher(residual).perfect_matching();
        if (!perm) throw InvariantError("no perfect matching on the residual support");
        Rational weight = residual[0][(*perm)[0]];
        for (std::size_t r = 1; r < k; ++r) weight = min(weight, residual[r][(*perm)[r]]);
        for (std::size_t r = 0; r < k; ++r) residual[r][(*perm)[r]] -= weight;
        mass -= weight;
        terms.push_back({std::move(weight), std::move(*perm)});
    }
    return terms;
}

std::vector<ValueRow> recompose(const std::vector<PermutationTerm>& terms, std::size_t size) {
    std::vector<ValueRow> out(size, ValueRow(size));
    for (const auto& t : terms) {
        if (t.perm.size() != size) throw DimensionError("permutation size mismatch");
        for (std::size_t r = 0; r < size; ++r) out[r][t.perm[r]] += t.weight;
    }
    return out;
}

PsLotteryTrace ps_lottery_trace(const Instance& bids) {
    const std::size_t n = bids.agents();
    const std::size_t m = bids.items();
    const std::size_t windows = (m + n - 1) / n;
    const std::size_t padded = n * windows;

    PsLotteryTrace trace;
    trace.windows = windows;
    if (m == 0) {
        trace.lottery = Lottery::point_mass(IntegralAllocation::empty(n, 0));
        return trace;
    }

    // Dummies rank below every real item, so real items are consumed exactly as
    // in the unpadded procedure.
    std::vector<std::vector<std::size_t>> orders;
    for (const auto& row : bids.values()) {
        auto order = preference_order(row);
        for (std::size_t d = m; d < padded; ++d) order.push_back(d);
        orders.push_back(std::move(order));
    }
    const auto eaten = eat_by_orders(orders, padded);

    std::vector<ValueRow> matrix(padded, ValueRow(padded));
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& seg : eaten.schedule.segments[i]) {
            for (std::size_t k = 0; k < windows; ++k) {
                const Rational lo = max(seg.start, Rational(static_cast<std::int64_t>(k)));
                const Rational hi = min(seg.end, Rational(static_cast<std::int64_t>(k + 1)));
                if (hi > lo) matrix[i * windows + k][seg.item] += hi - lo;
            }
        }
    }

    trace.terms = birkhoff(BistochasticMatrix(matrix));
    trace.window_matrix = std::move(matrix);

    std::map<std::vector<std::size_t>, Rational> merged;
    for (const auto& term : trace.terms) {
        std::vector<std::size_t> owner(m, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < windows; ++k) {
                const std::size_t item = term.perm[i * windows + k];
                if (item < m) owner[item] = i;
            }
        merged[owner] += term.weight;
    }
    std::vector<LotteryEntry> support;
    for (auto& [owner, p] : merged) support.push_back({p, IntegralAllocation::from_owners(n, owner)});
    trace.lottery = Lottery(std::move(support));
    return trace;
}

Lottery ps_lottery(const Instance& bids) { return ps_lottery_trace(bids).lottery; }

IntegralAllocation sample(const Lottery& lot, std::uint64_t seed) {
    mpz_class common = 1;
    for (const auto& e : lot.support()) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), e.probability.raw().get_den_mpz_t());

    gmp_randclass rng(gmp_randinit_mt);
    mpz_class s;
    mpz_import(s.get_mpz_t(), 1, 1, sizeof(seed), 0, 0, &seed);
    rng.seed(s);
    const mpz_class draw = rng.get_z_range(common);

    mpz_class cumulative = 0;
    for (const auto& e : lot.support()) {
        cumulative += e.probability.raw().get_num() * (common / e.probability.raw().get_den());
        if (draw < cumulative) return e.allocation;
    }
    return lot.support().back().allocation;  // unreachable: probabilities sum to one
}

}  // namespace fairnom
