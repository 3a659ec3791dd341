#include "fairnom/model.hpp"

#include <algorithm>

namespace fairnom {

Instance::Instance(std::size_t agents, std::size_t items, std::vector<ValueRow> values)
    : agents_(agents), items_(items), values_(std::move(values)) {
    if (agents_ == 0) throw DimensionError("instance needs at least one agent");
    if (values_.size() != agents_)
        throw DimensionError("instance has " + std::to_string(values_.size()) + " rows, expected " +
                             std::to_string(agents_));
    for (std::size_t i = 0; i < agents_; ++i) {
        if (values_[i].size() != items_)
            throw DimensionError("row " + std::to_string(i) + " has " + std::to_string(values_[i].size()) +
                                 " entries, expected " + std::to_string(items_));
        for (const auto& v : values_[i])
            if (v.is_negative()) throw InvariantError("negative value in row " + std::to_string(i));
    }
}

Instance::Instance(std::vector<ValueRow> values) : agents_(values.size()), items_(values.empty() ? 0 : values.front().size()) {
    *this = Instance(agents_, items_, std::move(values));
}

const ValueRow& Instance::row(std::size_t agent) const {
    if (agent >= agents_) throw std::out_of_range("agent index " + std::to_string(agent) + " out of range");
    return values_[agent];
}

const Rational& Instance::value(std::size_t agent, std::size_t item) const {
    const auto& r = row(agent);
    if (item >= items_) throw std::out_of_range("item index " + std::to_string(item) + " out of range");
    return r[item];
}

Instance Instance::with_row(std::size_t agent, ValueRow row) const {
    auto values = values_;
    if (agent >= agents_) throw std::out_of_range("agent index out of range");
    values[agent] = std::move(row);
    return Instance(agents_, items_, std::move(values));
}

IntegralAllocation::IntegralAllocation(std::size_t items, std::vector<Bundle> bundles)
    : items_(items), bundles_(std::move(bundles)) {
    std::vector<bool> seen(items_, false);
    for (auto& b : bundles_) {
        std::sort(b.begin(), b.end());
        for (std::size_t g : b) {
            if (g >= items_) throw InvariantError("item index " + std::to_string(g) + " out of range");
            if (seen[g]) throw InvariantError("item " + std::to_string(g) + " appears in two bundles");
            seen[g] = true;
        }
    }
}

IntegralAllocation IntegralAllocation::from_owners(std::size_t agents, std::span<const std::size_t> owner) {
    std::vector<Bundle> bundles(agents);
    for (std::size_t j = 0; j < owner.size(); ++j) {
        if (owner[j] > agents) throw InvariantError("owner index out of range");
        if (owner[j] < agents) bundles[owner[j]].push_back(j);
    }
    return IntegralAllocation(owner.size(), std::move(bundles));
}

IntegralAllocation IntegralAllocation::empty(std::size_t agents, std::size_t items) {
    return IntegralAllocation(items, std::vector<Bundle>(agents));
}

const Bundle& IntegralAllocation::bundle(std::size_t agent) const {
    if (agent >= bundles_.size()) throw std::out_of_range("agent index out of range");
    return bundles_[agent];
}

std::vector<std::size_t> IntegralAllocation::owners() const {
    std::vector<std::size_t> owner(items_, bundles_.size());
    for (std::size_t i = 0; i < bundles_.size(); ++i)
        for (std::size_t g : bundles_[i]) owner[g] = i;
    return owner;
}

std::vector<std::size_t> IntegralAllocation::unallocated() const {
    std::vector<std::size_t> out;
    const auto owner = owners();
    for (std::size_t j = 0; j < items_; ++j)
        if (owner[j] == bundles_.size()) out.push_back(j);
    return out;
}

bool IntegralAllocation::is_complete() const {
    std::size_t count = 0;
    for (const auto& b : bundles_) count += b.size();
    return count == items_;
}

bool operator<(const IntegralAllocation& a, const IntegralAllocation& b) { return a.owners() < b.owners(); }

FractionalAllocation::FractionalAllocation(std::vector<ValueRow> shares) : shares_(std::move(shares)) {
    items_ = shares_.empty() ? 0 : shares_.front().size();
    std::vector<Rational> column(items_);
    for (const auto& row : shares_) {
        if (row.size() != items_) throw DimensionError("ragged fractional allocation");
        for (std::size_t j = 0; j < items_; ++j) {
            if (row[j].is_negative() || row[j] > Rational(1))
                throw InvariantError("share outside [0,1] for item " + std::to_string(j));
            column[j] += row[j];
        }
    }
    for (std::size_t j = 0; j < items_; ++j)
        if (column[j] > Rational(1)) throw InvariantError("item " + std::to_string(j) + " allocated more than once");
}

FractionalAllocation FractionalAllocation::zeros(std::size_t agents, std::size_t items) {
    return FractionalAllocation(std::vector<ValueRow>(agents, ValueRow(items)));
}

FractionalAllocation FractionalAllocation::from_integral(const IntegralAllocation& alloc) {
    std::vector<ValueRow> shares(alloc.agents(), ValueRow(alloc.items()));
    for (std::size_t i = 0; i < alloc.agents(); ++i)
        for (std::size_t g : alloc.bundle(i)) shares[i][g] = Rational(1);
    return FractionalAllocation(std::move(shares));
}

const Rational& FractionalAllocation::share(std::size_t agent, std::size_t item) const {
    return shares_.at(agent).at(item);
}

Lottery::Lottery(std::vector<LotteryEntry> support) : support_(std::move(support)) {
    if (support_.empty()) throw InvariantError("lottery support is empty");
    Rational total;
    for (const auto& e : support_) {
        if (!e.probability.is_positive()) throw InvariantError("lottery probability must be positive");
        if (e.allocation.agents() != support_.front().allocation.agents() ||
            e.allocation.items() != support_.front().allocation.items())
            throw DimensionError("lottery support allocations differ in shape");
        total += e.probability;
    }
    if (total != Rational(1)) throw InvariantError("lottery probabilities sum to " + total.to_string());
}

Lottery Lottery::point_mass(IntegralAllocation alloc) { return Lottery({{Rational(1), std::move(alloc)}}); }

Rational bundle_value(std::span<const Rational> row, std::span<const std::size_t> bundle) {
    Rational sum;
    for (std::size_t g : bundle) {
        if (g >= row.size()) throw std::out_of_range("item index " + std::to_string(g) + " out of range");
        sum += row[g];
    }
    return sum;
}

Rational share_value(std::span<const Rational> row, std::span<const Rational> shares) {
    if (row.size() != shares.size()) throw DimensionError("share vector length mismatch");
    Rational sum;
    for (std::size_t j = 0; j < row.size(); ++j)
        if (!shares[j].is_zero()) sum += row[j] * shares[j];
    return sum;
}

Rational total_value(std::span<const Rational> row) {
    Rational sum;
    for (const auto& v : row) sum += v;
    return sum;
}

Rational utility(const Instance& inst, std::size_t agent, std::span<const std::size_t> bundle) {
    return bundle_value(inst.row(agent), bundle);
}

Rational utility(const Instance& inst, std::size_t agent, const FractionalAllocation& alloc) {
    require_shape(inst, alloc);
    return share_value(inst.row(agent), alloc.row(agent));
}

FractionalAllocation expected_allocation(const Lottery& lot) {
    const auto& first = lot.support().front().allocation;
    std::vector<ValueRow> shares(first.agents(), ValueRow(first.items()));
    for (const auto& [p, alloc] : lot.support())
        for (std::size_t i = 0; i < alloc.agents(); ++i)
            for (std::size_t g : alloc.bundle(i)) shares[i][g] += p;
    return FractionalAllocation(std::move(shares));
}

ValueRow normalize_row(std::span<const Rational> row) {
    const Rational total = total_value(row);
    if (total.is_zero()) throw NormalizationError("cannot normalize an all-zero valuation row");
    ValueRow out;
    out.reserve(row.size());
    for (const auto& v : row) out.push_back(v / total);
    return out;
}

Instance normalize(const Instance& inst) {
    std::vector<ValueRow> rows;
    rows.reserve(inst.agents());
    for (std::size_t i = 0; i < inst.agents(); ++i) {
        try {
            rows.push_back(normalize_row(inst.row(i)));
        } catch (const NormalizationError&) {
            throw NormalizationError("agent " + std::to_string(i) + " has an all-zero valuation row");
        }
    }
    return Instance(inst.agents(), inst.items(), std::move(rows));
}

bool is_normalized(const Instance& inst) {
    for (const auto& row : inst.values())
        if (total_value(row) != Rational(1)) return false;
    return true;
}

void require_shape(const Instance& inst, const IntegralAllocation& alloc) {
    if (alloc.agents() != inst.agents() || alloc.items() != inst.items())
        throw DimensionError("allocation shape " + std::to_string(alloc.agents()) + "x" +
                             std::to_string(alloc.items()) + " does not match instance " +
                             std::to_string(inst.agents()) + "x" + std::to_string(inst.items()));
}

void require_shape(const Instance& inst, const FractionalAllocation& alloc) {
    if (alloc.agents() != inst.agents() || alloc.items() != inst.items())
        throw DimensionError("fractional allocation shape does not match instance");
}

}  // namespace fairnom
