#include "fairnom/checkers.hpp"

namespace fairnom {

namespace {

// Value agent i assigns to agent j's bundle, per allocation kind.
Rational cross_value(const Instance& inst, const IntegralAllocation& alloc, std::size_t i, std::size_t j) {
    return bundle_value(inst.row(i), alloc.bundle(j));
}

Rational cross_value(const Instance& inst, const FractionalAllocation& alloc, std::size_t i, std::size_t j) {
    return share_value(inst.row(i), alloc.row(j));
}

template <class Alloc>
EnvyReport envy_free(const Instance& inst, const Alloc& alloc) {
    require_shape(inst, alloc);
    for (std::size_t i = 0; i < inst.agents(); ++i) {
        const Rational own = cross_value(inst, alloc, i, i);
        for (std::size_t j = 0; j < inst.agents(); ++j)
            if (j != i && cross_value(inst, alloc, i, j) > own) return EnvyReport::fail(i, j);
    }
    return EnvyReport::pass();
}

template <class Alloc>
EnvyReport proportional(const Instance& inst, const Alloc& alloc) {
    require_shape(inst, alloc);
    const Rational n(static_cast<std::int64_t>(inst.agents()));
    for (std::size_t i = 0; i < inst.agents(); ++i)
        if (cross_value(inst, alloc, i, i) * n < total_value(inst.row(i))) return EnvyReport::fail(i);
    return EnvyReport::pass();
}

// Does the envier (valuing by `row`, owning `own`) envy `other` even after the
// best single removal?
bool envies_beyond_one(std::span<const Rational> row, const Rational& own, const Bundle& other) {
    if (other.empty()) return false;
    Rational total;
    Rational best;
    for (std::size_t g : other) {
        total += row[g];
        if (row[g] > best) best = row[g];
    }
    return total - best > own;
}

}  // namespace

EnvyReport is_ef(const Instance& inst, const IntegralAllocation& alloc) { return envy_free(inst, alloc); }
EnvyReport is_ef(const Instance& inst, const FractionalAllocation& alloc) { return envy_free(inst, alloc); }
EnvyReport is_prop(const Instance& inst, const IntegralAllocation& alloc) { return proportional(inst, alloc); }
EnvyReport is_prop(const Instance& inst, const FractionalAllocation& alloc) { return proportional(inst, alloc); }

EnvyReport is_ef1(const Instance& inst, const IntegralAllocation& alloc) {
    require_shape(inst, alloc);
    for (std::size_t i = 0; i < inst.agents(); ++i)
        if (auto r = is_ef1_for_agent(inst, i, alloc); !r.ok) return r;
    return EnvyReport::pass();
}

EnvyReport is_ef1_for_agent(const Instance& inst, std::size_t agent, const IntegralAllocation& alloc) {
    require_shape(inst, alloc);
    const auto& row = inst.row(agent);
    const Rational own = bundle_value(row, alloc.bundle(agent));
    for (std::size_t j = 0; j < inst.agents(); ++j)
        if (j != agent && envies_beyond_one(row, own, alloc.bundle(j))) return EnvyReport::fail(agent, j);
    return EnvyReport::pass();
}

bool ef1_for_row(std::span<const Rational> row, std::size_t agent, const IntegralAllocation& alloc) {
    if (row.size() != alloc.items()) throw DimensionError("valuation row length mismatch");
    const Rational own = bundle_value(row, alloc.bundle(agent));
    for (std::size_t j = 0; j < alloc.agents(); ++j)
        if (j != agent && envies_beyond_one(row, own, alloc.bundle(j))) return false;
    return true;
}

bool is_clean(const Instance& inst, const IntegralAllocation& alloc) {
    require_shape(inst, alloc);
    for (std::size_t i = 0; i < inst.agents(); ++i)
        for (std::size_t g : alloc.bundle(i))
            if (!inst.value(i, g).is_positive()) return false;
    return true;
}

bool is_non_wasteful(const Instance& inst, const IntegralAllocation& alloc) {
    require_shape(inst, alloc);
    for (std::size_t g : alloc.unallocated())
        for (std::size_t i = 0; i < inst.agents(); ++i)
            if (!inst.value(i, g).is_zero()) return false;
    return true;
}

bool is_complete(const IntegralAllocation& alloc) { return alloc.is_complete(); }

}  // namespace fairnom
