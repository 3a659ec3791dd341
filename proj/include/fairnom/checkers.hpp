#pragma once

#include <cstddef>
#include <optional>

#include "fairnom/model.hpp"

namespace fairnom {

/// Verdict of a fairness predicate. The witness is the lexicographically
/// smallest violating (agent, envied agent) pair; for proportionality only
/// `agent` is set.
struct EnvyReport {
    struct Witness {
        std::size_t agent = 0;
        std::optional<std::size_t> envied;
        friend bool operator==(const Witness&, const Witness&) = default;
    };

    bool ok = true;
    std::optional<Witness> witness;

    static EnvyReport pass() { return {}; }
    static EnvyReport fail(std::size_t agent, std::optional<std::size_t> envied = std::nullopt) {
        return {false, Witness{agent, envied}};
    }
    explicit operator bool() const { return ok; }
};

EnvyReport is_ef(const Instance& inst, const IntegralAllocation& alloc);
EnvyReport is_ef(const Instance& inst, const FractionalAllocation& alloc);
EnvyReport is_prop(const Instance& inst, const IntegralAllocation& alloc);
EnvyReport is_prop(const Instance& inst, const FractionalAllocation& alloc);

/// Envy-freeness up to one item; empty envied bundles never witness.
EnvyReport is_ef1(const Instance& inst, const IntegralAllocation& alloc);
/// EF1 with the envier fixed to `agent`.
EnvyReport is_ef1_for_agent(const Instance& inst, std::size_t agent, const IntegralAllocation& alloc);
/// Same predicate evaluated with an explicit valuation row for the envier.
bool ef1_for_row(std::span<const Rational> row, std::size_t agent, const IntegralAllocation& alloc);

/// Every allocated item has strictly positive value to its holder.
bool is_clean(const Instance& inst, const IntegralAllocation& alloc);
/// Every unallocated item is worth zero to every agent.
bool is_non_wasteful(const Instance& inst, const IntegralAllocation& alloc);
bool is_complete(const IntegralAllocation& alloc);

}  // namespace fairnom
