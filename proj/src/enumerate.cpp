#include "fairnom/enumerate.hpp"

#include <cstdlib>
#include <limits>
#include <string>

namespace fairnom {

std::uint64_t default_enumeration_cap() {
    constexpr std::uint64_t fallback = 2'000'000;
    const char* env = std::getenv("FAIRNOM_ENUMERATION_CAP");
    if (env == nullptr || *env == '\0') return fallback;
    try {
        return std::stoull(env);
    } catch (const std::exception&) {
        return fallback;
    }
}

std::uint64_t count_assignments(std::span<const std::size_t> choices_per_item) {
    std::uint64_t total = 1;
    for (std::size_t c : choices_per_item) {
        if (c == 0) return 0;
        if (total > std::numeric_limits<std::uint64_t>::max() / c) return std::numeric_limits<std::uint64_t>::max();
        total *= c;
    }
    return total;
}

void require_within_cap(std::uint64_t count, std::uint64_t cap, std::string_view what) {
    if (count > cap)
        throw ScaleError(std::string(what) + " needs " + std::to_string(count) + " candidates, cap is " +
                         std::to_string(cap));
}

void for_each_assignment(const std::vector<std::vector<std::size_t>>& choices,
                         const std::function<bool(std::span<const std::size_t>)>& visit) {
    const std::size_t m = choices.size();
    for (const auto& c : choices)
        if (c.empty()) return;
    std::vector<std::size_t> cursor(m, 0);
    std::vector<std::size_t> owner(m);
    for (std::size_t j = 0; j < m; ++j) owner[j] = choices[j][0];
    for (;;) {
        if (!visit(owner)) return;
        // Odometer with the last item as the fastest digit keeps lex order.
        std::size_t j = m;
        while (j > 0) {
            --j;
            if (++cursor[j] < choices[j].size()) {
                owner[j] = choices[j][cursor[j]];
                break;
            }
            cursor[j] = 0;
            owner[j] = choices[j][0];
            if (j == 0) return;
        }
        if (m == 0) return;
    }
}

std::vector<std::vector<std::size_t>> complete_choices(std::size_t agents, std::size_t items) {
    std::vector<std::size_t> all(agents);
    for (std::size_t i = 0; i < agents; ++i) all[i] = i;
    return std::vector<std::vector<std::size_t>>(items, all);
}

std::vector<std::vector<std::size_t>> partial_choices(std::size_t agents, std::size_t items) {
    std::vector<std::size_t> all(agents + 1);
    for (std::size_t i = 0; i <= agents; ++i) all[i] = i;
    return std::vector<std::vector<std::size_t>>(items, all);
}

}  // namespace fairnom
