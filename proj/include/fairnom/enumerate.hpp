#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "fairnom/model.hpp"

namespace fairnom {

/// Default bound on the number of candidates an exhaustive search may visit.
/// Reads FAIRNOM_ENUMERATION_CAP from the environment, else 2'000'000.
std::uint64_t default_enumeration_cap();

/// Product of choice counts, saturating at UINT64_MAX.
std::uint64_t count_assignments(std::span<const std::size_t> choices_per_item);

/// Throws ScaleError when `count` exceeds `cap`.
void require_within_cap(std::uint64_t count, std::uint64_t cap, std::string_view what);

/// Visits every item-to-owner assignment in lexicographic order of the owner
/// vector. `choices[j]` lists the admissible owners of item j (agents, or
/// `agents` for "unallocated") in increasing order; an empty list makes the
/// visit a no-op. The callback returns false to stop early.
void for_each_assignment(const std::vector<std::vector<std::size_t>>& choices,
                         const std::function<bool(std::span<const std::size_t>)>& visit);

/// Every complete allocation of `items` items to `agents` agents (n^m of them).
std::vector<std::vector<std::size_t>> complete_choices(std::size_t agents, std::size_t items);
/// Every partial allocation ((n+1)^m of them).
std::vector<std::vector<std::size_t>> partial_choices(std::size_t agents, std::size_t items);

}  // namespace fairnom
