#pragma once

#include <stdexcept>

namespace fairnom {

/// Mismatched agent/item counts between an instance and an allocation, or a
/// malformed matrix.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A valuation row that cannot be scaled to sum to one (all zeros).
class NormalizationError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An exhaustive enumeration would exceed the configured cap.
class ScaleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A structural invariant of an input value does not hold (overlapping bundles,
/// probabilities that do not sum to one, a non-bistochastic matrix, ...).
class InvariantError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace fairnom
