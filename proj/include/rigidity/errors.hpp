#pragma once

#include <stdexcept>
#include <string>

namespace rigidity {

struct NotUnimodular : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Source and target actions must share the acting group's rank.
struct RankMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonCommuting : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotEquivariant : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotSurjective : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A witness character was requested but no nonzero character has a finite
// dual orbit.
struct EmptyCharacterLattice : std::logic_error {
    using std::logic_error::logic_error;
};

// Base-point search exhausted its retry budget. Carries the best pairwise
// circle-value separation achieved across all attempts.
struct SeparationFailure : std::runtime_error {
    SeparationFailure(const std::string& what, double best_gap_, int attempts_)
        : std::runtime_error(what), best_gap(best_gap_), attempts(attempts_) {}

    double best_gap;
    int attempts;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rigidity
