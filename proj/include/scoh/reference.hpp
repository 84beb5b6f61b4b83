#pragma once

// The three worked examples of mixed groups whose torsion part, quotient and
// whole group disagree about strong co-Hopficity.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scoh/classify.hpp"

namespace scoh {

enum class ExampleId { Ex0, Ex1, Ex3 };

inline std::optional<ExampleId> parse_example_id(std::string_view s) {
    if (s == "ex0") return ExampleId::Ex0;
    if (s == "ex1") return ExampleId::Ex1;
    if (s == "ex3") return ExampleId::Ex3;
    return std::nullopt;
}

inline std::string_view to_string(ExampleId id) {
    switch (id) {
        case ExampleId::Ex0: return "ex0";
        case ExampleId::Ex1: return "ex1";
        case ExampleId::Ex3: return "ex3";
    }
    return "?";
}

/// ex0: prod_p Z(p), the completion of (+)_p Z(p).
/// ex1: the E-ring sp-group over all primes with T = (+)_n Z(p_n^n), G/T = Q.
/// ex3: H (+) T_Q, H the rank-one sp-group over primes at odd positions with
///      components Z(p), T_Q = (+)_n Z(q_n^n) over primes at even positions.
inline GroupDescriptor build_example(ExampleId id) {
    switch (id) {
        case ExampleId::Ex0: return GroupDescriptor::product(TorsionDescriptor({}, TailRule::constant(1, 1)));
        case ExampleId::Ex1: return GroupDescriptor::ering(SpGroupSpec(PrimeSelection::All, TailRule::linear()));
        case ExampleId::Ex3:
            return GroupDescriptor::sum(
                GroupDescriptor::ering(SpGroupSpec(PrimeSelection::OddPositions, TailRule::constant(1))),
                GroupDescriptor::torsion(TorsionDescriptor({}, TailRule::linear(), PrimeSelection::EvenPositions)));
    }
    throw PreconditionError("unknown example");
}

struct ExpectedVerdict {
    std::string key;  // group, torsion, quotient or uniform
    Answer answer;
};

/// The verdicts each example was built to exhibit.
inline std::vector<ExpectedVerdict> expected_verdicts(ExampleId id) {
    switch (id) {
        case ExampleId::Ex0:
            return {{"group", Answer::Yes}, {"torsion", Answer::Yes}, {"quotient", Answer::No}};
        case ExampleId::Ex1:
            return {{"group", Answer::Yes}, {"torsion", Answer::No}, {"uniform", Answer::No}};
        case ExampleId::Ex3:
            return {{"torsion", Answer::No}, {"group", Answer::No}, {"quotient", Answer::Yes}};
    }
    return {};
}

}  // namespace scoh
