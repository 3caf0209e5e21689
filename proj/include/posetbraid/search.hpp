#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "posetbraid/families.hpp"

namespace pb {

// Thrown when a search would enumerate more candidates than its cap allows.
class CapacityError : public std::length_error {
public:
    explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

// Enumeration plan over one poset and a finite prime field.
struct SearchSpec {
    Poset poset;
    Field field = Field::prime(2);
    // Fixed restriction on the group-like part; empty enumerates every
    // candidate restriction built from order automorphisms.
    std::optional<SetSolution> restriction;
    // With pruning, dependent cells are derived (split products, solved
    // box-corner factors, counit closers) and only genuinely free cells are
    // enumerated. Without it only the general pattern is applied: corner
    // inputs and the balancing pair on point-flank columns stay forced,
    // every other support cell is free.
    bool pruning = true;
    std::uint64_t limit = 10'000'000;
};

// One census row: a fully verified solution and the families it matches.
struct CensusEntry {
    LambdaTensor tensor;
    std::vector<FamilyInstance> matches;
};

struct SearchResult {
    std::vector<CensusEntry> solutions;
    // Assignments enumerated, including ones rejected before verification.
    std::uint64_t candidates = 0;
    int restrictions_tried = 0;
    int free_cells = 0;
};

// Enumerates every coefficient assignment on the support pattern and keeps
// the candidates that pass verify_structure with a zero braid residual.
// Throws CapacityError when the space exceeds spec.limit and
// std::invalid_argument when the field is not finite.
SearchResult exhaustive_search(const SearchSpec& spec);

// Outcome of a randomized family sweep: draw, realize, verify, count.
struct SweepReport {
    std::string family_id;
    std::string field_name;
    int requested = 0;
    int completed = 0;
    int passed = 0;
    // Parameter assignments that realized but failed a check, verbatim.
    std::vector<std::string> counterexamples;
    // Set when drawing stalled before reaching the requested count.
    std::string note;
};

SweepReport random_family_sweep(const std::string& family_id, int draws, const Field& f,
                                std::uint64_t seed);

} // namespace pb
