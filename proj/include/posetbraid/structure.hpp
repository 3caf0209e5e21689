#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "posetbraid/lambda.hpp"

namespace pb {

// Verdict of one structural condition. detail describes the violations
// (with basis-pair labels); empty when passed.
struct CheckResult {
    bool passed = true;
    std::string detail;
};

// Reads the permutation induced on group-like pairs and validates it:
// every group-like input maps to a single group-like tensor with
// coefficient 1, both translation families are bijective order
// automorphisms, and translations agree within a comparability component.
// Throws std::invalid_argument naming the violated condition.
SetSolution extract_restriction(const LambdaTensor& t);

// Counit compatibility: the group-like part of every image has total
// coefficient 1 on diagonal inputs and 0 elsewhere.
CheckResult check_counit(const LambdaTensor& t);

// Comultiplicativity of r, checked two independent ways: coefficient sums
// over all split indices, and the matrix identity on the tensor-square
// comultiplication. The two routes must agree; a mismatch between them is a
// std::logic_error.
CheckResult check_comultiplicativity(const LambdaTensor& t);

// Every nonzero coefficient lies in the translated box: outputs (e,f) inside
// the left translate of [c,d] and (g,h) inside the right translate of [a,b].
CheckResult check_support(const LambdaTensor& t, const SetSolution& s);

// Every in-box coefficient equals the two-factor product at every interior
// split point (y,z).
CheckResult check_factorization(const LambdaTensor& t, const SetSolution& s);

// Invertibility of the coefficient at the box-corner output of every input
// pair; these are the leading terms of the graded form of r.
CheckResult check_graded_units(const LambdaTensor& t, const SetSolution& s);

// Images of (group-like, cover) and (cover, group-like) inputs have the
// three-term shape: an invertible coefficient on the translated cover plus a
// balancing +/- pair on the two adjacent group-like tensors.
CheckResult check_cover_shape(const LambdaTensor& t, const SetSolution& s);

// Double sums of corner coefficients over a translated box vanish whenever
// the box has positive total height.
CheckResult check_vanishing_sums(const LambdaTensor& t, const SetSolution& s);

// Non-degeneracy: the two composite maps built from the partial traces of r
// (counit applied to one tensor leg) are invertible.
CheckResult check_nondegeneracy(const LambdaTensor& t);

// All monotone unit-step walks from (0,0) to (j,k), each starting at (0,0)
// and ending at (j,k).
std::vector<std::vector<std::pair<int, int>>> all_configurations(int j, int k);

// Product of the two corner coefficients and one unit-height coefficient per
// configuration step, all read from t. first_chain and second_chain are
// saturated chains of [e,f] and [g,h]; the configuration is a unit-step
// monotone walk from (0,0) to (j,k). Throws std::invalid_argument on
// malformed chains or configurations.
Scalar chain_factor_value(const LambdaTensor& t, const SetSolution& s,
                          const LambdaKey& key,
                          const std::vector<int>& first_chain,
                          const std::vector<int>& second_chain,
                          const std::vector<std::pair<int, int>>& configuration);

struct StructureReport {
    CheckResult restriction;
    CheckResult support;
    CheckResult factorization;
    CheckResult counit;
    CheckResult graded_units;
    CheckResult comultiplicativity;
    CheckResult nondegeneracy;
    CheckResult cover_shape;
    CheckResult vanishing_sums;
    std::optional<SetSolution> solution;   // present when extraction succeeded

    bool passed() const;
    // (name, verdict) rows in check order, for rendering.
    std::vector<std::pair<std::string, CheckResult>> rows() const;
};

// Runs every check; nothing short-circuits. Checks that need the restriction
// are marked failed when its extraction fails.
StructureReport verify_structure(const LambdaTensor& t);

// The determining coefficients of a tensor: the two corner (height-zero)
// values for every input pair, all unit-height in-box values, and the
// group-like permutation.
struct SeedData {
    std::shared_ptr<const IntervalBasis> basis;
    Field field;
    SetSolution restriction;
    std::map<LambdaKey, Scalar> ex_entries;
    std::map<LambdaKey, Scalar> one_one_entries;
};

// Reads the seed of t. Throws when t has no valid restriction.
SeedData extract_seed(const LambdaTensor& t);

// Rebuilds the full tensor by chain products over every maximal chain pair
// and every configuration. Throws std::invalid_argument when a required seed
// value is missing and std::runtime_error when two configurations give
// different products (configuration-dependence detected).
LambdaTensor build_from_seed(const SeedData& seed);

} // namespace pb
