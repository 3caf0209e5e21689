#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "posetbraid/structure.hpp"

namespace pb {

// The two posets whose solution families are classified: the two-element
// chain and the three-element poset with one maximum.
Poset chain_poset();
Poset vee_poset();

// The baseline solution that swaps the tensor legs with coefficient 1.
LambdaTensor flip_solution(std::shared_ptr<const IntervalBasis> basis, const Field& f);

// One member of a classified family: identifier, named free parameters and
// the coefficient field. Derived quantities are never stored; generation
// recomputes them.
struct FamilyInstance {
    std::string family_id;
    std::map<std::string, Scalar> params;
    Field field = Field::rationals();
};

// All eighteen family identifiers, chain families first.
const std::vector<std::string>& family_ids();

// True for the 9x9 chain families (T56-*), false for the 25x25 ones.
bool is_chain_family(const std::string& family_id);

// Realizes a chain-family instance as a tensor on chain_poset(). Throws
// std::invalid_argument naming the violated parameter clause.
LambdaTensor theorem56_matrix(const FamilyInstance& inst);

// Realizes a vee-family instance as a tensor on vee_poset(), filling the
// fixed 25x25 pattern from the derived quantities. Throws
// std::invalid_argument naming the violated clause (including a missing
// square root for the sign parameters).
LambdaTensor table1_matrix(const FamilyInstance& inst);

// Dispatches on the family kind.
LambdaTensor realize(const FamilyInstance& inst);

// Draws a valid parameter assignment by rejection sampling. Throws
// std::domain_error when no valid assignment is found in the field.
FamilyInstance random_instance(const std::string& family_id, const Field& f, ScalarRng& rng);

// Reads candidate parameters off the canonical matrix positions of t,
// regenerates each family and compares entry for entry. Returns every
// matching instance; families overlap and are reported as such. Tensors on
// other posets match nothing.
std::vector<FamilyInstance> family_membership(const LambdaTensor& t);

} // namespace pb
