#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "posetbraid/structure.hpp"

namespace pb {

// First nonzero cell of the braid residual, decoded into basis triples.
struct BraidWitness {
    std::array<int, 3> input;    // domain basis triple (column)
    std::array<int, 3> output;   // image basis triple (row)
    Scalar value;
};

// Verdict of the two braid-equation routes. The matrix route always runs;
// the interval-sextuple route runs when the tensor has a valid restriction
// that solves the set-theoretic braid equation, and must then agree with
// the matrix verdict.
struct BraidReport {
    bool residual_is_zero = true;
    std::optional<BraidWitness> witness;
    bool sextuples_checked = false;
    std::vector<std::array<int, 6>> per_sextuple_failures;
};

// Exact residual of the braid identity on the triple tensor power, plus the
// sextuple-system cross-check. Throws std::logic_error if the two routes
// ever disagree.
BraidReport braid_residual(const LambdaTensor& t);

// All interval sextuples (ab, cd, ef, gh, ij, kl) with gh inside ab, ij
// inside cd and kl inside ef, as basis indices.
std::vector<std::array<int, 6>> enumerate_sextuples(const IntervalBasis& basis);

// One equation of the sextuple system: both triple sums evaluated exactly.
// Throws std::invalid_argument when the containment precondition fails.
CheckResult check_sextuple(const LambdaTensor& t, const SetSolution& s,
                           const std::array<int, 6>& sextuple);

// The nine identities available when the three outer intervals have total
// height at most one. Items 4, 7 and 10 are implied by items 2, 5 and 8 on
// tensors with valid counit and corner units; they are still evaluated
// directly so the redundancy is checkable.
struct SmallIntervalReport {
    std::vector<std::pair<std::string, CheckResult>> items;
    bool passed() const;
};

SmallIntervalReport small_interval_diagnostics(const LambdaTensor& t, const SetSolution& s);

// Zero determinant test for two coefficient pairs.
bool aligned(const std::pair<Scalar, Scalar>& v, const std::pair<Scalar, Scalar>& w);

// Inputs of the linear-part criteria: uniform commuting translation
// automorphisms, a primitive root of unity for their common order, the four
// coefficient maps on (s, cover pair) keys, the candidate ratio constants,
// and the chosen roots with their coefficient sequences. All fields are
// caller-visible so tests can perturb them; linear_part_check validates the
// structural invariants before evaluating.
struct LinearPartData {
    std::shared_ptr<const IntervalBasis> basis;
    Field field = Field::rationals();
    int n = 1;                    // common order of the two translation maps
    Scalar w;                     // primitive n-th root of unity
    std::vector<int> phi_r;       // s -> the right translate of s
    std::vector<int> phi_l;       // s -> the left translate of s

    // Keys are {s, a, b} with a covered by b.
    std::map<std::array<int, 3>, Scalar> alpha_r, beta_r, alpha_l, beta_l;

    // Per cover pair: ratio constants in both orientations. C_r and C_l are
    // the translate-over-base ratios used by the root and coefficient
    // formulas; C is the base-over-translate ratio that is reported.
    std::map<std::pair<int, int>, Scalar> C_r, C_l, C;
    // Chosen n-th roots of the per-pair products of C_r (resp. C_l) powers.
    std::map<std::pair<int, int>, Scalar> gamma_r, gamma_l;
    // Coefficient sequences of length n derived from gamma_r (resp. gamma_l).
    std::map<std::pair<int, int>, std::vector<Scalar>> wp, ell;

    // Canonical preparation from a tensor: extracts the restriction,
    // requires uniform commuting translations, takes n as their joint order
    // and fills every derived field. Throws std::domain_error when the
    // hypotheses fail or a required root does not exist in the field.
    static LinearPartData from_tensor(const LambdaTensor& t);
};

// TwoSided: independent translation families (four item conditions).
// Symmetric: equal translation families (three item conditions, one shared
// line per cover pair and exponent).
enum class LinearPartMode { TwoSided, Symmetric };

struct LinearPartReport {
    std::vector<std::pair<std::string, CheckResult>> items;
    bool passed() const;
};

// Validates the data invariants (orders, primitivity, commutation, root and
// coefficient formulas; equal translation maps in Symmetric mode), throwing
// std::invalid_argument on violation, then evaluates the item conditions.
LinearPartReport linear_part_check(const LinearPartData& d, LinearPartMode mode);

} // namespace pb
