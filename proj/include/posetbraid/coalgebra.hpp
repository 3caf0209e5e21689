#pragma once

#include <utility>
#include <vector>

#include "posetbraid/matrix.hpp"
#include "posetbraid/poset.hpp"

namespace pb {

// The interval basis Y = {(a,b) : a <= b} of a poset, in lexicographic order
// by element index. Provides the incidence-coalgebra structure maps and the
// multi-index conventions for tensor powers of D = KY.
//
// Multi-index convention (row-major throughout): a basis element
// (p1, p2, ..., pk) of D^(tensor k) has index p1*|Y|^(k-1) + ... + pk.
// Matrices act on column vectors; rows index outputs, columns inputs.
class IntervalBasis {
public:
    explicit IntervalBasis(Poset poset);

    const Poset& poset() const { return poset_; }
    int size() const { return static_cast<int>(pairs_.size()); }

    const std::pair<int, int>& pair_at(int i) const;
    int index_of(int lo, int hi) const;          // throws when lo <= hi fails
    bool contains(int lo, int hi) const { return poset_.leq(lo, hi); }

    // Group-like basis positions: the pairs (a, a).
    std::vector<int> group_likes() const;

    // Counit value on a basis pair: 1 if lo == hi else 0.
    Scalar epsilon(const Field& f, int i) const;

    // Comultiplication terms of pair i: [(index(a,c), index(c,b)) : c in [a,b]].
    std::vector<std::pair<int, int>> delta(int i) const;

    // Structure maps as exact matrices.
    // delta_matrix: D -> D tensor D; column i carries delta of pair i.
    SparseMat delta_matrix(const Field& f) const;
    // counit_matrix: D -> K, a 1 x |Y| row.
    SparseMat counit_matrix(const Field& f) const;
    // Comultiplication of the tensor-square coalgebra, D^2 -> D^4:
    // (p, q) goes to the sum over splits of p and q of (p1, q1) tensor (p2, q2).
    SparseMat delta2_matrix(const Field& f) const;

private:
    Poset poset_;
    std::vector<std::pair<int, int>> pairs_;
    std::vector<std::vector<int>> index_;        // -1 when not comparable
};

// m tensor id (position 12) or id tensor m (position 23) on D^(tensor 3),
// built from a map m on D^(tensor 2).
SparseMat tensor_lift(const IntervalBasis& basis, const SparseMat& m, int position);

} // namespace pb
