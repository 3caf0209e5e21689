#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "posetbraid/coalgebra.hpp"

namespace pb {

// Index quadruple of a tensor coefficient: the scalar on output basis pair
// (out1, out2) in the image of input basis pair (in1, in2). All four are
// positions in the IntervalBasis.
struct LambdaKey {
    std::uint16_t in1, in2, out1, out2;
    auto operator<=>(const LambdaKey&) const = default;
};

// Sparse coefficient tensor of a linear map r on D tensor D, expanded over
// the interval basis. Zero coefficients are never stored. The basis is
// shared immutable state; tensors over the same basis compare by entries.
class LambdaTensor {
public:
    LambdaTensor(std::shared_ptr<const IntervalBasis> basis, const Field& f);

    const IntervalBasis& basis() const { return *basis_; }
    const std::shared_ptr<const IntervalBasis>& basis_ptr() const { return basis_; }
    const Field& field() const { return f_; }

    Scalar coefficient(int in1, int in2, int out1, int out2) const;
    void set_coefficient(int in1, int in2, int out1, int out2, const Scalar& v);

    // Coefficient addressed by element indices: inputs (a,b),(c,d), outputs
    // (e,f),(g,h). Every pair must lie in Y.
    Scalar coeff_pairs(int a, int b, int c, int d, int e, int f, int g, int h) const;
    void set_coeff_pairs(int a, int b, int c, int d, int e, int f, int g, int h,
                         const Scalar& v);

    const std::map<LambdaKey, Scalar>& entries() const { return entries_; }

    // Image of the input basis pair: [((out1, out2), coeff), ...] in key order.
    std::vector<std::pair<std::pair<int, int>, Scalar>> apply(int in1, int in2) const;

    // Matrix realization on D tensor D: rows are outputs (out1*|Y| + out2),
    // columns inputs (in1*|Y| + in2).
    SparseMat to_matrix() const;
    // Inverse of to_matrix; transpose_ingest reads the transposed orientation
    // (rows as inputs), for matrices written down the other way.
    static LambdaTensor from_matrix(std::shared_ptr<const IntervalBasis> basis,
                                    const SparseMat& m, bool transpose_ingest = false);

    bool operator==(const LambdaTensor& o) const;
    bool operator!=(const LambdaTensor& o) const { return !(*this == o); }

private:
    std::shared_ptr<const IntervalBasis> basis_;
    Field f_;
    std::map<LambdaKey, Scalar> entries_;
};

// The restriction of r to the group-like part: a permutation of X x X,
// (a, c) -> (left(a,c), right(a,c)), with both translation families
// invertible (validated at construction).
class SetSolution {
public:
    // left_table[a][c] = the left translate of c under a;
    // right_table[a][c] = the right translate of a under c.
    SetSolution(Poset poset, std::vector<std::vector<int>> left_table,
                std::vector<std::vector<int>> right_table);

    // The flip: (a, c) -> (c, a).
    static SetSolution flip(const Poset& poset);
    // Constant translation families: left(a, c) = l[c], right(a, c) = r[a].
    static SetSolution uniform(const Poset& poset, const std::vector<int>& l,
                               const std::vector<int>& r);

    const Poset& poset() const { return poset_; }
    int size() const { return poset_.size(); }

    int left(int a, int c) const;        // image of c under the a-th left translation
    int right(int a, int c) const;       // image of a under the c-th right translation
    int left_inv(int a, int e) const;    // the c with left(a, c) = e
    int right_inv(int c, int g) const;   // the a with right(a, c) = g

    bool operator==(const SetSolution& o) const {
        return poset_ == o.poset_ && left_ == o.left_ && right_ == o.right_;
    }

private:
    Poset poset_;
    std::vector<std::vector<int>> left_, right_;
    std::vector<std::vector<int>> left_inv_, right_inv_;
};

struct SetCheckReport {
    bool passed = true;
    std::optional<std::array<int, 3>> witness;   // first failing (a, b, c)
    std::string detail;                          // which identity failed
};

// The three braid identities for the induced pair structure, checked over
// all element triples.
SetCheckReport check_set_solution(const SetSolution& s);

} // namespace pb
