#include "posetbraid/lambda.hpp"

#include <stdexcept>

namespace pb {

namespace {

std::uint16_t narrow(int i) { return static_cast<std::uint16_t>(i); }

} // namespace

LambdaTensor::LambdaTensor(std::shared_ptr<const IntervalBasis> basis, const Field& f)
    : basis_(std::move(basis)), f_(f) {
    if (!basis_) throw std::invalid_argument("LambdaTensor: null basis");
}

Scalar LambdaTensor::coefficient(int in1, int in2, int out1, int out2) const {
    basis_->pair_at(in1);
    basis_->pair_at(in2);
    basis_->pair_at(out1);
    basis_->pair_at(out2);
    auto it = entries_.find(LambdaKey{narrow(in1), narrow(in2), narrow(out1), narrow(out2)});
    return it == entries_.end() ? Scalar::zero(f_) : it->second;
}

void LambdaTensor::set_coefficient(int in1, int in2, int out1, int out2, const Scalar& v) {
    basis_->pair_at(in1);
    basis_->pair_at(in2);
    basis_->pair_at(out1);
    basis_->pair_at(out2);
    if (v.field() != f_) throw std::invalid_argument("LambdaTensor: scalar field mismatch");
    LambdaKey k{narrow(in1), narrow(in2), narrow(out1), narrow(out2)};
    if (v.is_zero())
        entries_.erase(k);
    else
        entries_.insert_or_assign(k, v);
}

Scalar LambdaTensor::coeff_pairs(int a, int b, int c, int d, int e, int f, int g, int h) const {
    return coefficient(basis_->index_of(a, b), basis_->index_of(c, d),
                       basis_->index_of(e, f), basis_->index_of(g, h));
}

void LambdaTensor::set_coeff_pairs(int a, int b, int c, int d, int e, int f, int g, int h,
                                   const Scalar& v) {
    set_coefficient(basis_->index_of(a, b), basis_->index_of(c, d),
                    basis_->index_of(e, f), basis_->index_of(g, h), v);
}

std::vector<std::pair<std::pair<int, int>, Scalar>> LambdaTensor::apply(int in1, int in2) const {
    basis_->pair_at(in1);
    basis_->pair_at(in2);
    std::vector<std::pair<std::pair<int, int>, Scalar>> out;
    auto lo = entries_.lower_bound(LambdaKey{narrow(in1), narrow(in2), 0, 0});
    for (auto it = lo; it != entries_.end() && it->first.in1 == in1 && it->first.in2 == in2; ++it)
        out.push_back({{it->first.out1, it->first.out2}, it->second});
    return out;
}

SparseMat LambdaTensor::to_matrix() const {
    int n = basis_->size();
    SparseMat m(f_, n * n, n * n);
    for (const auto& [k, v] : entries_)
        m.set_at(k.out1 * n + k.out2, k.in1 * n + k.in2, v);
    return m;
}

LambdaTensor LambdaTensor::from_matrix(std::shared_ptr<const IntervalBasis> basis,
                                       const SparseMat& m, bool transpose_ingest) {
    if (!basis) throw std::invalid_argument("LambdaTensor: null basis");
    int n = basis->size();
    if (m.rows() != n * n || m.cols() != n * n)
        throw std::invalid_argument("LambdaTensor: matrix is not on the tensor square");
    LambdaTensor t(std::move(basis), m.field());
    for (int r = 0; r < n * n; ++r) {
        for (const auto& [c, v] : m.row(r)) {
            int out = transpose_ingest ? c : r;
            int in = transpose_ingest ? r : c;
            t.set_coefficient(in / n, in % n, out / n, out % n, v);
        }
    }
    return t;
}

bool LambdaTensor::operator==(const LambdaTensor& o) const {
    return f_ == o.f_ && basis_->poset() == o.basis_->poset() && entries_ == o.entries_;
}

SetSolution::SetSolution(Poset poset, std::vector<std::vector<int>> left_table,
                         std::vector<std::vector<int>> right_table)
    : poset_(std::move(poset)), left_(std::move(left_table)), right_(std::move(right_table)) {
    auto n = static_cast<std::size_t>(poset_.size());
    if (left_.size() != n || right_.size() != n)
        throw std::invalid_argument("SetSolution: table size mismatch");
    left_inv_.assign(n, std::vector<int>(n, -1));
    right_inv_.assign(n, std::vector<int>(n, -1));
    for (std::size_t a = 0; a < n; ++a) {
        if (left_[a].size() != n || right_[a].size() != n)
            throw std::invalid_argument("SetSolution: table size mismatch");
        for (std::size_t c = 0; c < n; ++c) {
            int e = left_[a][c];
            if (e < 0 || static_cast<std::size_t>(e) >= n)
                throw std::invalid_argument("SetSolution: left value out of range");
            if (left_inv_[a][static_cast<std::size_t>(e)] != -1)
                throw std::invalid_argument("SetSolution: left translation by '" +
                                            poset_.label(static_cast<int>(a)) +
                                            "' is not injective");
            left_inv_[a][static_cast<std::size_t>(e)] = static_cast<int>(c);
        }
    }
    // right_[a][c] = image of a under the action of c: bijectivity is per c.
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t a = 0; a < n; ++a) {
            int g = right_[a][c];
            if (g < 0 || static_cast<std::size_t>(g) >= n)
                throw std::invalid_argument("SetSolution: right value out of range");
            if (right_inv_[c][static_cast<std::size_t>(g)] != -1)
                throw std::invalid_argument("SetSolution: right translation by '" +
                                            poset_.label(static_cast<int>(c)) +
                                            "' is not injective");
            right_inv_[c][static_cast<std::size_t>(g)] = static_cast<int>(a);
        }
    }
}

SetSolution SetSolution::flip(const Poset& poset) {
    auto n = static_cast<std::size_t>(poset.size());
    std::vector<std::vector<int>> l(n, std::vector<int>(n));
    std::vector<std::vector<int>> r(n, std::vector<int>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c) {
            l[a][c] = static_cast<int>(c);
            r[a][c] = static_cast<int>(a);
        }
    return SetSolution(poset, std::move(l), std::move(r));
}

SetSolution SetSolution::uniform(const Poset& poset, const std::vector<int>& l,
                                 const std::vector<int>& r) {
    auto n = static_cast<std::size_t>(poset.size());
    if (l.size() != n || r.size() != n)
        throw std::invalid_argument("SetSolution: permutation size mismatch");
    std::vector<std::vector<int>> lt(n, std::vector<int>(n));
    std::vector<std::vector<int>> rt(n, std::vector<int>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c) {
            lt[a][c] = l[c];
            rt[a][c] = r[a];
        }
    return SetSolution(poset, std::move(lt), std::move(rt));
}

int SetSolution::left(int a, int c) const {
    return left_.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(c));
}

int SetSolution::right(int a, int c) const {
    return right_.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(c));
}

int SetSolution::left_inv(int a, int e) const {
    return left_inv_.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(e));
}

int SetSolution::right_inv(int c, int g) const {
    return right_inv_.at(static_cast<std::size_t>(c)).at(static_cast<std::size_t>(g));
}

SetCheckReport check_set_solution(const SetSolution& s) {
    int n = s.size();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                int ab_l = s.left(a, b);    // left translate of b under a
                int ab_r = s.right(a, b);   // right translate of a under b
                int bc_l = s.left(b, c);
                int bc_r = s.right(b, c);
                if (s.left(a, bc_l) != s.left(ab_l, s.left(ab_r, c))) {
                    return {false, std::array<int, 3>{a, b, c},
                            "left-left identity fails"};
                }
                if (s.right(s.right(a, bc_l), bc_r) != s.right(ab_r, c)) {
                    return {false, std::array<int, 3>{a, b, c},
                            "right-right identity fails"};
                }
                if (s.left(s.right(a, bc_l), bc_r) != s.right(ab_l, s.left(ab_r, c))) {
                    return {false, std::array<int, 3>{a, b, c},
                            "middle identity fails"};
                }
            }
    return {};
}

} // namespace pb
