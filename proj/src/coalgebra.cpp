#include "posetbraid/coalgebra.hpp"

#include <stdexcept>

namespace pb {

IntervalBasis::IntervalBasis(Poset poset) : poset_(std::move(poset)) {
    int n = poset_.size();
    index_.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (poset_.leq(a, b)) {
                index_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                    static_cast<int>(pairs_.size());
                pairs_.emplace_back(a, b);
            }
}

const std::pair<int, int>& IntervalBasis::pair_at(int i) const {
    if (i < 0 || i >= size()) throw std::out_of_range("IntervalBasis: pair index out of range");
    return pairs_[static_cast<std::size_t>(i)];
}

int IntervalBasis::index_of(int lo, int hi) const {
    if (lo < 0 || lo >= poset_.size() || hi < 0 || hi >= poset_.size())
        throw std::out_of_range("IntervalBasis: element index out of range");
    int i = index_[static_cast<std::size_t>(lo)][static_cast<std::size_t>(hi)];
    if (i == -1)
        throw std::invalid_argument("IntervalBasis: (" + poset_.label(lo) + "," +
                                    poset_.label(hi) + ") is not in Y");
    return i;
}

std::vector<int> IntervalBasis::group_likes() const {
    std::vector<int> out;
    for (int a = 0; a < poset_.size(); ++a) out.push_back(index_of(a, a));
    return out;
}

Scalar IntervalBasis::epsilon(const Field& f, int i) const {
    const auto& [a, b] = pair_at(i);
    return a == b ? Scalar::one(f) : Scalar::zero(f);
}

std::vector<std::pair<int, int>> IntervalBasis::delta(int i) const {
    const auto& [a, b] = pair_at(i);
    std::vector<std::pair<int, int>> out;
    for (int c : poset_.interval(a, b)) out.emplace_back(index_of(a, c), index_of(c, b));
    return out;
}

SparseMat IntervalBasis::delta_matrix(const Field& f) const {
    int n = size();
    SparseMat m(f, n * n, n);
    Scalar one = Scalar::one(f);
    for (int i = 0; i < n; ++i)
        for (const auto& [p, q] : delta(i)) m.add_at(p * n + q, i, one);
    return m;
}

SparseMat IntervalBasis::counit_matrix(const Field& f) const {
    SparseMat m(f, 1, size());
    for (int i = 0; i < size(); ++i) m.set_at(0, i, epsilon(f, i));
    return m;
}

SparseMat IntervalBasis::delta2_matrix(const Field& f) const {
    int n = size();
    int n2 = n * n, n3 = n2 * n;
    SparseMat m(f, n2 * n2, n2);
    Scalar one = Scalar::one(f);
    for (int p = 0; p < n; ++p) {
        auto dp = delta(p);
        for (int q = 0; q < n; ++q) {
            for (const auto& [p1, p2] : dp)
                for (const auto& [q1, q2] : delta(q))
                    m.add_at(p1 * n3 + q1 * n2 + p2 * n + q2, p * n + q, one);
        }
    }
    return m;
}

SparseMat tensor_lift(const IntervalBasis& basis, const SparseMat& m, int position) {
    int n = basis.size();
    if (m.rows() != n * n || m.cols() != n * n)
        throw std::invalid_argument("tensor_lift: map is not on the tensor square");
    if (position == 12) return SparseMat::kron(m, SparseMat::identity(m.field(), n));
    if (position == 23) return SparseMat::kron(SparseMat::identity(m.field(), n), m);
    throw std::invalid_argument("tensor_lift: position must be 12 or 23");
}

} // namespace pb
