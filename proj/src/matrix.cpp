#include "posetbraid/matrix.hpp"

#include <stdexcept>

namespace pb {

SparseMat::SparseMat(const Field& f, int rows, int cols)
    : f_(f), rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("SparseMat: negative dimension");
}

SparseMat SparseMat::identity(const Field& f, int n) {
    SparseMat m(f, n, n);
    Scalar one = Scalar::one(f);
    for (int i = 0; i < n; ++i) m.data_[static_cast<std::size_t>(i)].emplace(i, one);
    return m;
}

void SparseMat::check_index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("SparseMat: index out of range");
}

void SparseMat::add_at(int r, int c, const Scalar& v) {
    check_index(r, c);
    if (v.is_zero()) return;
    auto& row = data_[static_cast<std::size_t>(r)];
    auto it = row.find(c);
    if (it == row.end()) {
        row.emplace(c, v);
    } else {
        it->second += v;
        if (it->second.is_zero()) row.erase(it);
    }
}

void SparseMat::set_at(int r, int c, const Scalar& v) {
    check_index(r, c);
    auto& row = data_[static_cast<std::size_t>(r)];
    if (v.is_zero())
        row.erase(c);
    else
        row.insert_or_assign(c, v);
}

Scalar SparseMat::at(int r, int c) const {
    check_index(r, c);
    const auto& row = data_[static_cast<std::size_t>(r)];
    auto it = row.find(c);
    return it == row.end() ? Scalar::zero(f_) : it->second;
}

const std::map<int, Scalar>& SparseMat::row(int r) const {
    if (r < 0 || r >= rows_) throw std::out_of_range("SparseMat: row out of range");
    return data_[static_cast<std::size_t>(r)];
}

SparseMat SparseMat::operator+(const SparseMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || f_ != o.f_)
        throw std::invalid_argument("SparseMat: shape or field mismatch in +");
    SparseMat out = *this;
    for (int r = 0; r < rows_; ++r)
        for (const auto& [c, v] : o.data_[static_cast<std::size_t>(r)]) out.add_at(r, c, v);
    return out;
}

SparseMat SparseMat::operator-(const SparseMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || f_ != o.f_)
        throw std::invalid_argument("SparseMat: shape or field mismatch in -");
    SparseMat out = *this;
    for (int r = 0; r < rows_; ++r)
        for (const auto& [c, v] : o.data_[static_cast<std::size_t>(r)]) out.add_at(r, c, -v);
    return out;
}

SparseMat SparseMat::operator*(const SparseMat& o) const {
    if (cols_ != o.rows_ || f_ != o.f_)
        throw std::invalid_argument("SparseMat: shape or field mismatch in *");
    SparseMat out(f_, rows_, o.cols_);
    for (int r = 0; r < rows_; ++r) {
        auto& orow = out.data_[static_cast<std::size_t>(r)];
        for (const auto& [k, a] : data_[static_cast<std::size_t>(r)]) {
            for (const auto& [c, b] : o.data_[static_cast<std::size_t>(k)]) {
                auto it = orow.find(c);
                if (it == orow.end()) {
                    orow.emplace(c, a * b);
                } else {
                    it->second += a * b;
                }
            }
        }
        for (auto it = orow.begin(); it != orow.end();) {
            if (it->second.is_zero())
                it = orow.erase(it);
            else
                ++it;
        }
    }
    return out;
}

bool SparseMat::operator==(const SparseMat& o) const {
    return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

SparseMat SparseMat::transpose() const {
    SparseMat out(f_, cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (const auto& [c, v] : data_[static_cast<std::size_t>(r)])
            out.data_[static_cast<std::size_t>(c)].emplace(r, v);
    return out;
}

SparseMat SparseMat::kron(const SparseMat& a, const SparseMat& b) {
    if (a.f_ != b.f_) throw std::invalid_argument("SparseMat: field mismatch in kron");
    SparseMat out(a.f_, a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (int ra = 0; ra < a.rows_; ++ra) {
        for (const auto& [ca, va] : a.data_[static_cast<std::size_t>(ra)]) {
            for (int rb = 0; rb < b.rows_; ++rb) {
                auto& orow = out.data_[static_cast<std::size_t>(ra * b.rows_ + rb)];
                for (const auto& [cb, vb] : b.data_[static_cast<std::size_t>(rb)])
                    orow.emplace(ca * b.cols_ + cb, va * vb);
            }
        }
    }
    return out;
}

bool SparseMat::is_zero() const {
    for (const auto& row : data_)
        if (!row.empty()) return false;
    return true;
}

std::size_t SparseMat::nonzero_count() const {
    std::size_t n = 0;
    for (const auto& row : data_) n += row.size();
    return n;
}

std::optional<std::pair<int, int>> SparseMat::first_nonzero() const {
    for (int r = 0; r < rows_; ++r) {
        const auto& row = data_[static_cast<std::size_t>(r)];
        if (!row.empty()) return std::make_pair(r, row.begin()->first);
    }
    return std::nullopt;
}

int SparseMat::rank() const {
    // Forward elimination on a working copy; pivot rows chosen shortest-first
    // to limit fill-in.
    std::vector<std::map<int, Scalar>> rows = data_;
    std::vector<bool> used(rows.size(), false);
    int rank = 0;
    for (int c = 0; c < cols_; ++c) {
        int pivot = -1;
        std::size_t best = 0;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (used[r]) continue;
            auto it = rows[r].begin();
            if (it == rows[r].end() || it->first != c) continue;
            if (pivot == -1 || rows[r].size() < best) {
                pivot = static_cast<int>(r);
                best = rows[r].size();
            }
        }
        if (pivot == -1) continue;
        used[static_cast<std::size_t>(pivot)] = true;
        ++rank;
        const auto& prow = rows[static_cast<std::size_t>(pivot)];
        Scalar pinv = prow.at(c).inverse();
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (used[r]) continue;
            auto it = rows[r].begin();
            if (it == rows[r].end() || it->first != c) continue;
            Scalar factor = it->second * pinv;
            for (const auto& [pc, pv] : prow) {
                auto jt = rows[r].find(pc);
                if (jt == rows[r].end()) {
                    Scalar nv = -(factor * pv);
                    if (!nv.is_zero()) rows[r].emplace(pc, std::move(nv));
                } else {
                    jt->second -= factor * pv;
                    if (jt->second.is_zero()) rows[r].erase(jt);
                }
            }
        }
    }
    return rank;
}

bool SparseMat::invertible() const {
    if (rows_ != cols_) throw std::invalid_argument("SparseMat: invertible() needs a square matrix");
    return rank() == rows_;
}

std::optional<SparseMat> SparseMat::try_inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("SparseMat: try_inverse() needs a square matrix");
    // Gauss-Jordan on rows augmented with the identity.
    std::vector<std::map<int, Scalar>> left = data_;
    std::vector<std::map<int, Scalar>> right(left.size());
    for (std::size_t r = 0; r < right.size(); ++r)
        right[r].emplace(static_cast<int>(r), Scalar::one(f_));

    auto axpy = [&](std::map<int, Scalar>& dst, const Scalar& factor,
                    const std::map<int, Scalar>& src) {
        for (const auto& [c, v] : src) {
            auto it = dst.find(c);
            if (it == dst.end()) {
                Scalar nv = factor * v;
                if (!nv.is_zero()) dst.emplace(c, std::move(nv));
            } else {
                it->second += factor * v;
                if (it->second.is_zero()) dst.erase(it);
            }
        }
    };

    std::vector<int> pivot_row(static_cast<std::size_t>(cols_), -1);
    std::vector<bool> used(left.size(), false);
    for (int c = 0; c < cols_; ++c) {
        int pivot = -1;
        for (std::size_t r = 0; r < left.size(); ++r) {
            if (used[r]) continue;
            auto it = left[r].find(c);
            if (it != left[r].end()) { pivot = static_cast<int>(r); break; }
        }
        if (pivot == -1) return std::nullopt;
        auto pr = static_cast<std::size_t>(pivot);
        used[pr] = true;
        pivot_row[static_cast<std::size_t>(c)] = pivot;
        Scalar pinv = left[pr].at(c).inverse();
        for (auto& [cc, v] : left[pr]) v *= pinv;
        for (auto& [cc, v] : right[pr]) v *= pinv;
        for (std::size_t r = 0; r < left.size(); ++r) {
            if (r == pr) continue;
            auto it = left[r].find(c);
            if (it == left[r].end()) continue;
            Scalar factor = -it->second;
            axpy(left[r], factor, left[pr]);
            axpy(right[r], factor, right[pr]);
        }
    }
    SparseMat inv(f_, rows_, cols_);
    for (int c = 0; c < cols_; ++c)
        inv.data_[static_cast<std::size_t>(c)] =
            std::move(right[static_cast<std::size_t>(pivot_row[static_cast<std::size_t>(c)])]);
    return inv;
}

ComposeResult compose_and_invert(const std::vector<SparseMat>& maps) {
    if (maps.empty()) throw std::invalid_argument("compose_and_invert: no maps");
    SparseMat acc = maps.front();
    for (std::size_t i = 1; i < maps.size(); ++i) acc = acc * maps[i];
    bool inv = acc.rows() == acc.cols() && acc.invertible();
    return ComposeResult{std::move(acc), inv};
}

} // namespace pb
