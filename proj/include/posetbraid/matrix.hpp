#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "posetbraid/scalar.hpp"

namespace pb {

// Exact matrix over a fixed field, stored as sparse rows. Zero entries are
// never stored; all arithmetic is exact. Row/column indices are 0-based.
class SparseMat {
public:
    SparseMat(const Field& f, int rows, int cols);
    static SparseMat identity(const Field& f, int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Field& field() const { return f_; }

    // Accumulates v into (r, c); erases the entry when the sum is zero.
    void add_at(int r, int c, const Scalar& v);
    void set_at(int r, int c, const Scalar& v);
    Scalar at(int r, int c) const;
    const std::map<int, Scalar>& row(int r) const;

    SparseMat operator+(const SparseMat& o) const;
    SparseMat operator-(const SparseMat& o) const;
    SparseMat operator*(const SparseMat& o) const;
    bool operator==(const SparseMat& o) const;
    bool operator!=(const SparseMat& o) const { return !(*this == o); }

    SparseMat transpose() const;
    static SparseMat kron(const SparseMat& a, const SparseMat& b);

    bool is_zero() const;
    std::size_t nonzero_count() const;
    // Lexicographically first nonzero position, as a witness.
    std::optional<std::pair<int, int>> first_nonzero() const;

    // Exact Gaussian elimination. invertible() requires a square matrix.
    int rank() const;
    bool invertible() const;
    std::optional<SparseMat> try_inverse() const;

private:
    void check_index(int r, int c) const;

    Field f_;
    int rows_, cols_;
    std::vector<std::map<int, Scalar>> data_;
};

// Exact product of a dimension-compatible chain, plus invertibility of the
// result. Throws std::invalid_argument on dimension mismatch or empty input.
struct ComposeResult {
    SparseMat product;
    bool invertible;
};
ComposeResult compose_and_invert(const std::vector<SparseMat>& maps);

} // namespace pb
