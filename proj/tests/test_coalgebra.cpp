#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "posetbraid/coalgebra.hpp"

using pb::Field;
using pb::IntervalBasis;
using pb::Poset;
using pb::Scalar;
using pb::SparseMat;

namespace {

IntervalBasis two_chain_basis() {
    return IntervalBasis(Poset::from_cover_relations({"x", "y"}, {{"x", "y"}}));
}

IntervalBasis vee_basis() {
    return IntervalBasis(Poset::from_cover_relations({"x", "y", "z"}, {{"x", "y"}, {"z", "y"}}));
}

std::vector<IntervalBasis> sample_bases() {
    return {
        two_chain_basis(),
        vee_basis(),
        IntervalBasis(Poset::discrete({"u"})),
        IntervalBasis(Poset::from_cover_relations({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}})),
        IntervalBasis(Poset::from_cover_relations(
            {"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}})),
    };
}

} // namespace

TEST_CASE("basis enumerates Y in lexicographic index order") {
    IntervalBasis b = two_chain_basis();
    REQUIRE(b.size() == 3);
    CHECK(b.pair_at(0) == std::make_pair(0, 0));
    CHECK(b.pair_at(1) == std::make_pair(0, 1));
    CHECK(b.pair_at(2) == std::make_pair(1, 1));
    CHECK(b.index_of(0, 1) == 1);
    CHECK_THROWS_AS(b.index_of(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(b.index_of(0, 5), std::out_of_range);
    CHECK_THROWS_AS(b.pair_at(3), std::out_of_range);

    IntervalBasis v = vee_basis();
    REQUIRE(v.size() == 5);
    CHECK(v.pair_at(0) == std::make_pair(0, 0));   // (x,x)
    CHECK(v.pair_at(1) == std::make_pair(0, 1));   // (x,y)
    CHECK(v.pair_at(2) == std::make_pair(1, 1));   // (y,y)
    CHECK(v.pair_at(3) == std::make_pair(2, 1));   // (z,y)
    CHECK(v.pair_at(4) == std::make_pair(2, 2));   // (z,z)
    CHECK(!v.contains(0, 2));
    CHECK(v.contains(2, 1));
}

TEST_CASE("group-likes are the diagonal pairs") {
    CHECK(two_chain_basis().group_likes() == std::vector<int>{0, 2});
    CHECK(vee_basis().group_likes() == std::vector<int>{0, 2, 4});
    CHECK(IntervalBasis(Poset::discrete({"u"})).group_likes() == std::vector<int>{0});
}

TEST_CASE("delta and epsilon on basis pairs") {
    IntervalBasis b = two_chain_basis();
    Field q = Field::rationals();
    using P = std::vector<std::pair<int, int>>;
    CHECK(b.delta(1) == P{{0, 1}, {1, 2}});        // (x,x)(x,y) + (x,y)(y,y)
    CHECK(b.delta(0) == P{{0, 0}});
    CHECK(b.delta(2) == P{{2, 2}});
    CHECK(b.epsilon(q, 0).is_one());
    CHECK(b.epsilon(q, 1).is_zero());
    CHECK(b.epsilon(q, 2).is_one());

    IntervalBasis v = vee_basis();
    CHECK(v.delta(3) == P{{3, 2}, {4, 3}});        // (z,y): (z,y)(y,y) + (z,z)(z,y)
}

TEST_CASE("coassociativity and counit laws as exact matrix identities") {
    for (const Field& f : {Field::rationals(), Field::prime(5)}) {
        for (const IntervalBasis& b : sample_bases()) {
            int n = b.size();
            SparseMat d = b.delta_matrix(f);
            SparseMat id = SparseMat::identity(f, n);
            CHECK(SparseMat::kron(d, id) * d == SparseMat::kron(id, d) * d);
            SparseMat eps = b.counit_matrix(f);
            CHECK(SparseMat::kron(eps, id) * d == id);
            CHECK(SparseMat::kron(id, eps) * d == id);
        }
    }
}

TEST_CASE("delta of group-likes is diagonal") {
    for (const IntervalBasis& b : sample_bases()) {
        for (int g : b.group_likes()) {
            auto terms = b.delta(g);
            REQUIRE(terms.size() == 1);
            CHECK(terms[0] == std::make_pair(g, g));
        }
    }
}

TEST_CASE("delta2 matches the swap-of-middle-slots construction") {
    for (const Field& f : {Field::rationals(), Field::prime(3)}) {
        for (const IntervalBasis& b : sample_bases()) {
            int n = b.size();
            SparseMat d = b.delta_matrix(f);
            SparseMat dd = SparseMat::kron(d, d);
            SparseMat p23(f, n * n * n * n, n * n * n * n);
            for (int i1 = 0; i1 < n; ++i1)
                for (int i2 = 0; i2 < n; ++i2)
                    for (int i3 = 0; i3 < n; ++i3)
                        for (int i4 = 0; i4 < n; ++i4)
                            p23.set_at(((i1 * n + i3) * n + i2) * n + i4,
                                       ((i1 * n + i2) * n + i3) * n + i4, Scalar::one(f));
            CHECK(b.delta2_matrix(f) == p23 * dd);
        }
    }
}

TEST_CASE("tensor_lift agrees with the explicit index formula") {
    pb::ScalarRng rng(23);
    for (const Field& f : {Field::rationals(), Field::prime(3)}) {
        IntervalBasis b = two_chain_basis();
        int n = b.size();
        SparseMat m(f, n * n, n * n);
        for (int r = 0; r < n * n; ++r)
            for (int c = 0; c < n * n; ++c)
                if (rng.below(3) == 0) m.set_at(r, c, rng.uniform(f));

        SparseMat l12 = tensor_lift(b, m, 12);
        SparseMat l23 = tensor_lift(b, m, 23);
        REQUIRE(l12.rows() == n * n * n);
        REQUIRE(l12.cols() == n * n * n);
        for (int i1 = 0; i1 < n; ++i1)
            for (int i2 = 0; i2 < n; ++i2)
                for (int i3 = 0; i3 < n; ++i3)
                    for (int j1 = 0; j1 < n; ++j1)
                        for (int j2 = 0; j2 < n; ++j2)
                            for (int j3 = 0; j3 < n; ++j3) {
                                int row = (i1 * n + i2) * n + i3;
                                int col = (j1 * n + j2) * n + j3;
                                Scalar want12 = i3 == j3
                                    ? m.at(i1 * n + i2, j1 * n + j2) : Scalar::zero(f);
                                Scalar want23 = i1 == j1
                                    ? m.at(i2 * n + i3, j2 * n + j3) : Scalar::zero(f);
                                CHECK(l12.at(row, col) == want12);
                                CHECK(l23.at(row, col) == want23);
                            }
    }
}

TEST_CASE("tensor_lift of identity and flip behave on basis triples") {
    Field q = Field::rationals();
    IntervalBasis b = two_chain_basis();
    int n = b.size();
    SparseMat id2 = SparseMat::identity(q, n * n);
    CHECK(tensor_lift(b, id2, 12) == SparseMat::identity(q, n * n * n));
    CHECK(tensor_lift(b, id2, 23) == SparseMat::identity(q, n * n * n));

    SparseMat flip(q, n * n, n * n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) flip.set_at(v * n + u, u * n + v, Scalar::one(q));
    SparseMat l12 = tensor_lift(b, flip, 12);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            for (int w = 0; w < n; ++w) {
                int in = (u * n + v) * n + w;
                int out = (v * n + u) * n + w;
                CHECK(l12.at(out, in).is_one());
            }

    CHECK_THROWS_AS(tensor_lift(b, SparseMat::identity(q, n), 12), std::invalid_argument);
    CHECK_THROWS_AS(tensor_lift(b, id2, 13), std::invalid_argument);
}

TEST_CASE("lifted maps on disjoint slots commute") {
    pb::ScalarRng rng(29);
    Field f = Field::prime(7);
    IntervalBasis b = two_chain_basis();
    int n = b.size();
    // a acts on slot 1, c acts on slot 3: (a ot id ot id)(id ot id ot c) commutes.
    SparseMat a(f, n, n), c(f, n, n);
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
            a.set_at(r, s, rng.uniform(f));
            c.set_at(r, s, rng.uniform(f));
        }
    SparseMat id = SparseMat::identity(f, n);
    SparseMat lift_a = tensor_lift(b, SparseMat::kron(a, id), 12);
    SparseMat lift_c = tensor_lift(b, SparseMat::kron(id, c), 23);
    CHECK(lift_a * lift_c == lift_c * lift_a);
}
