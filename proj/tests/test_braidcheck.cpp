#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "posetbraid/braidcheck.hpp"

using namespace pb;

namespace {

std::shared_ptr<const IntervalBasis> basis_of(const Poset& p) {
    return std::make_shared<IntervalBasis>(p);
}

Poset two_chain() { return Poset::from_cover_relations({"x", "y"}, {{"x", "y"}}); }

Poset three_chain() {
    return Poset::from_cover_relations({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}});
}

Poset vee() { return Poset::from_cover_relations({"x", "y", "z"}, {{"x", "y"}, {"z", "y"}}); }

Poset diamond() {
    return Poset::from_cover_relations({"x", "y", "z", "w"},
                                       {{"x", "y"}, {"x", "z"}, {"y", "w"}, {"z", "w"}});
}

Poset two_components() { return Poset::from_cover_relations({"x", "y", "w"}, {{"x", "y"}}); }

Poset discrete_pair() { return Poset::from_cover_relations({"x", "y"}, {}); }

LambdaTensor flip_tensor(std::shared_ptr<const IntervalBasis> basis, const Field& fld) {
    LambdaTensor t(basis, fld);
    const int n = basis->size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t.set_coefficient(i, j, j, i, Scalar::from_int(fld, 1));
    return t;
}

// Two-chain tensor with invertible diagonal coefficients and no flanks.
// a4 must equal a1 * a3 / a2 for the tensor to verify.
LambdaTensor chain_tensor(const Field& fld, long a1, long a2, long a3, long a4) {
    auto basis = basis_of(two_chain());
    LambdaTensor t(basis, fld);
    const auto s = [&fld](long v) { return Scalar::from_int(fld, v); };
    t.set_coefficient(0, 0, 0, 0, s(1));
    t.set_coefficient(0, 2, 2, 0, s(1));
    t.set_coefficient(2, 0, 0, 2, s(1));
    t.set_coefficient(2, 2, 2, 2, s(1));
    t.set_coefficient(0, 1, 1, 0, s(a1));
    t.set_coefficient(1, 0, 0, 1, s(a2));
    t.set_coefficient(1, 2, 2, 1, s(a3));
    t.set_coefficient(2, 1, 1, 2, s(a4));
    t.set_coefficient(1, 1, 1, 1, s(a1) * s(a3));
    return t;
}

// Two-chain tensor with unit diagonal and flanking coefficients b1, b2,
// b3 = b2 and b4 = b1.
LambdaTensor chain_tensor_beta(const Field& fld, long b1v, long b2v) {
    auto basis = basis_of(two_chain());
    LambdaTensor t(basis, fld);
    const auto s = [&fld](long v) { return Scalar::from_int(fld, v); };
    const Scalar b1 = s(b1v), b2 = s(b2v), b3 = s(b2v), b4 = s(b1v);
    t.set_coefficient(0, 0, 0, 0, s(1));
    t.set_coefficient(0, 2, 2, 0, s(1));
    t.set_coefficient(2, 0, 0, 2, s(1));
    t.set_coefficient(2, 2, 2, 2, s(1));
    t.set_coefficient(0, 1, 1, 0, s(1));
    t.set_coefficient(1, 0, 0, 1, s(1));
    t.set_coefficient(1, 2, 2, 1, s(1));
    t.set_coefficient(2, 1, 1, 2, s(1));
    t.set_coefficient(1, 1, 1, 1, s(1));
    t.set_coefficient(0, 1, 0, 0, b1);
    t.set_coefficient(0, 1, 2, 0, -b1);
    t.set_coefficient(1, 0, 0, 0, b2);
    t.set_coefficient(1, 0, 0, 2, -b2);
    t.set_coefficient(1, 2, 2, 0, b3);
    t.set_coefficient(1, 2, 2, 2, -b3);
    t.set_coefficient(2, 1, 0, 2, b4);
    t.set_coefficient(2, 1, 2, 2, -b4);
    t.set_coefficient(1, 1, 0, 1, b4);
    t.set_coefficient(1, 1, 1, 0, b3);
    t.set_coefficient(1, 1, 1, 2, -b2);
    t.set_coefficient(1, 1, 2, 1, -b1);
    t.set_coefficient(1, 1, 0, 2, -b2 * b4);
    t.set_coefficient(1, 1, 2, 0, -b1 * b3);
    t.set_coefficient(1, 1, 2, 2, b2 * b4 + b1 * b3);
    return t;
}

// Two-chain tensor with unit diagonal and one group-like column entry
// pair, parameterized by the corner coefficient g.
LambdaTensor chain_tensor_corner(const Field& fld, long gv) {
    auto basis = basis_of(two_chain());
    LambdaTensor t(basis, fld);
    const auto s = [&fld](long v) { return Scalar::from_int(fld, v); };
    const Scalar g = s(gv);
    t.set_coefficient(0, 0, 0, 0, s(1));
    t.set_coefficient(0, 2, 2, 0, s(1));
    t.set_coefficient(2, 0, 0, 2, s(1));
    t.set_coefficient(2, 2, 2, 2, s(1));
    t.set_coefficient(0, 1, 1, 0, s(1));
    t.set_coefficient(1, 0, 0, 1, s(1));
    t.set_coefficient(1, 2, 2, 1, s(1));
    t.set_coefficient(2, 1, 1, 2, s(1));
    t.set_coefficient(1, 1, 1, 1, s(1));
    t.set_coefficient(1, 1, 0, 0, g);
    t.set_coefficient(1, 1, 2, 2, -g);
    return t;
}

} // namespace

TEST_CASE("the flip tensor solves the braid equation on every sample poset") {
    const Poset posets[] = {two_chain(), three_chain(), vee(), diamond(), two_components()};
    const Field fields[] = {Field::rationals(), Field::prime(5)};
    for (const auto& p : posets)
        for (const auto& fld : fields) {
            auto basis = basis_of(p);
            const LambdaTensor t = flip_tensor(basis, fld);
            const BraidReport rep = braid_residual(t);
            CHECK(rep.residual_is_zero);
            CHECK_FALSE(rep.witness.has_value());
            CHECK(rep.sextuples_checked);
            CHECK(rep.per_sextuple_failures.empty());
        }
}

TEST_CASE("verified two-chain tensors have zero residual") {
    const BraidReport diag = braid_residual(chain_tensor(Field::rationals(), 2, 3, 6, 4));
    CHECK(diag.residual_is_zero);
    CHECK(diag.sextuples_checked);

    const BraidReport beta = braid_residual(chain_tensor_beta(Field::rationals(), 1, 2));
    CHECK(beta.residual_is_zero);
    CHECK(beta.sextuples_checked);

    const BraidReport corner = braid_residual(chain_tensor_corner(Field::rationals(), 5));
    CHECK(corner.residual_is_zero);
    CHECK(corner.sextuples_checked);

    const BraidReport modular = braid_residual(chain_tensor(Field::prime(7), 2, 3, 6, 4));
    CHECK(modular.residual_is_zero);
}

TEST_CASE("a lone flank coefficient fails both routes consistently") {
    // Unit diagonal with a single flank pattern: counit, support and the
    // factorization survive, but the braid equation does not.
    LambdaTensor t = flip_tensor(basis_of(two_chain()), Field::rationals());
    const Scalar one = Scalar::one(t.field());
    t.set_coefficient(0, 1, 0, 0, one);
    t.set_coefficient(0, 1, 2, 0, -one);
    t.set_coefficient(1, 1, 2, 1, -one);

    const BraidReport rep = braid_residual(t);
    CHECK_FALSE(rep.residual_is_zero);
    REQUIRE(rep.witness.has_value());
    CHECK_FALSE(rep.witness->value.is_zero());
    for (int v : rep.witness->input) {
        CHECK(v >= 0);
        CHECK(v < 3);
    }
    CHECK(rep.sextuples_checked);
    REQUIRE_FALSE(rep.per_sextuple_failures.empty());

    const SetSolution s = extract_restriction(t);
    const CheckResult res = check_sextuple(t, s, rep.per_sextuple_failures.front());
    CHECK_FALSE(res.passed);
    CHECK(res.detail.find("lhs") != std::string::npos);
}

TEST_CASE("the sextuple route is skipped without a usable restriction") {
    auto basis = basis_of(two_chain());

    LambdaTensor empty(basis, Field::rationals());
    const BraidReport rep = braid_residual(empty);
    CHECK(rep.residual_is_zero);
    CHECK_FALSE(rep.sextuples_checked);

    LambdaTensor outside = flip_tensor(basis, Field::rationals());
    outside.set_coefficient(0, 0, 2, 2, Scalar::from_int(outside.field(), 1));
    CHECK_FALSE(braid_residual(outside).sextuples_checked);
}

TEST_CASE("sextuple enumeration counts and containment validation") {
    CHECK(enumerate_sextuples(IntervalBasis(two_chain())).size() == 125);
    CHECK(enumerate_sextuples(IntervalBasis(vee())).size() == 729);

    auto basis = basis_of(two_chain());
    const LambdaTensor t = flip_tensor(basis, Field::rationals());
    const SetSolution s = extract_restriction(t);
    CHECK_THROWS_WITH_AS(check_sextuple(t, s, {0, 0, 0, 2, 0, 0}),
                         doctest::Contains("containment"), std::invalid_argument);

    const CheckResult grouplike = check_sextuple(t, s, {0, 0, 0, 0, 0, 0});
    CHECK(grouplike.passed);
}

TEST_CASE("small interval diagnostics pass on verified tensors") {
    const LambdaTensor tensors[] = {chain_tensor_beta(Field::rationals(), 1, 2),
                                    chain_tensor(Field::rationals(), 2, 3, 6, 4),
                                    flip_tensor(basis_of(vee()), Field::prime(5)),
                                    flip_tensor(basis_of(diamond()), Field::rationals())};
    for (const auto& t : tensors) {
        const SetSolution s = extract_restriction(t);
        const SmallIntervalReport rep = small_interval_diagnostics(t, s);
        CHECK(rep.items.size() == 9);
        for (const auto& [name, res] : rep.items) {
            INFO(name, ": ", res.detail);
            CHECK(res.passed);
        }
    }
    const SmallIntervalReport rep = small_interval_diagnostics(
        chain_tensor_beta(Field::rationals(), 1, 2),
        extract_restriction(chain_tensor_beta(Field::rationals(), 1, 2)));
    CHECK(rep.passed());
    CHECK(rep.items[2].first == "item-4");
    CHECK(rep.items[2].second.detail.find("implied by item-2") != std::string::npos);
}

TEST_CASE("small interval diagnostics localize a broken coefficient") {
    // Unbalanced flank against unequal diagonal entries violates item 2.
    LambdaTensor t = flip_tensor(basis_of(two_chain()), Field::rationals());
    t.set_coefficient(1, 0, 0, 1, Scalar::from_int(t.field(), 2));
    t.set_coefficient(1, 2, 2, 0, Scalar::from_int(t.field(), 1));
    const SetSolution s = extract_restriction(t);
    const SmallIntervalReport rep = small_interval_diagnostics(t, s);
    CHECK_FALSE(rep.passed());
    REQUIRE(rep.items[0].first == "item-2");
    CHECK_FALSE(rep.items[0].second.passed);
    CHECK(rep.items[0].second.detail.find("[x,y]") != std::string::npos);
}

TEST_CASE("implied items are still evaluated directly") {
    // Passes item 2 (no lower flanks) yet fails item 4, which is only a
    // consequence of item 2 for tensors with valid counit.
    LambdaTensor t = flip_tensor(basis_of(two_chain()), Field::rationals());
    t.set_coefficient(1, 0, 0, 2, Scalar::from_int(t.field(), 1));
    t.set_coefficient(1, 2, 2, 1, Scalar::from_int(t.field(), 2));
    const SetSolution s = extract_restriction(t);
    const SmallIntervalReport rep = small_interval_diagnostics(t, s);
    CHECK(rep.items[0].second.passed);
    CHECK_FALSE(rep.items[2].second.passed);
    CHECK(rep.items[2].second.detail.find("implied by item-2; ") != std::string::npos);
    CHECK_FALSE(check_counit(t).passed);
}

TEST_CASE("alignment is the vanishing of the two by two determinant") {
    const Field q = Field::rationals();
    const auto s = [&q](long v) { return Scalar::from_int(q, v); };
    CHECK(aligned({s(1), s(0)}, {s(2), s(0)}));
    CHECK(aligned({s(1), s(2)}, {s(2), s(4)}));
    CHECK(aligned({s(0), s(0)}, {s(3), s(7)}));
    CHECK_FALSE(aligned({s(1), s(0)}, {s(0), s(1)}));
    CHECK_FALSE(aligned({s(1), s(2)}, {s(2), s(3)}));
}

TEST_CASE("linear part data from two-chain tensors") {
    const LambdaTensor t = chain_tensor(Field::rationals(), 2, 3, 6, 4);
    const LinearPartData d = LinearPartData::from_tensor(t);
    CHECK(d.n == 1);
    CHECK(d.w == Scalar::one(d.field));
    CHECK((d.phi_r == std::vector<int>{0, 1}));
    CHECK((d.phi_l == std::vector<int>{0, 1}));
    CHECK(d.alpha_r.at({0, 0, 1}) == Scalar::from_int(d.field, 3));
    CHECK(d.alpha_r.at({1, 0, 1}) == Scalar::from_int(d.field, 6));
    CHECK(d.alpha_l.at({0, 0, 1}) == Scalar::from_int(d.field, 2));
    CHECK(d.alpha_l.at({1, 0, 1}) == Scalar::from_int(d.field, 4));
    CHECK(d.beta_r.at({0, 0, 1}).is_zero());
    CHECK(d.C.at({0, 1}) == Scalar::one(d.field));
    CHECK(d.gamma_r.at({0, 1}) == Scalar::one(d.field));
    REQUIRE(d.wp.at({0, 1}).size() == 1);
    CHECK(d.wp.at({0, 1})[0] == Scalar::one(d.field));

    CHECK(linear_part_check(d, LinearPartMode::TwoSided).passed());
    CHECK(linear_part_check(d, LinearPartMode::Symmetric).passed());

    const LambdaTensor tb = chain_tensor_beta(Field::rationals(), 1, 2);
    const LinearPartData db = LinearPartData::from_tensor(tb);
    CHECK(db.beta_r.at({0, 0, 1}) == Scalar::from_int(db.field, 2));
    CHECK(db.beta_l.at({0, 0, 1}) == Scalar::from_int(db.field, 1));
    CHECK(db.beta_r.at({1, 0, 1}) == Scalar::from_int(db.field, 2));
    CHECK(db.beta_l.at({1, 0, 1}) == Scalar::from_int(db.field, 1));
    CHECK(linear_part_check(db, LinearPartMode::TwoSided).passed());
    CHECK(linear_part_check(db, LinearPartMode::Symmetric).passed());
}

TEST_CASE("the symmetric mode detects a missing common constant") {
    // Both one-sided families are aligned, but the lone nonzero flank sits
    // in the opposite family from the nontrivial diagonal entry, so no
    // single constant relates them.
    LambdaTensor t = flip_tensor(basis_of(two_chain()), Field::rationals());
    t.set_coefficient(1, 0, 0, 1, Scalar::from_int(t.field(), 2));
    t.set_coefficient(0, 1, 0, 0, Scalar::from_int(t.field(), 1));
    const LinearPartData d = LinearPartData::from_tensor(t);

    const LinearPartReport two_sided = linear_part_check(d, LinearPartMode::TwoSided);
    CHECK(two_sided.passed());

    const LinearPartReport symmetric = linear_part_check(d, LinearPartMode::Symmetric);
    CHECK_FALSE(symmetric.passed());
    CHECK(symmetric.items[0].second.passed);
    CHECK(symmetric.items[1].second.passed);
    CHECK_FALSE(symmetric.items[2].second.passed);
    CHECK(symmetric.items[2].second.detail.find("share a line") != std::string::npos);
}

TEST_CASE("misaligned vectors produce a located witness") {
    LinearPartData d = LinearPartData::from_tensor(chain_tensor_beta(Field::rationals(), 1, 2));
    d.alpha_r[{1, 0, 1}] = Scalar::from_int(d.field, 3);
    const LinearPartReport rep = linear_part_check(d, LinearPartMode::TwoSided);
    CHECK(rep.items[0].second.passed);
    CHECK_FALSE(rep.items[2].second.passed);
    CHECK(rep.items[2].second.detail.find("not aligned") != std::string::npos);
    CHECK(rep.items[2].second.detail.find("[x,y]") != std::string::npos);
    CHECK(rep.items[3].second.passed);
}

TEST_CASE("failed ratio constancy suppresses the alignment items") {
    LinearPartData d = LinearPartData::from_tensor(chain_tensor(Field::rationals(), 2, 3, 6, 4));
    d.alpha_r[{1, 0, 1}] = Scalar::zero(d.field);
    const LinearPartReport rep = linear_part_check(d, LinearPartMode::TwoSided);
    CHECK_FALSE(rep.items[0].second.passed);
    CHECK(rep.items[0].second.detail.find("vanishes") != std::string::npos);
    CHECK_FALSE(rep.items[2].second.passed);
    CHECK(rep.items[2].second.detail == "not evaluated: ratio constancy failed");
    CHECK(rep.items[1].second.passed);
    CHECK(rep.items[3].second.passed);
}

TEST_CASE("linear part validation rejects malformed data") {
    const LinearPartData good = LinearPartData::from_tensor(chain_tensor_beta(Field::rationals(), 1, 2));

    LinearPartData bad_root = good;
    bad_root.w = Scalar::from_int(bad_root.field, 2);
    CHECK_THROWS_WITH_AS(linear_part_check(bad_root, LinearPartMode::TwoSided),
                         doctest::Contains("root of unity"), std::invalid_argument);

    LinearPartData bad_gamma = good;
    bad_gamma.gamma_r[{0, 1}] = Scalar::from_int(bad_gamma.field, 5);
    CHECK_THROWS_WITH_AS(linear_part_check(bad_gamma, LinearPartMode::TwoSided),
                         doctest::Contains("ratio product"), std::invalid_argument);

    LinearPartData bad_seq = good;
    bad_seq.wp[{0, 1}] = {Scalar::from_int(bad_seq.field, 7)};
    CHECK_THROWS_WITH_AS(linear_part_check(bad_seq, LinearPartMode::TwoSided),
                         doctest::Contains("formula"), std::invalid_argument);

    LinearPartData missing = good;
    missing.beta_l.erase({0, 0, 1});
    CHECK_THROWS_WITH_AS(linear_part_check(missing, LinearPartMode::TwoSided),
                         doctest::Contains("missing"), std::invalid_argument);

    LinearPartData bad_order = good;
    bad_order.n = 0;
    CHECK_THROWS_WITH_AS(linear_part_check(bad_order, LinearPartMode::TwoSided),
                         doctest::Contains("positive"), std::invalid_argument);
}

TEST_CASE("order-two translations request a primitive square root of unity") {
    auto basis = basis_of(discrete_pair());

    LambdaTensor t(basis, Field::rationals());
    t.set_coefficient(0, 0, 1, 1, Scalar::one(t.field()));
    t.set_coefficient(1, 1, 0, 0, Scalar::one(t.field()));
    t.set_coefficient(0, 1, 0, 1, Scalar::one(t.field()));
    t.set_coefficient(1, 0, 1, 0, Scalar::one(t.field()));
    const LinearPartData d = LinearPartData::from_tensor(t);
    CHECK(d.n == 2);
    CHECK(d.w == Scalar::from_int(d.field, -1));
    CHECK(linear_part_check(d, LinearPartMode::TwoSided).passed());
    CHECK(linear_part_check(d, LinearPartMode::Symmetric).passed());

    LambdaTensor t2(basis, Field::prime(2));
    t2.set_coefficient(0, 0, 1, 1, Scalar::one(t2.field()));
    t2.set_coefficient(1, 1, 0, 0, Scalar::one(t2.field()));
    t2.set_coefficient(0, 1, 0, 1, Scalar::one(t2.field()));
    t2.set_coefficient(1, 0, 1, 0, Scalar::one(t2.field()));
    CHECK_THROWS_WITH_AS(LinearPartData::from_tensor(t2),
                         doctest::Contains("no primitive root"), std::domain_error);
}
