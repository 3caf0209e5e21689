#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "posetbraid/braidcheck.hpp"
#include "posetbraid/families.hpp"
#include "posetbraid/structure.hpp"

using namespace pb;

namespace {

std::shared_ptr<const IntervalBasis> basis_of(const Poset& p) {
    return std::make_shared<IntervalBasis>(p);
}

Scalar sc(const Field& f, long v) { return Scalar::from_int(f, v); }

FamilyInstance make(const std::string& id, const Field& f,
                    const std::map<std::string, long>& params) {
    FamilyInstance inst{id, {}, f};
    for (const auto& [name, v] : params) inst.params.emplace(name, sc(f, v));
    return inst;
}

// Display coordinates: 1-based, row = output pair, col = input pair.
Scalar entry(const LambdaTensor& t, int row, int col) {
    return t.to_matrix().at(row - 1, col - 1);
}

std::string realize_error(const FamilyInstance& inst) {
    try {
        realize(inst);
    } catch (const std::invalid_argument& e) {
        return e.what();
    }
    return "";
}

bool includes_family(const std::vector<FamilyInstance>& matches, const std::string& id) {
    for (const auto& m : matches)
        if (m.family_id == id) return true;
    return false;
}

// Column of the 25x25 display holding the input pair with the given interval
// f-codes, and the row holding an output pair likewise.
int vee_col(int f1, int f2) { return 5 * f1 + f2 + 1; }

// f-codes of the twelve alpha positions, index 1..12: (row, col).
const std::pair<int, int> kAlphaCell[13] = {{0, 0},   {20, 2}, {24, 6},  {14, 8}, {18, 12},
                                            {4, 10},  {16, 22}, {10, 4}, {22, 16}, {8, 14},
                                            {12, 18}, {2, 20}, {6, 24}};

} // namespace

TEST_CASE("poset builders and family roster") {
    const Poset chain = chain_poset();
    CHECK(chain.size() == 2);
    CHECK(chain.leq(0, 1));
    CHECK_FALSE(chain.leq(1, 0));

    const Poset vee = vee_poset();
    CHECK(vee.size() == 3);
    CHECK(vee.leq(0, 1));
    CHECK(vee.leq(2, 1));
    CHECK_FALSE(vee.leq(0, 2));
    CHECK_FALSE(vee.leq(2, 0));

    const auto& ids = family_ids();
    CHECK(ids.size() == 18);
    int chains = 0;
    for (const auto& id : ids)
        if (is_chain_family(id)) ++chains;
    CHECK(chains == 10);
    CHECK(is_chain_family("T56-4b-ii"));
    CHECK_FALSE(is_chain_family("TAB1-3c"));
}

TEST_CASE("flip solution matches exactly the unconstrained chain family") {
    const Field q = Field::rationals();
    const LambdaTensor flip = flip_solution(basis_of(chain_poset()), q);
    CHECK(verify_structure(flip).passed());
    CHECK(braid_residual(flip).residual_is_zero);

    const auto matches = family_membership(flip);
    REQUIRE(matches.size() == 1);
    CHECK(matches[0].family_id == "T56-1");
    CHECK(matches[0].params.at("alpha1") == Scalar::one(q));
    CHECK(matches[0].params.at("alpha2") == Scalar::one(q));
    CHECK(matches[0].params.at("alpha3") == Scalar::one(q));
}

TEST_CASE("chain family frozen values") {
    const Field q = Field::rationals();

    SUBCASE("derived fourth alpha and center") {
        const auto t = realize(make("T56-1", q, {{"alpha1", 2}, {"alpha2", 1}, {"alpha3", 3}}));
        CHECK(entry(t, 6, 8) == sc(q, 6));
        CHECK(entry(t, 5, 5) == sc(q, 6));
        CHECK(entry(t, 4, 2) == sc(q, 2));
        CHECK(entry(t, 2, 4) == sc(q, 1));
        CHECK(entry(t, 8, 6) == sc(q, 3));
        CHECK(braid_residual(t).residual_is_zero);
    }

    SUBCASE("closing gamma entry") {
        const auto t =
            realize(make("T56-3a", q, {{"beta1", 1}, {"beta2", 2}, {"Gamma1", 0}}));
        CHECK(entry(t, 9, 5) == sc(q, 4));
        CHECK(braid_residual(t).residual_is_zero);
    }

    SUBCASE("rejected degenerate parameters") {
        const auto inst = make("T56-3b", q, {{"beta1", 0}, {"beta3", 0}});
        CHECK_THROWS_AS(realize(inst), std::invalid_argument);
        CHECK(realize_error(inst) == "T56-3b requires beta1 + beta3 != 0");
    }
}

TEST_CASE("chain matrix zero pattern") {
    const Field q = Field::rationals();
    const auto t = realize(make("T56-4c", q, {{"C", 2}, {"beta1", 1}, {"beta2", 3}, {"beta3", 5}}));
    const auto m = t.to_matrix();
    // Allowed cells: four point-input corners, one alpha and a +/- beta pair
    // per mixed column, and the full middle column.
    const std::set<std::pair<int, int>> allowed = {
        {1, 1}, {3, 7}, {7, 3}, {9, 9}, {4, 2}, {1, 2}, {7, 2},  {2, 4}, {1, 4},
        {3, 4}, {8, 6}, {7, 6}, {9, 6}, {6, 8}, {3, 8}, {9, 8},  {1, 5}, {2, 5},
        {3, 5}, {4, 5}, {5, 5}, {6, 5}, {7, 5}, {8, 5}, {9, 5}};
    for (int row = 1; row <= 9; ++row)
        for (int col = 1; col <= 9; ++col)
            if (!allowed.count({row, col})) CHECK(m.at(row - 1, col - 1).is_zero());
    CHECK(entry(t, 1, 1) == Scalar::one(q));
    CHECK(entry(t, 9, 5) == -(entry(t, 1, 5) + entry(t, 3, 5) + entry(t, 7, 5)));
}

TEST_CASE("common ratio family keeps alpha = 1 + C beta") {
    const Field f = Field::prime(11);
    ScalarRng rng(31);
    for (const char* id : {"T56-4a-i", "T56-4c"}) {
        const auto inst = random_instance(id, f, rng);
        const auto t = realize(inst);
        const Scalar c = inst.params.at("C");
        const Scalar one = Scalar::one(f);
        // (alpha, +beta) positions per flank column.
        const int cell[4][3] = {{4, 1, 2}, {2, 1, 4}, {8, 7, 6}, {6, 3, 8}};
        for (const auto& [ar, br, col] : cell) {
            CHECK(entry(t, ar, col) == one + c * entry(t, br, col));
        }
    }
}

TEST_CASE("half-ratio family constraint edges") {
    const Field q = Field::rationals();

    SUBCASE("interior stratum pins the gamma") {
        CHECK_NOTHROW(realize(
            make("T56-4b-i", q, {{"beta1", 1}, {"beta3", 3}, {"beta4", 3}, {"Gamma1", 2}})));
        const auto bad =
            make("T56-4b-i", q, {{"beta1", 1}, {"beta3", 3}, {"beta4", 3}, {"Gamma1", 1}});
        CHECK(realize_error(bad) ==
              "T56-4b-i requires 2*Gamma1 = beta1*(beta1 + beta3) when beta3 is not 0 or beta1");
    }

    SUBCASE("boundary strata leave the gamma free") {
        const auto zero_b3 =
            make("T56-4b-i", q, {{"beta1", 1}, {"beta3", 0}, {"beta4", 0}, {"Gamma1", 7}});
        const auto equal_b3 =
            make("T56-4b-i", q, {{"beta1", 1}, {"beta3", 1}, {"beta4", 1}, {"Gamma1", 5}});
        for (const auto& inst : {zero_b3, equal_b3}) {
            const auto t = realize(inst);
            CHECK(verify_structure(t).passed());
            CHECK(braid_residual(t).residual_is_zero);
        }
    }

    SUBCASE("rejections") {
        CHECK(realize_error(make("T56-4b-i", q,
                                 {{"beta1", 1}, {"beta3", 3}, {"beta4", 2}, {"Gamma1", 2}})) ==
              "T56-4b-i requires beta4 = beta3");
        CHECK(realize_error(make("T56-4b-i", q,
                                 {{"beta1", 2}, {"beta3", 1}, {"beta4", 1}, {"Gamma1", 3}})) ==
              "T56-4b-i requires beta3 != beta1/2");
        const Field f2 = Field::prime(2);
        CHECK(realize_error(make("T56-4b-i", f2,
                                 {{"beta1", 1}, {"beta3", 1}, {"beta4", 1}, {"Gamma1", 0}})) ==
              "T56-4b-i requires characteristic != 2");
    }
}

TEST_CASE("vee family frozen values") {
    const Field q = Field::rationals();

    SUBCASE("all-alpha family is supported on corners and alphas only") {
        const auto t = realize(make(
            "TAB1-1", q, {{"alpha1", 1}, {"alpha4", 1}, {"alpha6", 1}, {"C1", 1}, {"C2", 1}}));
        const auto m = t.to_matrix();
        // Nine corners, twelve alphas and the four alpha-product cells.
        CHECK(m.nonzero_count() == 25);
        for (const auto& [row, col] : {std::pair{19, 7}, {9, 9}, {17, 17}, {7, 19}})
            CHECK(m.at(row - 1, col - 1) == Scalar::one(q));
        // Point-input corners carry 1; with unit parameters every alpha is 1.
        for (int f1 : {0, 2, 4})
            for (int f2 : {0, 2, 4}) {
                int row = vee_col(4 - f2, 4 - f1);
                CHECK(m.at(row - 1, vee_col(f1, f2) - 1) == Scalar::one(q));
            }
        for (int k = 1; k <= 12; ++k)
            CHECK(m.at(kAlphaCell[k].first - 1, kAlphaCell[k].second - 1) == Scalar::one(q));
        CHECK(braid_residual(t).residual_is_zero);
    }

    SUBCASE("mirrored betas from the closing constant") {
        const auto t = realize(
            make("TAB1-3a", q, {{"beta1", 1}, {"C1", 1}, {"Gamma1", 0}, {"Gamma10", 0}}));
        // C4 = -C1(beta1 + beta2) = -2, so beta_{13-j} = C4 + C1 beta_j = -1.
        CHECK(entry(t, 25, 2) == sc(q, 1));
        CHECK(entry(t, 5, 4) == sc(q, -1));
        CHECK(entry(t, 15, 4) == sc(q, 1));
        CHECK(entry(t, 1, 24) == sc(q, -1));
        CHECK(entry(t, 11, 24) == sc(q, 1));
        CHECK(braid_residual(t).residual_is_zero);
    }

    SUBCASE("sign parameters need a square root in the field") {
        const auto over_q = make(
            "TAB1-2a", q,
            {{"C1", 1}, {"C2", -1}, {"eps1", 1}, {"eps4", 1}, {"eps6", 1}, {"Gamma7", 1}});
        CHECK(realize_error(over_q) == "TAB1-2a requires eps1^2 = C2");

        const Field f5 = Field::prime(5);
        const auto over_f5 = make(
            "TAB1-2a", f5,
            {{"C1", 1}, {"C2", -1}, {"eps1", 2}, {"eps4", 2}, {"eps6", 2}, {"Gamma7", 1}});
        const auto t = realize(over_f5);
        CHECK(verify_structure(t).passed());
        CHECK(braid_residual(t).residual_is_zero);
    }
}

TEST_CASE("vee gamma columns close to zero") {
    const Field f = Field::prime(7);
    ScalarRng rng(97);
    for (const char* id : {"TAB1-3c", "TAB1-4a", "TAB1-4b"}) {
        const auto t = realize(random_instance(id, f, rng));
        const auto m = t.to_matrix();
        // Counit forces each twin-cover input column to sum to zero over the
        // group-like output rows; at most four gamma cells carry the sum.
        for (int c1 : {1, 3})
            for (int c2 : {1, 3}) {
                const int col = vee_col(c1, c2);
                Scalar sum = Scalar::zero(f);
                int nonzero = 0;
                for (int g1 : {0, 2, 4})
                    for (int g2 : {0, 2, 4}) {
                        const Scalar v = m.at(vee_col(g1, g2) - 1, col - 1);
                        sum = sum + v;
                        if (!v.is_zero()) ++nonzero;
                    }
                CHECK(sum.is_zero());
                CHECK(nonzero <= 4);
            }
    }
}

TEST_CASE("vee alpha ladder relations") {
    const Field f = Field::prime(13);
    ScalarRng rng(5);
    const auto inst = random_instance("TAB1-4a", f, rng);
    const auto t = realize(inst);
    const auto m = t.to_matrix();
    const auto alpha = [&](int k) {
        return m.at(kAlphaCell[k].first - 1, kAlphaCell[k].second - 1);
    };
    const Scalar C1 = inst.params.at("C1"), C2 = inst.params.at("C2");
    const Scalar cxy = Scalar::one(f) / (C1 * C1);
    CHECK(alpha(3) == C2 * alpha(4));
    CHECK(alpha(5) == C2 * alpha(6));
    for (int k = 7; k <= 12; ++k) CHECK(alpha(k) == alpha(13 - k) / cxy);
}

TEST_CASE("membership round-trips every family") {
    const Field q = Field::rationals();
    const Field f5 = Field::prime(5);
    const Field f7 = Field::prime(7);
    ScalarRng rng(1234);
    for (const auto& id : family_ids()) {
        CAPTURE(id);
        for (const Field& f : {q, f5, f7}) {
            const std::string field_name = f.name();
            CAPTURE(field_name);
            const auto inst = random_instance(id, f, rng);
            const auto t = realize(inst);
            const auto matches = family_membership(t);
            CHECK(includes_family(matches, id));
            for (const auto& m : matches) CHECK(realize(m) == t);
        }
    }
}

TEST_CASE("membership separates overlapping families by constraints") {
    const Field q = Field::rationals();
    ScalarRng rng(8);
    // A nonzero middle gamma excludes the unconstrained family.
    const auto t2a = realize(random_instance("T56-2a", q, rng));
    const auto matches = family_membership(t2a);
    CHECK(includes_family(matches, "T56-2a"));
    CHECK_FALSE(includes_family(matches, "T56-1"));
}

TEST_CASE("perturbed tensors match nothing") {
    const Field q = Field::rationals();
    const auto t = realize(make("T56-1", q, {{"alpha1", 2}, {"alpha2", 1}, {"alpha3", 3}}));
    auto m = t.to_matrix();
    // Break the derived center A = alpha1 * alpha3.
    m.set_at(4, 4, sc(q, 5));
    const auto broken = LambdaTensor::from_matrix(t.basis_ptr(), m);
    CHECK(family_membership(broken).empty());
    CHECK(family_membership(flip_solution(basis_of(vee_poset()), q)).empty());
}
