#include "posetbraid/families.hpp"

#include <stdexcept>

namespace pb {
namespace {

[[noreturn]] void violate(const std::string& id, const std::string& clause) {
    throw std::invalid_argument(id + " requires " + clause);
}

const Scalar& need(const FamilyInstance& inst, const std::string& name) {
    const auto it = inst.params.find(name);
    if (it == inst.params.end())
        throw std::invalid_argument(inst.family_id + " is missing parameter " + name);
    if (it->second.field() != inst.field)
        throw std::invalid_argument(inst.family_id + " parameter " + name +
                                    " is not in the instance field");
    return it->second;
}

// 9x9 pattern: row and col are 1-based display coordinates, row encoding
// the output pair and col the input pair in base 3.
LambdaTensor fill_chain(const Field& f, const Scalar& a1, const Scalar& a2, const Scalar& a3,
                        const Scalar& a4, const Scalar& b1, const Scalar& b2, const Scalar& b3,
                        const Scalar& b4, const Scalar& g1) {
    auto basis = std::make_shared<IntervalBasis>(chain_poset());
    LambdaTensor t(basis, f);
    const Scalar one = Scalar::one(f);
    const Scalar mid = a1 * a3;
    const Scalar B1 = a2 * b4, B2 = a1 * b3, B3 = -(a4 * b2), B4 = -(a3 * b1);
    const Scalar g2 = -(b2 * b4), g3 = -(b1 * b3), g4 = -(g1 + g2 + g3);
    const auto set = [&t](int row, int col, const Scalar& v) {
        t.set_coefficient((col - 1) / 3, (col - 1) % 3, (row - 1) / 3, (row - 1) % 3, v);
    };
    set(1, 1, one);
    set(3, 7, one);
    set(7, 3, one);
    set(9, 9, one);
    set(4, 2, a1);
    set(2, 4, a2);
    set(8, 6, a3);
    set(6, 8, a4);
    set(1, 2, b1);
    set(7, 2, -b1);
    set(1, 4, b2);
    set(3, 4, -b2);
    set(7, 6, b3);
    set(9, 6, -b3);
    set(3, 8, b4);
    set(9, 8, -b4);
    set(1, 5, g1);
    set(3, 5, g2);
    set(7, 5, g3);
    set(9, 5, g4);
    set(5, 5, mid);
    set(2, 5, B1);
    set(4, 5, B2);
    set(6, 5, B3);
    set(8, 5, B4);
    return t;
}

Scalar closed_g1(const std::vector<Scalar>& b, const Scalar& C1, const Scalar& C4,
                 const Scalar& G10) {
    return -(b[1] * b[3] * C1) + b[2] * b[4] * C1 + b[1] * b[5] * C1 - b[2] * b[6] * C1 +
           b[5] * C4 - b[6] * C4 + G10;
}

Scalar closed_g2(const std::vector<Scalar>& b, const Scalar& C1, const Scalar& C4,
                 const Scalar& G1) {
    return -(b[1] * b[1] * C1 * C1) + b[1] * b[4] * C1 * C1 - b[2] * b[6] * C1 * C1 +
           b[3] * b[6] * C1 * C1 + b[3] * C1 * C4 + b[4] * C1 * C4 + C4 * C4 + C1 * C1 * G1;
}

Scalar closed_g4(const Scalar& a1, const Scalar& a4, const Scalar& a6, const Scalar& C1,
                 const Scalar& C2, const Scalar& C3, const Scalar& C4, const Scalar& G16) {
    const Field f = C1.field();
    const Scalar one = Scalar::one(f), four = Scalar::from_int(f, 4), two = Scalar::from_int(f, 2);
    const Scalar p = a1 * a6 * C1 * C1;
    return (-(C3 * C3) * (p - one) * (a4 * C1 * (a1 * C1 * C2 + C2 + one) + one) -
            two * C3 * C4 * (p + one) * (a1 * a4 * C1 * C1 * C2 - one) -
            C4 * C4 * (p - one) * (a4 * C1 * (C2 * (a1 * C1 - one) - one) + one) +
            four * p * G16) /
           (four * C1 * C1);
}

Scalar closed_g5(const Scalar& a4, const Scalar& a6, const Scalar& C1, const Scalar& C2,
                 const Scalar& C3, const Scalar& C4, const Scalar& G10) {
    const Field f = C1.field();
    const Scalar one = Scalar::one(f), four = Scalar::from_int(f, 4), two = Scalar::from_int(f, 2);
    return -(-(C2 - one) * (one + a4 * C1 * (one + C2 + a6 * C1 * C2)) * C3 * C3 -
             two * a4 * C1 * (C2 * C2 - one) * C3 * C4 +
             (C2 - one) * (one + a4 * C1 * (a6 * C1 * C2 - C2 - one)) * C4 * C4 -
             four * C1 * C2 * G10) /
           (four * C1);
}

Scalar closed_g6(const Scalar& a1, const Scalar& a4, const Scalar& C1, const Scalar& C2,
                 const Scalar& C3, const Scalar& C4) {
    const Field f = C1.field();
    const Scalar four = Scalar::from_int(f, 4), two = Scalar::from_int(f, 2);
    const Scalar q = a4 * C1, r = a1 * a4 * C1 * C1 * C2;
    return (C3 * C3 + q * C3 * C3 + q * C2 * C3 * C3 + r * C3 * C3 - two * C3 * C4 +
            two * r * C3 * C4 + C4 * C4 - q * C4 * C4 - q * C2 * C4 * C4 + r * C4 * C4) /
           four;
}

Scalar closed_g7(const Scalar& a4, const Scalar& a6, const Scalar& C1, const Scalar& C2,
                 const Scalar& C3, const Scalar& C4) {
    const Field f = C1.field();
    const Scalar four = Scalar::from_int(f, 4), two = Scalar::from_int(f, 2);
    const Scalar q = a4 * C1, r = a4 * a6 * C1 * C1 * C2;
    return (-(C3 * C3) - q * C3 * C3 - q * C2 * C3 * C3 - r * C3 * C3 + two * q * C3 * C4 -
            two * q * C2 * C3 * C4 + C4 * C4 - q * C4 * C4 - q * C2 * C4 * C4 + r * C4 * C4) /
           (four * C1);
}

// 25x25 pattern fill from the determining quantities; a and b are 1-based.
LambdaTensor fill_vee(const Field& f, const std::vector<Scalar>& a, const std::vector<Scalar>& b,
                      const Scalar& G1, const Scalar& G7, const Scalar& G10, const Scalar& G16) {
    auto basis = std::make_shared<IntervalBasis>(vee_poset());
    const Poset& p = basis->poset();
    LambdaTensor t(basis, f);
    const Scalar one = Scalar::one(f);
    const auto set = [&t](int row, int col, const Scalar& v) {
        t.set_coefficient((col - 1) / 5, (col - 1) % 5, (row - 1) / 5, (row - 1) % 5, v);
    };
    // Free cells of the displayed pattern: the nine point-input cells, the
    // flank alpha/beta sectors, and the four middle coefficients.
    set(1, 20, b[11]);
    set(1, 24, b[12]);
    set(1, 25, one);
    set(2, 20, a[11]);
    set(3, 10, -b[5]);
    set(3, 14, b[9]);
    set(3, 15, one);
    set(3, 20, -b[11]);
    set(4, 10, a[5]);
    set(5, 4, b[7]);
    set(5, 5, one);
    set(5, 10, b[5]);
    set(6, 24, a[12]);
    set(8, 14, a[9]);
    set(10, 4, a[7]);
    set(11, 18, b[10]);
    set(11, 22, -b[6]);
    set(11, 23, one);
    set(11, 24, -b[12]);
    set(12, 18, a[10]);
    set(13, 7, G1);
    set(13, 8, -b[3]);
    set(13, 9, G7);
    set(13, 12, -b[4]);
    set(13, 13, one);
    set(13, 14, -b[9]);
    set(13, 17, G10);
    set(13, 18, -b[10]);
    set(13, 19, G16);
    set(14, 8, a[3]);
    set(15, 2, -b[1]);
    set(15, 3, one);
    set(15, 4, -b[7]);
    set(15, 8, b[3]);
    set(16, 22, a[6]);
    set(18, 12, a[4]);
    set(20, 2, a[1]);
    set(21, 16, b[8]);
    set(21, 21, one);
    set(21, 22, b[6]);
    set(22, 16, a[8]);
    set(23, 6, -b[2]);
    set(23, 11, one);
    set(23, 12, b[4]);
    set(23, 16, -b[8]);
    set(24, 6, a[2]);
    set(25, 1, one);
    set(25, 2, b[1]);
    set(25, 6, b[2]);
    // Every remaining cell on the twin-cover input columns is forced: the
    // split-product identity pins each cell carrying a cover output or a
    // mixed point output from two flank cells, and the one cell per column
    // it cannot reach closes the counit column sum to zero.
    const int Y = 1;
    const auto phi = [](int v) { return 2 - v; };
    const std::vector<std::pair<int, int>> covers = {{0, 1}, {2, 1}};
    struct ColumnCloser {
        int ia, ib, ic, id, oe, og;
    };
    std::vector<ColumnCloser> closers;
    for (const auto& [ia, ib] : covers)
        for (const auto& [ic, id] : covers)
            for (const int oe : p.interval(phi(ic), phi(id)))
                for (const int of : p.interval(oe, phi(id)))
                    for (const int og : p.interval(phi(ia), phi(ib)))
                        for (const int oh : p.interval(og, phi(ib))) {
                            if (oe == Y && of == Y && og == Y && oh == Y) continue;
                            bool forced = false;
                            for (const int u : p.interval(oe, of)) {
                                for (const int w : p.interval(og, oh)) {
                                    const int zb = phi(w), yb = phi(u);
                                    if ((zb == ib && yb == id && u == of && w == oh) ||
                                        (zb == ia && yb == ic && u == oe && w == og))
                                        continue;
                                    t.set_coeff_pairs(
                                        ia, ib, ic, id, oe, of, og, oh,
                                        t.coeff_pairs(ia, zb, ic, yb, oe, u, og, w) *
                                            t.coeff_pairs(zb, ib, yb, id, u, of, w, oh));
                                    forced = true;
                                    break;
                                }
                                if (forced) break;
                            }
                            if (!forced && oe == of && og == oh)
                                closers.push_back({ia, ib, ic, id, oe, og});
                        }
    for (const auto& cl : closers) {
        Scalar sum = Scalar::zero(f);
        for (int oe = 0; oe < p.size(); ++oe)
            for (int og = 0; og < p.size(); ++og)
                if (oe != cl.oe || og != cl.og)
                    sum = sum + t.coeff_pairs(cl.ia, cl.ib, cl.ic, cl.id, oe, oe, og, og);
        t.set_coeff_pairs(cl.ia, cl.ib, cl.ic, cl.id, cl.oe, cl.oe, cl.og, cl.og, -sum);
    }
    return t;
}

// Derived alpha chain for the 25x25 pattern: a2, a3, a5 via the C2 ratio,
// a7..a12 via the reversed-index rule.
std::vector<Scalar> derived_alphas(const Scalar& a1, const Scalar& a4, const Scalar& a6,
                                   const Scalar& C1, const Scalar& C2) {
    const Scalar sq = C1 * C1;
    std::vector<Scalar> a(13, Scalar::zero(a1.field()));
    a[1] = a1;
    a[4] = a4;
    a[6] = a6;
    a[2] = C2 * a1;
    a[3] = C2 * a4;
    a[5] = C2 * a6;
    for (int k = 7; k <= 12; ++k) a[k] = a[13 - k] * sq;
    return a;
}

void apply_mirror_rule(std::vector<Scalar>& b, const Scalar& C1, const Scalar& C4) {
    for (int j = 1; j <= 6; ++j) b[13 - j] = C4 + C1 * b[j];
}

std::vector<Scalar> f_formulas(const std::vector<Scalar>& a, const Scalar& C1, const Scalar& C3,
                               const Scalar& C4) {
    const Field f = C1.field();
    const Scalar two = Scalar::from_int(f, 2);
    std::vector<Scalar> b(13, Scalar::zero(f));
    for (int j = 1; j <= 6; ++j) b[j] = a[j] * (C4 - C3) / two - (C3 + C4) / (two * C1);
    for (int j = 7; j <= 12; ++j)
        b[j] = a[13 - j] * C1 * (C3 + C4) / two + (C3 - C4) / two;
    return b;
}

const std::vector<std::string> kFamilyIds = {
    "T56-1",    "T56-2a",   "T56-2b",   "T56-3a",   "T56-3b",   "T56-4a-i",
    "T56-4a-ii", "T56-4b-i", "T56-4b-ii", "T56-4c",  "TAB1-1",   "TAB1-2a",
    "TAB1-2b",  "TAB1-3a",  "TAB1-3b",  "TAB1-3c",  "TAB1-4a",  "TAB1-4b"};

} // namespace

Poset chain_poset() { return Poset::from_cover_relations({"x", "y"}, {{"x", "y"}}); }

Poset vee_poset() {
    return Poset::from_cover_relations({"x", "y", "z"}, {{"x", "y"}, {"z", "y"}});
}

LambdaTensor flip_solution(std::shared_ptr<const IntervalBasis> basis, const Field& f) {
    LambdaTensor t(std::move(basis), f);
    const Scalar one = Scalar::one(f);
    for (int i = 0; i < t.basis().size(); ++i)
        for (int j = 0; j < t.basis().size(); ++j) t.set_coefficient(i, j, j, i, one);
    return t;
}

const std::vector<std::string>& family_ids() { return kFamilyIds; }

bool is_chain_family(const std::string& family_id) {
    return family_id.rfind("T56-", 0) == 0;
}

LambdaTensor theorem56_matrix(const FamilyInstance& inst) {
    const std::string& id = inst.family_id;
    const Field& f = inst.field;
    const Scalar zero = Scalar::zero(f), one = Scalar::one(f), two = Scalar::from_int(f, 2);

    if (id == "T56-1") {
        const Scalar a1 = need(inst, "alpha1"), a2 = need(inst, "alpha2"),
                     a3 = need(inst, "alpha3");
        if (a1.is_zero()) violate(id, "alpha1 != 0");
        if (a2.is_zero()) violate(id, "alpha2 != 0");
        if (a3.is_zero()) violate(id, "alpha3 != 0");
        return fill_chain(f, a1, a2, a3, a1 * a3 / a2, zero, zero, zero, zero, zero);
    }
    if (id == "T56-2a" || id == "T56-2b") {
        const Scalar a1 = need(inst, "alpha1"), g1 = need(inst, "Gamma1");
        if (a1 * a1 != one) violate(id, "alpha1^2 = 1");
        if (g1.is_zero()) violate(id, "Gamma1 != 0");
        const Scalar a3 = id == "T56-2a" ? a1 : -a1;
        return fill_chain(f, a1, a1, a3, a3, zero, zero, zero, zero, g1);
    }
    if (id == "T56-3a") {
        const Scalar g1 = need(inst, "Gamma1"), b1 = need(inst, "beta1"),
                     b2 = need(inst, "beta2");
        if (b1.is_zero() && b2.is_zero()) violate(id, "(beta1, beta2) != (0, 0)");
        return fill_chain(f, one, one, one, one, b1, b2, b2, b1, g1);
    }
    if (id == "T56-3b") {
        const Scalar b1 = need(inst, "beta1"), b3 = need(inst, "beta3");
        if ((b1 + b3).is_zero()) violate(id, "beta1 + beta3 != 0");
        return fill_chain(f, one, one, one, one, b1, -b1, b3, -b3, b1 * b3);
    }
    if (id == "T56-4a-i") {
        const Scalar c = need(inst, "C"), b2 = need(inst, "beta2"), b4 = need(inst, "beta4");
        if (c.is_zero()) violate(id, "C != 0");
        if (b2.is_zero() && b4.is_zero()) violate(id, "(beta2, beta4) != (0, 0)");
        const Scalar a2 = one + c * b2;
        if (a2.is_zero()) violate(id, "C*beta2 != -1");
        const Scalar b3 = b2 + a2 * b4;
        const Scalar a3 = one + c * b3;
        if (a3.is_zero()) violate(id, "C*beta3 != -1");
        const Scalar a4 = one + c * b4;
        if (a4.is_zero()) violate(id, "C*beta4 != -1");
        return fill_chain(f, one, a2, a3, a4, zero, b2, b3, b4, a2 * b4 / c);
    }
    if (id == "T56-4a-ii") {
        if (f.characteristic() == 2) violate(id, "characteristic != 2");
        const Scalar g1 = need(inst, "Gamma1"), b4 = need(inst, "beta4");
        if (b4.is_zero()) violate(id, "beta4 != 0");
        if (g1 == -(b4 * b4) / two) violate(id, "Gamma1 != -beta4^2/2");
        return fill_chain(f, one, one, -one, -one, zero, zero, b4, b4, g1);
    }
    if (id == "T56-4b-i") {
        if (f.characteristic() == 2) violate(id, "characteristic != 2");
        const Scalar b1 = need(inst, "beta1"), g1 = need(inst, "Gamma1"),
                     b3 = need(inst, "beta3"), b4 = need(inst, "beta4");
        if (b1.is_zero()) violate(id, "beta1 != 0");
        if (b3 == b1 / two) violate(id, "beta3 != beta1/2");
        if (b4 != b3) violate(id, "beta4 = beta3");
        if (!b3.is_zero() && b3 != b1 && two * g1 != b1 * (b1 + b3))
            violate(id, "2*Gamma1 = beta1*(beta1 + beta3) when beta3 is not 0 or beta1");
        const Scalar a3 = one - two * b3 / b1;
        return fill_chain(f, -one, -one, a3, a3, b1, b1, b3, b3, g1);
    }
    if (id == "T56-4b-ii") {
        if (f.characteristic() == 2) violate(id, "characteristic != 2");
        const Scalar b1 = need(inst, "beta1"), b2 = need(inst, "beta2"),
                     b4 = need(inst, "beta4");
        if (b1.is_zero()) violate(id, "beta1 != 0");
        if (b2 == b1) violate(id, "beta2 != beta1");
        if (b2 == b1 / two) violate(id, "beta2 != beta1/2");
        if (b4 == b1 / two) violate(id, "beta4 != beta1/2");
        const Scalar b3 = two * b2 * b4 / b1 + b1 - b2 - b4;
        if (b3 == b1 / two) violate(id, "beta3 != beta1/2");
        const Scalar g1 = (b1 * b1 - b4 * b1 + two * b2 * b4) / two;
        const Scalar a2 = one - two * b2 / b1, a3 = one - two * b3 / b1,
                     a4 = one - two * b4 / b1;
        return fill_chain(f, -one, a2, a3, a4, b1, b2, b3, b4, g1);
    }
    if (id == "T56-4c") {
        const Scalar c = need(inst, "C"), b1 = need(inst, "beta1"), b2 = need(inst, "beta2"),
                     b3 = need(inst, "beta3");
        if (c.is_zero()) violate(id, "C != 0");
        if (b1.is_zero()) violate(id, "beta1 != 0");
        const Scalar forbidden = -(one / c);
        if (b1 == forbidden) violate(id, "beta1 != -1/C");
        if (b2 == forbidden) violate(id, "beta2 != -1/C");
        if (b3 == forbidden) violate(id, "beta3 != -1/C");
        const Scalar a1 = one + c * b1, a2 = one + c * b2, a3 = one + c * b3;
        const Scalar b4 = (b1 - b2 + b3 + b1 * b3 * c) / (one + b2 * c);
        return fill_chain(f, a1, a2, a3, one + c * b4, b1, b2, b3, b4, (b3 * a1 - b2) / c);
    }
    throw std::invalid_argument("unknown chain family " + id);
}

LambdaTensor table1_matrix(const FamilyInstance& inst) {
    const std::string& id = inst.family_id;
    const Field& f = inst.field;
    const Scalar zero = Scalar::zero(f), one = Scalar::one(f);
    const Scalar C1 = need(inst, "C1");
    if (C1.is_zero()) violate(id, "C1 != 0");

    if (id == "TAB1-1") {
        const Scalar a1 = need(inst, "alpha1"), a4 = need(inst, "alpha4"),
                     a6 = need(inst, "alpha6"), C2 = need(inst, "C2");
        if (a1.is_zero()) violate(id, "alpha1 != 0");
        if (a4.is_zero()) violate(id, "alpha4 != 0");
        if (a6.is_zero()) violate(id, "alpha6 != 0");
        if (C2.is_zero()) violate(id, "C2 != 0");
        const std::vector<Scalar> b(13, zero);
        return fill_vee(f, derived_alphas(a1, a4, a6, C1, C2), b, zero, zero, zero, zero);
    }
    if (id == "TAB1-2a" || id == "TAB1-2b") {
        const Scalar C2 = need(inst, "C2");
        if (C2 * C2 != one) violate(id, "C2^2 = 1");
        const Scalar e1 = need(inst, "eps1"), e4 = need(inst, "eps4");
        if (e1 * e1 != C2) violate(id, "eps1^2 = C2");
        if (e4 * e4 != C2) violate(id, "eps4^2 = C2");
        const Scalar G7 = need(inst, "Gamma7");
        const std::vector<Scalar> b(13, zero);
        const Scalar a1 = e1 / C1, a4 = e4 / C1;
        if (id == "TAB1-2a") {
            const Scalar e6 = need(inst, "eps6");
            if (e6 * e6 != C2) violate(id, "eps6^2 = C2");
            if (G7.is_zero()) violate(id, "Gamma7 != 0");
            const Scalar a6 = e6 / C1;
            return fill_vee(f, derived_alphas(a1, a4, a6, C1, C2), b, zero, G7, C2 * G7, zero);
        }
        const Scalar G16 = need(inst, "Gamma16");
        if (G16.is_zero()) violate(id, "Gamma16 != 0");
        return fill_vee(f, derived_alphas(a1, a4, a1, C1, C2), b, a1 * a1 * G16, G7, C2 * G7,
                        G16);
    }
    if (id == "TAB1-3a" || id == "TAB1-3b" || id == "TAB1-3c") {
        const Scalar ainv = one / C1;
        const auto alphas = derived_alphas(ainv, ainv, ainv, C1, one);
        std::vector<Scalar> b(13, zero);
        Scalar G1 = zero, G10 = zero, C4 = zero;
        if (id == "TAB1-3a") {
            const Scalar b1 = need(inst, "beta1");
            if (b1.is_zero()) violate(id, "beta1 != 0");
            G1 = need(inst, "Gamma1");
            G10 = need(inst, "Gamma10");
            for (int j = 1; j <= 6; ++j) b[j] = b1;
            C4 = -(C1 * (b[1] + b[2]));
        } else if (id == "TAB1-3b") {
            const Scalar b1 = need(inst, "beta1"), b2 = need(inst, "beta2");
            if (b1 == b2) violate(id, "beta1 != beta2");
            G1 = need(inst, "Gamma1");
            G10 = need(inst, "Gamma10");
            C4 = need(inst, "C4");
            b[1] = b1;
            b[2] = b2;
            b[3] = b2;
            b[4] = b1;
            b[5] = b2;
            b[6] = b1;
        } else {
            const Scalar b1 = need(inst, "beta1"), b2 = need(inst, "beta2"),
                         b5 = need(inst, "beta5");
            if (b2 == b5) violate(id, "beta2 != beta5");
            b[1] = b1;
            b[2] = b2;
            b[3] = b2;
            b[4] = b1;
            b[5] = b5;
            b[6] = b1 + b2 - b5;
            G1 = b1 * b2;
            G10 = -(b1 * b[6] * C1);
            C4 = -(C1 * (b1 + b2));
        }
        apply_mirror_rule(b, C1, C4);
        const Scalar G7 = closed_g1(b, C1, C4, G10);
        const Scalar G16 = closed_g2(b, C1, C4, G1);
        return fill_vee(f, alphas, b, G1, G7, G10, G16);
    }
    if (id == "TAB1-4a" || id == "TAB1-4b") {
        if (f.characteristic() == 2) violate(id, "characteristic != 2");
        const Scalar C3 = need(inst, "C3"), C4 = need(inst, "C4");
        Scalar a1 = zero, a4 = zero, a6 = zero, C2 = zero;
        if (id == "TAB1-4a") {
            a1 = need(inst, "alpha1");
            a4 = need(inst, "alpha4");
            a6 = need(inst, "alpha6");
            C2 = need(inst, "C2");
            if (a1.is_zero()) violate(id, "alpha1 != 0");
            if (a4.is_zero()) violate(id, "alpha4 != 0");
            if (a6.is_zero()) violate(id, "alpha6 != 0");
            if (C2.is_zero()) violate(id, "C2 != 0");
        } else {
            C2 = need(inst, "C2");
            if (C2 * C2 != one) violate(id, "C2^2 = 1");
            const Scalar e1 = need(inst, "eps1"), e4 = need(inst, "eps4"),
                         e6 = need(inst, "eps6");
            if (e1 * e1 != C2) violate(id, "eps1^2 = C2");
            if (e4 * e4 != C2) violate(id, "eps4^2 = C2");
            if (e6 * e6 != C2) violate(id, "eps6^2 = C2");
            a1 = e1 / C1;
            a4 = e4 / C1;
            a6 = e6 / C1;
        }
        const auto alphas = derived_alphas(a1, a4, a6, C1, C2);
        const auto b = f_formulas(alphas, C1, C3, C4);
        const Scalar G16 = closed_g6(a1, a4, C1, C2, C3, C4);
        const Scalar G1 = closed_g4(a1, a4, a6, C1, C2, C3, C4, G16);
        const Scalar G10 =
            id == "TAB1-4a" ? closed_g7(a4, a6, C1, C2, C3, C4) : need(inst, "Gamma10");
        const Scalar G7 = closed_g5(a4, a6, C1, C2, C3, C4, G10);
        return fill_vee(f, alphas, b, G1, G7, G10, G16);
    }
    throw std::invalid_argument("unknown vee family " + id);
}

LambdaTensor realize(const FamilyInstance& inst) {
    return is_chain_family(inst.family_id) ? theorem56_matrix(inst) : table1_matrix(inst);
}

namespace {

// Rejection sampling: draw raw values per family, then let the generator
// validate the exclusion clauses.
FamilyInstance draw_candidate(const std::string& id, const Field& f, ScalarRng& rng) {
    FamilyInstance inst{id, {}, f};
    auto& ps = inst.params;
    const auto signed_root = [&](const Scalar& square) -> std::optional<Scalar> {
        const auto root = nth_root(square, 2);
        if (!root) return std::nullopt;
        return rng.below(2) == 0 ? *root : -*root;
    };
    if (id == "T56-1") {
        ps["alpha1"] = rng.nonzero(f);
        ps["alpha2"] = rng.nonzero(f);
        ps["alpha3"] = rng.nonzero(f);
    } else if (id == "T56-2a" || id == "T56-2b") {
        ps["alpha1"] = rng.sign(f);
        ps["Gamma1"] = rng.nonzero(f);
    } else if (id == "T56-3a") {
        ps["Gamma1"] = rng.uniform(f);
        ps["beta1"] = rng.uniform(f);
        ps["beta2"] = rng.uniform(f);
    } else if (id == "T56-3b") {
        ps["beta1"] = rng.uniform(f);
        ps["beta3"] = rng.uniform(f);
    } else if (id == "T56-4a-i") {
        ps["C"] = rng.nonzero(f);
        ps["beta2"] = rng.uniform(f);
        ps["beta4"] = rng.uniform(f);
    } else if (id == "T56-4a-ii") {
        ps["Gamma1"] = rng.uniform(f);
        ps["beta4"] = rng.nonzero(f);
    } else if (id == "T56-4b-i") {
        const Scalar b1 = rng.nonzero(f), two = Scalar::from_int(f, 2);
        ps["beta1"] = b1;
        switch (rng.below(3)) {
        case 0: ps["beta3"] = Scalar::zero(f); break;
        case 1: ps["beta3"] = b1; break;
        default: ps["beta3"] = rng.uniform(f); break;
        }
        ps["beta4"] = ps["beta3"];
        ps["Gamma1"] = two.is_zero() ? rng.uniform(f) : b1 * (b1 + ps["beta3"]) / two;
        if ((ps["beta3"].is_zero() || ps["beta3"] == b1) && rng.below(2) == 0)
            ps["Gamma1"] = rng.uniform(f);
    } else if (id == "T56-4b-ii") {
        ps["beta1"] = rng.nonzero(f);
        ps["beta2"] = rng.uniform(f);
        ps["beta4"] = rng.uniform(f);
    } else if (id == "T56-4c") {
        ps["C"] = rng.nonzero(f);
        ps["beta1"] = rng.nonzero(f);
        ps["beta2"] = rng.uniform(f);
        ps["beta3"] = rng.uniform(f);
    } else if (id == "TAB1-1") {
        ps["alpha1"] = rng.nonzero(f);
        ps["alpha4"] = rng.nonzero(f);
        ps["alpha6"] = rng.nonzero(f);
        ps["C1"] = rng.nonzero(f);
        ps["C2"] = rng.nonzero(f);
    } else if (id == "TAB1-2a" || id == "TAB1-2b" || id == "TAB1-4b") {
        const Scalar one = Scalar::one(f);
        Scalar c2 = rng.below(2) == 0 ? one : -one;
        if (!nth_root(c2, 2)) c2 = one;
        ps["C2"] = c2;
        const auto e1 = signed_root(c2), e4 = signed_root(c2);
        ps["eps1"] = *e1;
        ps["eps4"] = *e4;
        ps["C1"] = rng.nonzero(f);
        if (id == "TAB1-2a") {
            ps["eps6"] = *signed_root(c2);
            ps["Gamma7"] = rng.nonzero(f);
        } else if (id == "TAB1-2b") {
            ps["Gamma16"] = rng.nonzero(f);
            ps["Gamma7"] = rng.uniform(f);
        } else {
            ps["eps6"] = *signed_root(c2);
            ps["C3"] = rng.uniform(f);
            ps["C4"] = rng.uniform(f);
            ps["Gamma10"] = rng.uniform(f);
        }
    } else if (id == "TAB1-3a") {
        ps["Gamma1"] = rng.uniform(f);
        ps["Gamma10"] = rng.uniform(f);
        ps["beta1"] = rng.nonzero(f);
        ps["C1"] = rng.nonzero(f);
    } else if (id == "TAB1-3b") {
        ps["Gamma1"] = rng.uniform(f);
        ps["Gamma10"] = rng.uniform(f);
        ps["C4"] = rng.uniform(f);
        ps["C1"] = rng.nonzero(f);
        ps["beta1"] = rng.uniform(f);
        ps["beta2"] = rng.uniform(f);
    } else if (id == "TAB1-3c") {
        ps["C1"] = rng.nonzero(f);
        ps["beta1"] = rng.uniform(f);
        ps["beta2"] = rng.uniform(f);
        ps["beta5"] = rng.uniform(f);
    } else if (id == "TAB1-4a") {
        ps["alpha1"] = rng.nonzero(f);
        ps["alpha4"] = rng.nonzero(f);
        ps["alpha6"] = rng.nonzero(f);
        ps["C1"] = rng.nonzero(f);
        ps["C2"] = rng.nonzero(f);
        ps["C3"] = rng.uniform(f);
        ps["C4"] = rng.uniform(f);
    } else {
        throw std::invalid_argument("unknown family " + id);
    }
    return inst;
}

} // namespace

FamilyInstance random_instance(const std::string& family_id, const Field& f, ScalarRng& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        FamilyInstance inst = draw_candidate(family_id, f, rng);
        try {
            realize(inst);
            return inst;
        } catch (const std::invalid_argument&) {
        }
    }
    throw std::domain_error("no valid parameter assignment found for " + family_id + " over " +
                            f.name());
}

namespace {

void try_match(const LambdaTensor& t, FamilyInstance inst, std::vector<FamilyInstance>& out) {
    try {
        if (realize(inst) == t) out.push_back(std::move(inst));
    } catch (const std::invalid_argument&) {
    }
}

std::vector<FamilyInstance> chain_membership(const LambdaTensor& t) {
    const Field& f = t.field();
    const Scalar one = Scalar::one(f);
    const auto get = [&t](int row, int col) {
        return t.coefficient((col - 1) / 3, (col - 1) % 3, (row - 1) / 3, (row - 1) % 3);
    };
    const Scalar a1 = get(4, 2), a2 = get(2, 4), a3 = get(8, 6), a4 = get(6, 8);
    const Scalar b1 = get(1, 2), b2 = get(1, 4), b3 = get(7, 6), b4 = get(3, 8);
    const Scalar g1 = get(1, 5);

    std::vector<FamilyInstance> out;
    try_match(t, {"T56-1", {{"alpha1", a1}, {"alpha2", a2}, {"alpha3", a3}}, f}, out);
    try_match(t, {"T56-2a", {{"alpha1", a1}, {"Gamma1", g1}}, f}, out);
    try_match(t, {"T56-2b", {{"alpha1", a1}, {"Gamma1", g1}}, f}, out);
    try_match(t, {"T56-3a", {{"Gamma1", g1}, {"beta1", b1}, {"beta2", b2}}, f}, out);
    try_match(t, {"T56-3b", {{"beta1", b1}, {"beta3", b3}}, f}, out);
    if (!b2.is_zero())
        try_match(t, {"T56-4a-i", {{"C", (a2 - one) / b2}, {"beta2", b2}, {"beta4", b4}}, f},
                  out);
    else if (!b4.is_zero())
        try_match(t, {"T56-4a-i", {{"C", (a4 - one) / b4}, {"beta2", b2}, {"beta4", b4}}, f},
                  out);
    try_match(t, {"T56-4a-ii", {{"Gamma1", g1}, {"beta4", b4}}, f}, out);
    try_match(t,
              {"T56-4b-i", {{"beta1", b1}, {"Gamma1", g1}, {"beta3", b3}, {"beta4", b4}}, f},
              out);
    try_match(t, {"T56-4b-ii", {{"beta1", b1}, {"beta2", b2}, {"beta4", b4}}, f}, out);
    if (!b1.is_zero())
        try_match(
            t,
            {"T56-4c", {{"C", (a1 - one) / b1}, {"beta1", b1}, {"beta2", b2}, {"beta3", b3}}, f},
            out);
    return out;
}

std::vector<FamilyInstance> vee_membership(const LambdaTensor& t) {
    const Field& f = t.field();
    const Scalar one = Scalar::one(f), zero = Scalar::zero(f);
    const auto get = [&t](int row, int col) {
        return t.coefficient((col - 1) / 5, (col - 1) % 5, (row - 1) / 5, (row - 1) % 5);
    };
    const Scalar a1 = get(20, 2), a2 = get(24, 6), a3 = get(14, 8), a4 = get(18, 12);
    const Scalar a5 = get(4, 10), a6 = get(16, 22), a12 = get(6, 24);
    const Scalar b1 = get(25, 2), b2 = get(25, 6), b3 = get(15, 8), b4 = get(23, 12);
    const Scalar b5 = get(5, 10), b6 = get(21, 22), b12 = get(1, 24);
    const Scalar G1 = get(13, 7), G7 = get(13, 9), G10 = get(13, 17), G16 = get(13, 19);

    std::vector<FamilyInstance> out;
    if (a1.is_zero()) return out;

    // C1 is determined only up to sign by the reversed-index alpha rule.
    std::vector<Scalar> c1s;
    if (const auto root = nth_root(a12 / a1, 2)) {
        c1s.push_back(*root);
        if (-*root != *root) c1s.push_back(-*root);
    }
    const Scalar C2 = a2 / a1;

    for (const Scalar& c1 : c1s) {
        try_match(t,
                  {"TAB1-1",
                   {{"alpha1", a1}, {"alpha4", a4}, {"alpha6", a6}, {"C1", c1}, {"C2", C2}},
                   f},
                  out);
        try_match(t,
                  {"TAB1-2a",
                   {{"C1", c1},
                    {"Gamma7", G7},
                    {"C2", C2},
                    {"eps1", a1 * c1},
                    {"eps4", a4 * c1},
                    {"eps6", a6 * c1}},
                   f},
                  out);
        try_match(t,
                  {"TAB1-2b",
                   {{"C1", c1},
                    {"Gamma16", G16},
                    {"Gamma7", G7},
                    {"C2", C2},
                    {"eps1", a1 * c1},
                    {"eps4", a4 * c1}},
                   f},
                  out);

        // Families 4a and 4b: recover (C3, C4) from the linear flank system
        // beta_j * C1 = e_j * u - v with e_j = alpha_j * C1, u = (C4-C3)/2
        // and v = (C3+C4)/2.
        const Scalar e[7] = {zero, a1 * c1, a2 * c1, a3 * c1, a4 * c1, a5 * c1, a6 * c1};
        const Scalar bread[7] = {zero, b1, b2, b3, b4, b5, b6};
        std::vector<std::pair<Scalar, Scalar>> uv;
        bool solved = false;
        for (int j = 1; j <= 6 && !solved; ++j)
            for (int k = j + 1; k <= 6 && !solved; ++k)
                if (e[j] != e[k]) {
                    const Scalar u = c1 * (bread[j] - bread[k]) / (e[j] - e[k]);
                    uv.emplace_back(u, e[j] * u - c1 * bread[j]);
                    solved = true;
                }
        if (!solved) {
            // All flank equations coincide; the line is cut down by the
            // Gamma16 closed form, or collapses entirely when e^2 = 1.
            const Scalar& ev = e[1];
            if (ev * ev == one) {
                uv.emplace_back(zero, -(c1 * b1));
            } else if (const auto root = nth_root(G16, 2)) {
                for (const Scalar& s : {*root, -*root}) {
                    const Scalar u = (s + ev * c1 * b1) / (ev * ev - one);
                    uv.emplace_back(u, ev * u - c1 * b1);
                    if (root->is_zero()) break;
                }
            }
        }
        for (const auto& [u, v] : uv) {
            const Scalar C3 = v - u, C4 = v + u;
            try_match(t,
                      {"TAB1-4a",
                       {{"alpha1", a1},
                        {"alpha4", a4},
                        {"alpha6", a6},
                        {"C1", c1},
                        {"C2", C2},
                        {"C3", C3},
                        {"C4", C4}},
                       f},
                      out);
            try_match(t,
                      {"TAB1-4b",
                       {{"C1", c1},
                        {"C2", C2},
                        {"C3", C3},
                        {"C4", C4},
                        {"Gamma10", G10},
                        {"eps1", a1 * c1},
                        {"eps4", a4 * c1},
                        {"eps6", a6 * c1}},
                       f},
                      out);
        }
    }

    // Family 3 pins C1 = 1/alpha1 directly.
    const Scalar c1 = one / a1;
    try_match(t, {"TAB1-3a", {{"Gamma1", G1}, {"Gamma10", G10}, {"beta1", b1}, {"C1", c1}}, f},
              out);
    try_match(t,
              {"TAB1-3b",
               {{"Gamma1", G1},
                {"Gamma10", G10},
                {"C4", b12 - c1 * b1},
                {"C1", c1},
                {"beta1", b1},
                {"beta2", b2}},
               f},
              out);
    try_match(t,
              {"TAB1-3c", {{"C1", c1}, {"beta1", b1}, {"beta2", b2}, {"beta5", b5}}, f}, out);
    return out;
}

} // namespace

std::vector<FamilyInstance> family_membership(const LambdaTensor& t) {
    const Poset& p = t.basis().poset();
    const auto covers = p.cover_pairs();
    if (p.size() == 2 && covers.size() == 1 && covers[0] == std::pair<int, int>{0, 1})
        return chain_membership(t);
    if (p.size() == 3 && covers.size() == 2 && covers[0] == std::pair<int, int>{0, 1} &&
        covers[1] == std::pair<int, int>{2, 1})
        return vee_membership(t);
    return {};
}

} // namespace pb
