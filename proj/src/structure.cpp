#include "posetbraid/structure.hpp"

#include <functional>
#include <stdexcept>

namespace pb {
namespace {

LambdaKey make_key(int in1, int in2, int out1, int out2) {
    return LambdaKey{static_cast<std::uint16_t>(in1), static_cast<std::uint16_t>(in2),
                     static_cast<std::uint16_t>(out1), static_cast<std::uint16_t>(out2)};
}

std::string pair_str(const IntervalBasis& basis, int i) {
    const auto& pr = basis.pair_at(i);
    const Poset& p = basis.poset();
    return "(" + p.label(pr.first) + "," + p.label(pr.second) + ")";
}

std::string input_str(const IntervalBasis& basis, int in1, int in2) {
    return pair_str(basis, in1) + "(x)" + pair_str(basis, in2);
}

std::string key_str(const IntervalBasis& basis, const LambdaKey& k) {
    return input_str(basis, k.in1, k.in2) + " -> " + input_str(basis, k.out1, k.out2);
}

// Collects the first violation verbatim and counts the rest.
struct Violations {
    int count = 0;
    std::string first;

    void add(const std::string& v) {
        if (count++ == 0) first = v;
    }
    CheckResult result() const {
        if (count == 0) return {};
        std::string d = first;
        if (count > 1) d += " (+" + std::to_string(count - 1) + " more)";
        return {false, d};
    }
};

void require_same_poset(const LambdaTensor& t, const SetSolution& s) {
    if (!(s.poset() == t.basis().poset()))
        throw std::invalid_argument("set solution poset does not match the tensor basis");
}

} // namespace

SetSolution extract_restriction(const LambdaTensor& t) {
    const IntervalBasis& basis = t.basis();
    const Poset& poset = basis.poset();
    const int nx = poset.size();
    const Scalar one = Scalar::one(t.field());

    std::vector<std::vector<int>> left(nx, std::vector<int>(nx, -1));
    std::vector<std::vector<int>> right(nx, std::vector<int>(nx, -1));
    for (int a = 0; a < nx; ++a)
        for (int c = 0; c < nx; ++c) {
            const auto image = t.apply(basis.index_of(a, a), basis.index_of(c, c));
            const std::string input = "(" + poset.label(a) + "," + poset.label(a) + ")(x)(" +
                                      poset.label(c) + "," + poset.label(c) + ")";
            if (image.size() != 1)
                throw std::invalid_argument("group-like input " + input +
                                            " does not map to a single group-like tensor");
            const auto& [outs, coeff] = image.front();
            const auto& e_pair = basis.pair_at(outs.first);
            const auto& g_pair = basis.pair_at(outs.second);
            if (e_pair.first != e_pair.second || g_pair.first != g_pair.second)
                throw std::invalid_argument("group-like input " + input +
                                            " maps to a non-group-like tensor");
            if (coeff != one)
                throw std::invalid_argument("coefficient != 1 on the group-like image of " + input);
            left[a][c] = e_pair.first;
            right[a][c] = g_pair.first;
        }

    SetSolution s(poset, left, right);   // validates bijectivity of both families

    for (int a = 0; a < nx; ++a)
        if (!poset.is_order_automorphism(left[a]))
            throw std::invalid_argument("left translation by " + poset.label(a) +
                                        " is not an order automorphism");
    for (int c = 0; c < nx; ++c) {
        std::vector<int> col(nx);
        for (int a = 0; a < nx; ++a) col[a] = right[a][c];
        if (!poset.is_order_automorphism(col))
            throw std::invalid_argument("right translation by " + poset.label(c) +
                                        " is not an order automorphism");
    }

    const auto comp = poset.component_ids();
    for (int a = 0; a < nx; ++a)
        for (int b = a + 1; b < nx; ++b)
            if (comp[a] == comp[b] && left[a] != left[b])
                throw std::invalid_argument("left translations by " + poset.label(a) + " and " +
                                            poset.label(b) + " differ within a connected component");
    for (int c = 0; c < nx; ++c)
        for (int d = c + 1; d < nx; ++d) {
            if (comp[c] != comp[d]) continue;
            for (int a = 0; a < nx; ++a)
                if (right[a][c] != right[a][d])
                    throw std::invalid_argument("right translations by " + poset.label(c) + " and " +
                                                poset.label(d) +
                                                " differ within a connected component");
        }
    return s;
}

CheckResult check_counit(const LambdaTensor& t) {
    const IntervalBasis& basis = t.basis();
    const int n = basis.size();
    const Scalar zero = Scalar::zero(t.field());
    const Scalar one = Scalar::one(t.field());

    CheckResult res;
    for (int in1 = 0; in1 < n; ++in1)
        for (int in2 = 0; in2 < n; ++in2) {
            Scalar sum = zero;
            for (const auto& [outs, v] : t.apply(in1, in2)) {
                const auto& e_pair = basis.pair_at(outs.first);
                const auto& g_pair = basis.pair_at(outs.second);
                if (e_pair.first == e_pair.second && g_pair.first == g_pair.second) sum = sum + v;
            }
            const auto& ab = basis.pair_at(in1);
            const auto& cd = basis.pair_at(in2);
            const Scalar want = (ab.first == ab.second && cd.first == cd.second) ? one : zero;
            if (sum != want) {
                res.passed = false;
                if (!res.detail.empty()) res.detail += "; ";
                res.detail += "counit sum at " + input_str(basis, in1, in2) + " = " + sum.str() +
                              ", expected " + want.str();
            }
        }
    return res;
}

CheckResult check_comultiplicativity(const LambdaTensor& t) {
    const IntervalBasis& basis = t.basis();
    const Poset& poset = basis.poset();
    const Field& fld = t.field();
    const Scalar zero = Scalar::zero(fld);

    // Route 1: coefficient sums. Glue every pair of entries whose inputs
    // share a split point (p,q), accumulate per output tuple, then compare
    // against the target: the full coefficient when the two output legs share
    // their split points, zero otherwise.
    struct SplitKey {
        int in1, in2;            // composed input pair
        int u1, u2, u3, u4;      // output tuple (e,y),(g,z),(y',f),(z',h)
        auto operator<=>(const SplitKey&) const = default;
    };
    std::map<SplitKey, Scalar> sums;
    for (const auto& [k1, v1] : t.entries()) {
        const auto& ap = basis.pair_at(k1.in1);
        const auto& cq = basis.pair_at(k1.in2);
        for (const auto& [k2, v2] : t.entries()) {
            const auto& pb_ = basis.pair_at(k2.in1);
            const auto& qd = basis.pair_at(k2.in2);
            if (pb_.first != ap.second || qd.first != cq.second) continue;
            const SplitKey sk{basis.index_of(ap.first, pb_.second),
                              basis.index_of(cq.first, qd.second),
                              k1.out1, k1.out2, k2.out1, k2.out2};
            const auto [it, fresh] = sums.emplace(sk, v1 * v2);
            if (!fresh) it->second = it->second + v1 * v2;
        }
    }

    Violations viol;
    for (const auto& [sk, sum] : sums) {
        const auto& ey = basis.pair_at(sk.u1);
        const auto& gz = basis.pair_at(sk.u2);
        const auto& yf = basis.pair_at(sk.u3);
        const auto& zh = basis.pair_at(sk.u4);
        Scalar want = zero;
        if (ey.second == yf.first && gz.second == zh.first)
            want = t.coefficient(sk.in1, sk.in2, basis.index_of(ey.first, yf.second),
                                 basis.index_of(gz.first, zh.second));
        if (sum != want)
            viol.add("split sum at " + input_str(basis, sk.in1, sk.in2) + " -> " +
                     pair_str(basis, sk.u1) + pair_str(basis, sk.u2) + "|" + pair_str(basis, sk.u3) +
                     pair_str(basis, sk.u4) + " = " + sum.str() + ", expected " + want.str());
    }
    // Nonzero coefficients whose split sums are entirely absent.
    for (const auto& [k, v] : t.entries()) {
        const auto& ef = basis.pair_at(k.out1);
        const auto& gh = basis.pair_at(k.out2);
        for (const int y : poset.interval(ef.first, ef.second))
            for (const int z : poset.interval(gh.first, gh.second)) {
                const SplitKey sk{k.in1, k.in2, basis.index_of(ef.first, y),
                                  basis.index_of(gh.first, z), basis.index_of(y, ef.second),
                                  basis.index_of(z, gh.second)};
                if (!sums.contains(sk))
                    viol.add("split sum at " + key_str(basis, k) + " via (" + poset.label(y) + "," +
                             poset.label(z) + ") = 0, expected " + v.str());
            }
    }
    const CheckResult route1 = viol.result();

    // Route 2: the matrix identity on the tensor-square comultiplication.
    const SparseMat r = t.to_matrix();
    const SparseMat d2 = basis.delta2_matrix(fld);
    const bool route2_ok = (d2 * r) == (SparseMat::kron(r, r) * d2);

    if (route1.passed != route2_ok)
        throw std::logic_error("comultiplicativity routes disagree");
    return route1;
}

CheckResult check_support(const LambdaTensor& t, const SetSolution& s) {
    require_same_poset(t, s);
    const IntervalBasis& basis = t.basis();
    const Poset& poset = basis.poset();

    Violations viol;
    for (const auto& [k, v] : t.entries()) {
        const auto& ab = basis.pair_at(k.in1);
        const auto& cd = basis.pair_at(k.in2);
        const auto& ef = basis.pair_at(k.out1);
        const auto& gh = basis.pair_at(k.out2);
        const int a = ab.first, b = ab.second, c = cd.first, d = cd.second;
        const bool ok = poset.leq(s.left(a, c), ef.first) && poset.leq(ef.second, s.left(a, d)) &&
                        poset.leq(s.right(a, c), gh.first) && poset.leq(gh.second, s.right(b, c));
        if (!ok) viol.add("entry outside the translated box: " + key_str(basis, k) + " = " + v.str());
    }
    return viol.result();
}

CheckResult check_factorization(const LambdaTensor& t, const SetSolution& s) {
    require_same_poset(t, s);
    const IntervalBasis& basis = t.basis();
    const Poset& poset = basis.poset();
    const int n = basis.size();

    Violations viol;
    for (int in1 = 0; in1 < n; ++in1)
        for (int in2 = 0; in2 < n; ++in2) {
            const int a = basis.pair_at(in1).first, b = basis.pair_at(in1).second;
            const int c = basis.pair_at(in2).first, d = basis.pair_at(in2).second;
            const int e0 = s.left(a, c), e1 = s.left(a, d);
            const int g0 = s.right(a, c), g1 = s.right(b, c);
            for (const int e : poset.interval(e0, e1))
                for (const int f : poset.interval(e, e1))
                    for (const int g : poset.interval(g0, g1))
                        for (const int h : poset.interval(g, g1)) {
                            const Scalar lam = t.coeff_pairs(a, b, c, d, e, f, g, h);
                            for (const int y : poset.interval(e, f))
                                for (const int z : poset.interval(g, h)) {
                                    const int zb = s.right_inv(c, z);
                                    const int yb = s.left_inv(a, y);
                                    const Scalar prod = t.coeff_pairs(a, zb, c, yb, e, y, g, z) *
                                                        t.coeff_pairs(zb, b, yb, d, y, f, z, h);
                                    if (prod != lam)
                                        viol.add("split product at " +
                                                 key_str(basis, make_key(in1, in2,
                                                                         basis.index_of(e, f),
                                                                         basis.index_of(g, h))) +
                                                 " via (" + poset.label(y) + "," + poset.label(z) +
                                                 ") = " + prod.str() + ", expected " + lam.str());
                                }
                        }
        }
    return viol.result();
}

CheckResult check_graded_units(const LambdaTensor& t, const SetSolution& s) {
    require_same_poset(t, s);
    const IntervalBasis& basis = t.basis();
    const int n = basis.size();
    const Scalar zero = Scalar::zero(t.field());

    Violations viol;
    for (int in1 = 0; in1 < n; ++in1)
        for (int in2 = 0; in2 < n; ++in2) {
            const int a = basis.pair_at(in1).first, b = basis.pair_at(in1).second;
            const int c = basis.pair_at(in2).first, d = basis.pair_at(in2).second;
            const Scalar v = t.coeff_pairs(a, b, c, d, s.left(a, c), s.left(a, d),
                                           s.right(a, c), s.right(b, c));
            if (v == zero)
                viol.add("zero corner coefficient at " + input_str(basis, in1, in2));
        }
    return viol.result();
}

CheckResult check_cover_shape(const LambdaTensor& t, const SetSolution& s) {
    require_same_poset(t, s);
    const IntervalBasis& basis = t.basis();
    const Poset& poset = basis.poset();
    const Scalar zero = Scalar::zero(t.field());
    const auto covers = poset.cover_pairs();

    Violations viol;
    // Expected three-term image: an invertible coefficient on the translated
    // cover and a balancing +/- pair flanking it.
    const auto inspect = [&](int in1, int in2, std::pair<int, int> lead_out,
                             std::pair<int, int> plus_out, std::pair<int, int> minus_out) {
        Scalar lead = zero, plus = zero, minus = zero;
        for (const auto& [outs, v] : t.apply(in1, in2)) {
            if (outs == lead_out)
                lead = v;
            else if (outs == plus_out)
                plus = v;
            else if (outs == minus_out)
                minus = v;
            else
                viol.add("unexpected image term at " +
                         key_str(basis, make_key(in1, in2, outs.first, outs.second)) + " = " + v.str());
        }
        if (lead == zero)
            viol.add("cover image of " + input_str(basis, in1, in2) +
                     " has zero leading coefficient");
        if (plus + minus != zero)
            viol.add("cover image of " + input_str(basis, in1, in2) +
                     " has unbalanced flanking coefficients " + plus.str() + " and " + minus.str());
    };

    for (int a = 0; a < poset.size(); ++a)
        for (const auto& [c, d] : covers) {
            const int in1 = basis.index_of(a, a), in2 = basis.index_of(c, d);
            const int ec = s.left(a, c), ed = s.left(a, d);
            const int gc = s.right(a, c), gd = s.right(a, d);
            if (gc != gd) {
                viol.add("right translates under " + input_str(basis, in1, in2) + " differ");
                continue;
            }
            if (!poset.is_cover(ec, ed)) {
                viol.add("left translate of " + input_str(basis, in1, in2) + " is not a cover");
                continue;
            }
            inspect(in1, in2, {basis.index_of(ec, ed), basis.index_of(gc, gc)},
                    {basis.index_of(ec, ec), basis.index_of(gc, gc)},
                    {basis.index_of(ed, ed), basis.index_of(gc, gc)});
        }
    for (const auto& [a, b] : covers)
        for (int c = 0; c < poset.size(); ++c) {
            const int in1 = basis.index_of(a, b), in2 = basis.index_of(c, c);
            const int ea = s.left(a, c), eb = s.left(b, c);
            const int ga = s.right(a, c), gb = s.right(b, c);
            if (ea != eb) {
                viol.add("left translates under " + input_str(basis, in1, in2) + " differ");
                continue;
            }
            if (!poset.is_cover(ga, gb)) {
                viol.add("right translate of " + input_str(basis, in1, in2) + " is not a cover");
                continue;
            }
            inspect(in1, in2, {basis.index_of(ea, ea), basis.index_of(ga, gb)},
                    {basis.index_of(ea, ea), basis.index_of(ga, ga)},
                    {basis.index_of(ea, ea), basis.index_of(gb, gb)});
        }
    return viol.result();
}

CheckResult check_vanishing_sums(const LambdaTensor& t, const SetSolution& s) {
    require_same_poset(t, s);
    const IntervalBasis& basis = t.basis();
    const Poset& poset = basis.poset();
    const int nx = poset.size();
    const Scalar zero = Scalar::zero(t.field());

    Violations viol;
    for (int a = 0; a < nx; ++a)
        for (int c = 0; c < nx; ++c) {
            const int e = s.left(a, c), g = s.right(a, c);
            for (int f = 0; f < nx; ++f) {
                if (!poset.leq(e, f)) continue;
                for (int h = 0; h < nx; ++h) {
                    if (!poset.leq(g, h)) continue;
                    if (poset.height(e, f) + poset.height(g, h) == 0) continue;
                    const int hb = s.right_inv(c, h);
                    const int fb = s.left_inv(a, f);
                    Scalar sum = zero;
                    for (const int p : poset.interval(a, hb))
                        for (const int q : poset.interval(c, fb))
                            sum = sum + t.coeff_pairs(a, p, c, q, e, e, g, g) *
                                            t.coeff_pairs(p, hb, q, fb, f, f, h, h);
                    if (sum != zero)
                        viol.add("corner double sum at (" + poset.label(a) + "," + poset.label(c) +
                                 ") with tops (" + poset.label(f) + "," + poset.label(h) +
                                 ") = " + sum.str());
                }
            }
        }
    return viol.result();
}

CheckResult check_nondegeneracy(const LambdaTensor& t) {
    const IntervalBasis& basis = t.basis();
    const Field& fld = t.field();
    const int n = basis.size();

    SparseMat sigma(fld, n, n * n), tau(fld, n, n * n);
    for (const auto& [k, v] : t.entries()) {
        const auto& ef = basis.pair_at(k.out1);
        const auto& gh = basis.pair_at(k.out2);
        const int col = k.in1 * n + k.in2;
        if (gh.first == gh.second) sigma.add_at(k.out1, col, v);
        if (ef.first == ef.second) tau.add_at(k.out2, col, v);
    }
    const SparseMat id = SparseMat::identity(fld, n);
    const SparseMat dm = basis.delta_matrix(fld);
    const SparseMat first = SparseMat::kron(id, sigma) * SparseMat::kron(dm, id);
    const SparseMat second = SparseMat::kron(tau, id) * SparseMat::kron(id, dm);

    Violations viol;
    if (!first.invertible()) viol.add("composite (id(x)sigma)(delta(x)id) is singular");
    if (!second.invertible()) viol.add("composite (tau(x)id)(id(x)delta) is singular");
    return viol.result();
}

std::vector<std::vector<std::pair<int, int>>> all_configurations(int j, int k) {
    std::vector<std::vector<std::pair<int, int>>> out;
    std::vector<std::pair<int, int>> cur{{0, 0}};
    const std::function<void()> rec = [&]() {
        const auto [x, y] = cur.back();
        if (x == j && y == k) {
            out.push_back(cur);
            return;
        }
        if (x < j) {
            cur.emplace_back(x + 1, y);
            rec();
            cur.pop_back();
        }
        if (y < k) {
            cur.emplace_back(x, y + 1);
            rec();
            cur.pop_back();
        }
    };
    rec();
    return out;
}

Scalar chain_factor_value(const LambdaTensor& t, const SetSolution& s,
                          const LambdaKey& key,
                          const std::vector<int>& first_chain,
                          const std::vector<int>& second_chain,
                          const std::vector<std::pair<int, int>>& configuration) {
    require_same_poset(t, s);
    const IntervalBasis& basis = t.basis();
    const Poset& poset = basis.poset();
    const int a = basis.pair_at(key.in1).first, b = basis.pair_at(key.in1).second;
    const int c = basis.pair_at(key.in2).first, d = basis.pair_at(key.in2).second;
    const int e = basis.pair_at(key.out1).first, f = basis.pair_at(key.out1).second;
    const int g = basis.pair_at(key.out2).first, h = basis.pair_at(key.out2).second;

    const auto check_chain = [&](const std::vector<int>& ch, int lo, int hi, const char* which) {
        if (ch.empty() || ch.front() != lo || ch.back() != hi)
            throw std::invalid_argument(std::string(which) +
                                        " chain endpoints do not match the output interval");
        for (std::size_t i = 0; i + 1 < ch.size(); ++i)
            if (!poset.is_cover(ch[i], ch[i + 1]))
                throw std::invalid_argument(std::string(which) + " chain is not saturated");
    };
    check_chain(first_chain, e, f, "first");
    check_chain(second_chain, g, h, "second");

    const int j = static_cast<int>(first_chain.size()) - 1;
    const int k = static_cast<int>(second_chain.size()) - 1;
    if (configuration.size() != static_cast<std::size_t>(j + k + 1) ||
        configuration.front() != std::pair<int, int>{0, 0} ||
        configuration.back() != std::pair<int, int>{j, k})
        throw std::invalid_argument("invalid configuration: wrong endpoints or length");
    for (std::size_t i = 0; i + 1 < configuration.size(); ++i) {
        const int da = configuration[i + 1].first - configuration[i].first;
        const int db = configuration[i + 1].second - configuration[i].second;
        if (!((da == 1 && db == 0) || (da == 0 && db == 1)))
            throw std::invalid_argument("invalid configuration: each step must raise one index by 1");
    }

    Scalar value = t.coeff_pairs(a, s.right_inv(c, g), c, s.left_inv(a, e), e, e, g, g) *
                   t.coeff_pairs(s.right_inv(c, h), b, s.left_inv(a, f), d, f, f, h, h);
    for (std::size_t i = 1; i < configuration.size(); ++i) {
        const int y0 = first_chain[static_cast<std::size_t>(configuration[i - 1].first)];
        const int y1 = first_chain[static_cast<std::size_t>(configuration[i].first)];
        const int z0 = second_chain[static_cast<std::size_t>(configuration[i - 1].second)];
        const int z1 = second_chain[static_cast<std::size_t>(configuration[i].second)];
        value = value * t.coeff_pairs(s.right_inv(c, z0), s.right_inv(c, z1), s.left_inv(a, y0),
                                      s.left_inv(a, y1), y0, y1, z0, z1);
    }
    return value;
}

bool StructureReport::passed() const {
    return restriction.passed && support.passed && factorization.passed && counit.passed &&
           graded_units.passed && comultiplicativity.passed && nondegeneracy.passed &&
           cover_shape.passed && vanishing_sums.passed;
}

std::vector<std::pair<std::string, CheckResult>> StructureReport::rows() const {
    return {{"restriction", restriction},
            {"support", support},
            {"factorization", factorization},
            {"counit", counit},
            {"graded-units", graded_units},
            {"comultiplicativity", comultiplicativity},
            {"nondegeneracy", nondegeneracy},
            {"cover-shape", cover_shape},
            {"vanishing-sums", vanishing_sums}};
}

StructureReport verify_structure(const LambdaTensor& t) {
    StructureReport rep;
    std::optional<SetSolution> s;
    try {
        s = extract_restriction(t);
    } catch (const std::exception& ex) {
        rep.restriction = {false, ex.what()};
    }
    if (s) {
        rep.support = check_support(t, *s);
        rep.factorization = check_factorization(t, *s);
        rep.graded_units = check_graded_units(t, *s);
        rep.cover_shape = check_cover_shape(t, *s);
        rep.vanishing_sums = check_vanishing_sums(t, *s);
    } else {
        const CheckResult na{false, "restriction unavailable: " + rep.restriction.detail};
        rep.support = rep.factorization = rep.graded_units = rep.cover_shape =
            rep.vanishing_sums = na;
    }
    rep.counit = check_counit(t);
    rep.comultiplicativity = check_comultiplicativity(t);
    rep.nondegeneracy = check_nondegeneracy(t);
    rep.solution = std::move(s);
    return rep;
}

SeedData extract_seed(const LambdaTensor& t) {
    SetSolution s = extract_restriction(t);
    const IntervalBasis& basis = t.basis();
    const Poset& poset = basis.poset();
    const int n = basis.size();

    SeedData seed{t.basis_ptr(), t.field(), std::move(s), {}, {}};
    const SetSolution& rs = seed.restriction;
    for (int in1 = 0; in1 < n; ++in1)
        for (int in2 = 0; in2 < n; ++in2) {
            const int a = basis.pair_at(in1).first, b = basis.pair_at(in1).second;
            const int c = basis.pair_at(in2).first, d = basis.pair_at(in2).second;
            const auto corner = [&](int e, int g) {
                const LambdaKey k =
                    make_key(in1, in2, basis.index_of(e, e), basis.index_of(g, g));
                seed.ex_entries[k] = t.coefficient(k.in1, k.in2, k.out1, k.out2);
            };
            corner(rs.left(a, c), rs.right(a, c));
            corner(rs.left(b, d), rs.right(b, d));

            if (poset.height(a, b) + poset.height(c, d) != 1) continue;
            const int e0 = rs.left(a, c), e1 = rs.left(a, d);
            const int g0 = rs.right(a, c), g1 = rs.right(b, c);
            for (const int e : poset.interval(e0, e1))
                for (const int f : poset.interval(e, e1))
                    for (const int g : poset.interval(g0, g1))
                        for (const int h : poset.interval(g, g1))
                            if (poset.height(e, f) + poset.height(g, h) == 1)
                                seed.one_one_entries[make_key(in1, in2, basis.index_of(e, f),
                                                              basis.index_of(g, h))] =
                                    t.coeff_pairs(a, b, c, d, e, f, g, h);
        }
    return seed;
}

LambdaTensor build_from_seed(const SeedData& seed) {
    if (!seed.basis) throw std::invalid_argument("seed has no basis");
    const IntervalBasis& basis = *seed.basis;
    const Poset& poset = basis.poset();
    if (!(poset == seed.restriction.poset()))
        throw std::invalid_argument("seed restriction poset does not match the basis");
    const SetSolution& s = seed.restriction;
    const int n = basis.size();
    const Scalar zero = Scalar::zero(seed.field);

    const auto corner_value = [&](int a, int b, int c, int d, int e, int g) {
        const LambdaKey k = make_key(basis.index_of(a, b), basis.index_of(c, d),
                                     basis.index_of(e, e), basis.index_of(g, g));
        const auto it = seed.ex_entries.find(k);
        if (it == seed.ex_entries.end())
            throw std::invalid_argument("seed value missing for corner entry " + key_str(basis, k));
        return it->second;
    };
    const auto step_value = [&](int a, int b, int c, int d, int e, int f, int g, int h) {
        const LambdaKey k = make_key(basis.index_of(a, b), basis.index_of(c, d),
                                     basis.index_of(e, f), basis.index_of(g, h));
        const auto it = seed.one_one_entries.find(k);
        if (it == seed.one_one_entries.end())
            throw std::invalid_argument("seed value missing for unit-height entry " +
                                        key_str(basis, k));
        return it->second;
    };

    LambdaTensor t(seed.basis, seed.field);
    for (int in1 = 0; in1 < n; ++in1)
        for (int in2 = 0; in2 < n; ++in2) {
            const int a = basis.pair_at(in1).first, b = basis.pair_at(in1).second;
            const int c = basis.pair_at(in2).first, d = basis.pair_at(in2).second;
            const int e0 = s.left(a, c), e1 = s.left(a, d);
            const int g0 = s.right(a, c), g1 = s.right(b, c);
            for (const int e : poset.interval(e0, e1))
                for (const int f : poset.interval(e, e1)) {
                    const auto chains1 = poset.maximal_chains(e, f);
                    for (const int g : poset.interval(g0, g1))
                        for (const int h : poset.interval(g, g1)) {
                            const auto chains2 = poset.maximal_chains(g, h);
                            std::optional<Scalar> value;
                            for (const auto& ch1 : chains1)
                                for (const auto& ch2 : chains2) {
                                    const int j = static_cast<int>(ch1.size()) - 1;
                                    const int k = static_cast<int>(ch2.size()) - 1;
                                    for (const auto& conf : all_configurations(j, k)) {
                                        Scalar v =
                                            corner_value(a, s.right_inv(c, g), c, s.left_inv(a, e),
                                                         e, g) *
                                            corner_value(s.right_inv(c, h), b, s.left_inv(a, f), d,
                                                         f, h);
                                        for (std::size_t i = 1; i < conf.size(); ++i) {
                                            const int y0 = ch1[static_cast<std::size_t>(conf[i - 1].first)];
                                            const int y1 = ch1[static_cast<std::size_t>(conf[i].first)];
                                            const int z0 = ch2[static_cast<std::size_t>(conf[i - 1].second)];
                                            const int z1 = ch2[static_cast<std::size_t>(conf[i].second)];
                                            v = v * step_value(s.right_inv(c, z0), s.right_inv(c, z1),
                                                               s.left_inv(a, y0), s.left_inv(a, y1),
                                                               y0, y1, z0, z1);
                                        }
                                        if (!value)
                                            value = v;
                                        else if (*value != v)
                                            throw std::runtime_error(
                                                "configuration-dependence detected at " +
                                                key_str(basis,
                                                        make_key(in1, in2, basis.index_of(e, f),
                                                                 basis.index_of(g, h))));
                                    }
                                }
                            if (value && *value != zero)
                                t.set_coeff_pairs(a, b, c, d, e, f, g, h, *value);
                        }
                }
        }
    return t;
}

} // namespace pb
