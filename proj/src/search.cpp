#include "posetbraid/search.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>
#include <utility>

#include "posetbraid/braidcheck.hpp"

namespace pb {
namespace {

// One support cell, addressed by basis indices of the two input and two
// output interval pairs.
struct Cell {
    int in1, in2, out1, out2;
};

enum class RecipeKind { kUnset, kCorner, kZero, kFree, kProduct, kQuotient, kCloser };

struct Recipe {
    RecipeKind kind = RecipeKind::kUnset;
    int coordinate = -1;     // kFree
    int lhs = -1, rhs = -1;  // kProduct: factors; kQuotient: target, divisor
    std::vector<int> terms;  // kCloser: cells whose negated sum closes the column
};

// One application of the split-product identity: the target cell equals the
// product of the two factor cells. -1 marks a factor outside the support,
// which forces the target to zero.
struct Split {
    int factor1, factor2;
};

struct Layout {
    std::vector<Cell> cells;
    std::vector<Recipe> recipes;
    std::vector<int> eval_order;
    std::vector<std::vector<int>> column_cells;
    std::vector<std::vector<int>> column_group_likes;
    std::vector<bool> column_is_corner;
    int free_count = 0;
};

bool is_point(const IntervalBasis& basis, int i) {
    return basis.pair_at(i).first == basis.pair_at(i).second;
}

Layout build_layout(const IntervalBasis& basis, const SetSolution& s, bool pruning) {
    const Poset& p = basis.poset();
    const int n = basis.size();

    // Columns ordered by the number of non-point inputs, so flank columns
    // classify before the twin-cover ones that factor through them.
    std::vector<std::pair<int, int>> columns;
    for (int rank = 0; rank <= 2; ++rank)
        for (int in1 = 0; in1 < n; ++in1)
            for (int in2 = 0; in2 < n; ++in2)
                if ((is_point(basis, in1) ? 0 : 1) + (is_point(basis, in2) ? 0 : 1) == rank)
                    columns.emplace_back(in1, in2);

    Layout lay;
    std::map<std::array<int, 4>, int> cell_index;
    std::vector<bool> box_corner;
    for (const auto& [in1, in2] : columns) {
        const auto [a, b] = basis.pair_at(in1);
        const auto [c, d] = basis.pair_at(in2);
        const int e0 = s.left(a, c), e1 = s.left(a, d);
        const int g0 = s.right(a, c), g1 = s.right(b, c);
        std::vector<int> members, group_likes;
        for (int out1 = 0; out1 < n; ++out1) {
            const auto [e, f] = basis.pair_at(out1);
            if (!p.leq(e0, e) || !p.leq(f, e1)) continue;
            for (int out2 = 0; out2 < n; ++out2) {
                const auto [g, h] = basis.pair_at(out2);
                if (!p.leq(g0, g) || !p.leq(h, g1)) continue;
                const int ci = static_cast<int>(lay.cells.size());
                lay.cells.push_back({in1, in2, out1, out2});
                cell_index[{in1, in2, out1, out2}] = ci;
                box_corner.push_back(e == e0 && f == e1 && g == g0 && h == g1);
                members.push_back(ci);
                if (e == f && g == h) group_likes.push_back(ci);
            }
        }
        lay.column_cells.push_back(std::move(members));
        lay.column_group_likes.push_back(std::move(group_likes));
        lay.column_is_corner.push_back(is_point(basis, in1) && is_point(basis, in2));
    }

    const int total = static_cast<int>(lay.cells.size());
    std::vector<std::vector<Split>> splits(total);
    for (int ci = 0; ci < total; ++ci) {
        const Cell& cell = lay.cells[ci];
        const auto [a, b] = basis.pair_at(cell.in1);
        const auto [c, d] = basis.pair_at(cell.in2);
        const auto [e, f] = basis.pair_at(cell.out1);
        const auto [g, h] = basis.pair_at(cell.out2);
        for (const int y : p.interval(e, f))
            for (const int z : p.interval(g, h)) {
                const int zb = s.right_inv(c, z);
                const int yb = s.left_inv(a, y);
                if ((zb == b && yb == d && y == f && z == h) ||
                    (zb == a && yb == c && y == e && z == g))
                    continue;
                const auto lookup = [&](int p1, int p2, int q1, int q2, int r1, int r2, int t1,
                                        int t2) {
                    if (!p.leq(p1, p2) || !p.leq(q1, q2) || !p.leq(r1, r2) || !p.leq(t1, t2))
                        return -1;
                    const auto it = cell_index.find({basis.index_of(p1, p2),
                                                     basis.index_of(q1, q2),
                                                     basis.index_of(r1, r2),
                                                     basis.index_of(t1, t2)});
                    return it == cell_index.end() ? -1 : it->second;
                };
                splits[ci].push_back({lookup(a, zb, c, yb, e, y, g, z),
                                      lookup(zb, b, yb, d, y, f, z, h)});
            }
    }

    lay.recipes.resize(total);
    std::vector<bool> known(total, false);
    const auto assign = [&](int ci, Recipe r) {
        lay.recipes[ci] = std::move(r);
        known[ci] = true;
        lay.eval_order.push_back(ci);
    };

    const int ncols = static_cast<int>(lay.column_cells.size());
    for (int col = 0; col < ncols; ++col)
        if (lay.column_is_corner[col])
            for (const int ci : lay.column_cells[col]) assign(ci, {RecipeKind::kCorner});

    if (!pruning) {
        // The general displayed pattern: point-flank columns keep their
        // balancing group-like pair, everything else enumerates freely.
        for (int col = 0; col < ncols; ++col) {
            if (lay.column_is_corner[col]) continue;
            const auto& gl = lay.column_group_likes[col];
            const bool rank_one = is_point(basis, lay.cells[lay.column_cells[col][0]].in1) ||
                                  is_point(basis, lay.cells[lay.column_cells[col][0]].in2);
            const int closer = rank_one && !gl.empty() ? gl.back() : -1;
            for (const int ci : lay.column_cells[col]) {
                if (ci == closer) continue;
                assign(ci, {RecipeKind::kFree, lay.free_count++});
            }
            if (closer >= 0) {
                Recipe r{RecipeKind::kCloser};
                for (const int ci : gl)
                    if (ci != closer) r.terms.push_back(ci);
                assign(closer, std::move(r));
            }
        }
        return lay;
    }

    const auto all_known = [&] {
        return std::all_of(known.begin(), known.end(), [](bool k) { return k; });
    };
    while (!all_known()) {
        bool progress = true;
        while (progress) {
            progress = false;
            for (int ci = 0; ci < total; ++ci) {
                if (known[ci]) continue;
                for (const Split& sp : splits[ci]) {
                    if (sp.factor1 < 0 || sp.factor2 < 0) {
                        assign(ci, {RecipeKind::kZero});
                        progress = true;
                        break;
                    }
                    if (known[sp.factor1] && known[sp.factor2]) {
                        assign(ci, {RecipeKind::kProduct, -1, sp.factor1, sp.factor2});
                        progress = true;
                        break;
                    }
                }
            }
            // A known target with one known factor pins the other, provided
            // the known factor sits at a box corner (a graded unit, so
            // nonzero in every solution).
            for (int ci = 0; ci < total; ++ci) {
                if (!known[ci]) continue;
                for (const Split& sp : splits[ci]) {
                    if (sp.factor1 < 0 || sp.factor2 < 0) continue;
                    int div = -1, unknown = -1;
                    if (known[sp.factor1] && !known[sp.factor2] && box_corner[sp.factor1]) {
                        div = sp.factor1;
                        unknown = sp.factor2;
                    } else if (known[sp.factor2] && !known[sp.factor1] &&
                               box_corner[sp.factor2]) {
                        div = sp.factor2;
                        unknown = sp.factor1;
                    }
                    if (unknown < 0) continue;
                    assign(unknown, {RecipeKind::kQuotient, -1, ci, div});
                    progress = true;
                }
            }
            for (int col = 0; col < ncols; ++col) {
                if (lay.column_is_corner[col]) continue;
                const auto& gl = lay.column_group_likes[col];
                int pending = -1, unknown_count = 0;
                for (const int ci : gl)
                    if (!known[ci]) {
                        pending = ci;
                        ++unknown_count;
                    }
                if (unknown_count != 1) continue;
                Recipe r{RecipeKind::kCloser};
                for (const int ci : gl)
                    if (ci != pending) r.terms.push_back(ci);
                assign(pending, std::move(r));
                progress = true;
            }
        }
        if (all_known()) break;
        for (int ci = 0; ci < total; ++ci)
            if (!known[ci]) {
                assign(ci, {RecipeKind::kFree, lay.free_count++});
                break;
            }
    }
    return lay;
}

// All restrictions a solution could induce on the group-like part: order
// automorphisms chosen per comparability component for both translation
// families, kept when the induced pair map is bijective and solves the
// set-theoretic braid equation.
std::vector<SetSolution> enumerate_restrictions(const Poset& p) {
    const auto autos = p.all_order_automorphisms();
    const auto comp = p.component_ids();
    const int n = p.size();
    const int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    const int na = static_cast<int>(autos.size());

    std::vector<SetSolution> out;
    std::vector<int> choice(2 * static_cast<std::size_t>(ncomp), 0);
    while (true) {
        std::vector<std::vector<int>> left(n, std::vector<int>(n));
        std::vector<std::vector<int>> right(n, std::vector<int>(n));
        for (int a = 0; a < n; ++a)
            for (int c = 0; c < n; ++c) {
                left[a][c] = autos[choice[comp[a]]][c];
                right[a][c] = autos[choice[ncomp + comp[c]]][a];
            }
        bool ok = true;
        std::vector<bool> seen(static_cast<std::size_t>(n) * n, false);
        for (int a = 0; a < n && ok; ++a)
            for (int c = 0; c < n && ok; ++c) {
                const int img = left[a][c] * n + right[a][c];
                if (seen[img]) ok = false;
                seen[img] = true;
            }
        const auto r12 = [&](std::array<int, 3> v) {
            return std::array<int, 3>{left[v[0]][v[1]], right[v[0]][v[1]], v[2]};
        };
        const auto r23 = [&](std::array<int, 3> v) {
            return std::array<int, 3>{v[0], left[v[1]][v[2]], right[v[1]][v[2]]};
        };
        for (int a = 0; a < n && ok; ++a)
            for (int c = 0; c < n && ok; ++c)
                for (int e = 0; e < n && ok; ++e) {
                    const std::array<int, 3> v{a, c, e};
                    if (r12(r23(r12(v))) != r23(r12(r23(v)))) ok = false;
                }
        if (ok) out.emplace_back(p, left, right);

        std::size_t pos = 0;
        while (pos < choice.size() && ++choice[pos] == na) choice[pos++] = 0;
        if (pos == choice.size()) break;
    }
    return out;
}

// q^k, saturated one past the cap.
std::uint64_t space_size(std::uint64_t q, int k, std::uint64_t cap) {
    std::uint64_t size = 1;
    for (int i = 0; i < k; ++i) {
        if (size > cap / q) return cap + 1;
        size *= q;
    }
    return size;
}

bool quick_braid_zero(const LambdaTensor& t, const SparseMat& id_points) {
    const SparseMat r = t.to_matrix();
    const SparseMat r12 = SparseMat::kron(r, id_points);
    const SparseMat r23 = SparseMat::kron(id_points, r);
    const SparseMat mid = r12 * r23;
    return mid * r12 == r23 * mid;
}

void search_one_restriction(const SearchSpec& spec, const SetSolution& s, Layout lay,
                            SearchResult& result) {
    const Field& f = spec.field;
    const std::uint64_t q = f.characteristic();
    const auto basis = std::make_shared<IntervalBasis>(spec.poset);
    const SparseMat id_points = SparseMat::identity(f, basis->size());
    const int total = static_cast<int>(lay.cells.size());

    std::vector<Scalar> digit_values(q, Scalar::zero(f));
    for (std::uint64_t v = 0; v < q; ++v)
        digit_values[v] = Scalar::from_int(f, static_cast<long>(v));

    std::vector<std::uint32_t> digits(static_cast<std::size_t>(lay.free_count), 0);
    std::vector<Scalar> value(static_cast<std::size_t>(total), Scalar::zero(f));
    while (true) {
        ++result.candidates;
        bool rejected = false;
        for (const int ci : lay.eval_order) {
            const Recipe& r = lay.recipes[ci];
            switch (r.kind) {
            case RecipeKind::kCorner: value[ci] = Scalar::one(f); break;
            case RecipeKind::kZero: value[ci] = Scalar::zero(f); break;
            case RecipeKind::kFree: value[ci] = digit_values[digits[r.coordinate]]; break;
            case RecipeKind::kProduct: value[ci] = value[r.lhs] * value[r.rhs]; break;
            case RecipeKind::kQuotient:
                if (value[r.rhs].is_zero())
                    rejected = true;
                else
                    value[ci] = value[r.lhs] / value[r.rhs];
                break;
            case RecipeKind::kCloser: {
                Scalar sum = Scalar::zero(f);
                for (const int term : r.terms) sum = sum + value[term];
                value[ci] = -sum;
                break;
            }
            case RecipeKind::kUnset: throw std::logic_error("unclassified cell");
            }
            if (rejected) break;
        }
        if (!rejected) {
            for (std::size_t col = 0; col < lay.column_cells.size() && !rejected; ++col) {
                if (lay.column_is_corner[col]) continue;
                Scalar sum = Scalar::zero(f);
                for (const int ci : lay.column_group_likes[col]) sum = sum + value[ci];
                if (!sum.is_zero()) rejected = true;
            }
        }
        if (!rejected) {
            LambdaTensor t(basis, f);
            for (int ci = 0; ci < total; ++ci)
                if (!value[ci].is_zero()) {
                    const Cell& cell = lay.cells[ci];
                    t.set_coefficient(cell.in1, cell.in2, cell.out1, cell.out2, value[ci]);
                }
            if (quick_braid_zero(t, id_points) && verify_structure(t).passed() &&
                braid_residual(t).residual_is_zero)
                result.solutions.push_back({t, family_membership(t)});
        }

        std::size_t pos = 0;
        while (pos < digits.size() && ++digits[pos] == q) digits[pos++] = 0;
        if (pos == digits.size()) break;
    }
}

std::string format_params(const FamilyInstance& inst) {
    std::ostringstream os;
    os << inst.family_id << " over " << inst.field.name();
    const char* sep = ": ";
    for (const auto& [name, v] : inst.params) {
        os << sep << name << "=" << v.str();
        sep = ", ";
    }
    return os.str();
}

} // namespace

SearchResult exhaustive_search(const SearchSpec& spec) {
    if (!spec.field.is_prime())
        throw std::invalid_argument("exhaustive search requires a finite field");

    std::vector<SetSolution> restrictions;
    if (spec.restriction)
        restrictions.push_back(*spec.restriction);
    else
        restrictions = enumerate_restrictions(spec.poset);

    const auto basis = std::make_shared<IntervalBasis>(spec.poset);
    std::vector<Layout> layouts;
    std::uint64_t space = 0;
    int widest = 0;
    for (const SetSolution& s : restrictions) {
        layouts.push_back(build_layout(*basis, s, spec.pruning));
        const std::uint64_t q = spec.field.characteristic();
        space += space_size(q, layouts.back().free_count, spec.limit);
        widest = std::max(widest, layouts.back().free_count);
        if (space > spec.limit) {
            std::ostringstream os;
            os << "candidate space " << spec.field.name() << "^" << layouts.back().free_count
               << " exceeds the limit " << spec.limit;
            throw CapacityError(os.str());
        }
    }

    SearchResult result;
    result.restrictions_tried = static_cast<int>(restrictions.size());
    result.free_cells = widest;
    for (std::size_t i = 0; i < restrictions.size(); ++i)
        search_one_restriction(spec, restrictions[i], std::move(layouts[i]), result);
    return result;
}

SweepReport random_family_sweep(const std::string& family_id, int draws, const Field& f,
                                std::uint64_t seed) {
    SweepReport rep;
    rep.family_id = family_id;
    rep.field_name = f.name();
    rep.requested = draws;
    ScalarRng rng(seed);
    for (int i = 0; i < draws; ++i) {
        FamilyInstance inst;
        try {
            inst = random_instance(family_id, f, rng);
        } catch (const std::domain_error& e) {
            rep.note = e.what();
            break;
        }
        ++rep.completed;
        const LambdaTensor t = realize(inst);
        const StructureReport sr = verify_structure(t);
        const BraidReport br = braid_residual(t);
        if (sr.passed() && br.residual_is_zero) {
            ++rep.passed;
            continue;
        }
        std::string failure;
        for (const auto& [name, check] : sr.rows())
            if (!check.passed) {
                failure = name + ": " + check.detail;
                break;
            }
        if (failure.empty()) failure = "braid residual nonzero";
        rep.counterexamples.push_back(format_params(inst) + " -> " + failure);
    }
    return rep;
}

} // namespace pb
