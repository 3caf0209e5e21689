#include "posetbraid/poset.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace pb {

Poset Poset::from_cover_relations(
    const std::vector<std::string>& elements,
    const std::vector<std::pair<std::string, std::string>>& cover_pairs) {
    if (elements.empty()) throw std::invalid_argument("Poset: no elements");
    std::set<std::string> seen(elements.begin(), elements.end());
    if (seen.size() != elements.size())
        throw std::invalid_argument("Poset: duplicate element labels");

    auto n = elements.size();
    auto find = [&](const std::string& l) -> std::size_t {
        for (std::size_t i = 0; i < n; ++i)
            if (elements[i] == l) return i;
        throw std::invalid_argument("Poset: unknown element '" + l + "'");
    };

    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
    for (const auto& [lo, hi] : cover_pairs) {
        std::size_t a = find(lo), b = find(hi);
        if (a == b) throw std::invalid_argument("Poset: reflexive cover pair '" + lo + "<" + hi + "'");
        leq[a][b] = true;
    }

    // Floyd-Warshall style closure.
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (leq[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (leq[k][j]) leq[i][j] = true;

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && leq[i][j] && leq[j][i])
                throw std::invalid_argument("Poset: cycle through '" + elements[i] +
                                            "' and '" + elements[j] + "'");

    return Poset(elements, std::move(leq));
}

Poset Poset::discrete(const std::vector<std::string>& elements) {
    return from_cover_relations(elements, {});
}

int Poset::index_of(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return static_cast<int>(i);
    throw std::invalid_argument("Poset: unknown element '" + std::string(label) + "'");
}

bool Poset::is_cover(int a, int b) const {
    if (!less(a, b)) return false;
    for (int c = 0; c < size(); ++c)
        if (c != a && c != b && leq(a, c) && leq(c, b)) return false;
    return true;
}

std::vector<std::pair<int, int>> Poset::cover_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < size(); ++a)
        for (int b = 0; b < size(); ++b)
            if (is_cover(a, b)) out.emplace_back(a, b);
    return out;
}

std::vector<int> Poset::interval(int a, int b) const {
    std::vector<int> out;
    if (!leq(a, b)) return out;
    for (int c = 0; c < size(); ++c)
        if (leq(a, c) && leq(c, b)) out.push_back(c);
    return out;
}

int Poset::height(int a, int b) const {
    if (!leq(a, b))
        throw std::invalid_argument("Poset: height of empty interval [" + label(a) + "," + label(b) + "]");
    // Longest chain from a within [a,b], processed in a linear extension
    // (down-set size is strictly monotone along the order).
    auto iv = interval(a, b);
    auto downsize = [&](int c) {
        int k = 0;
        for (int d : iv)
            if (leq(d, c)) ++k;
        return k;
    };
    std::stable_sort(iv.begin(), iv.end(),
                     [&](int u, int v) { return downsize(u) < downsize(v); });
    std::vector<int> best(iv.size(), 0);
    int h = 0;
    for (std::size_t i = 0; i < iv.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j)
            if (less(iv[j], iv[i])) best[i] = std::max(best[i], best[j] + 1);
        if (iv[i] == b) h = best[i];
    }
    return h;
}

std::vector<std::vector<int>> Poset::maximal_chains(int a, int b) const {
    if (!leq(a, b))
        throw std::invalid_argument("Poset: chains of empty interval [" + label(a) + "," + label(b) + "]");
    std::vector<std::vector<int>> out;
    std::vector<int> cur{a};
    auto dfs = [&](auto&& self, int at) -> void {
        if (at == b) { out.push_back(cur); return; }
        for (int c : interval(at, b)) {
            if (c != at && is_cover(at, c)) {
                cur.push_back(c);
                self(self, c);
                cur.pop_back();
            }
        }
    };
    dfs(dfs, a);
    return out;
}

std::vector<int> Poset::component_ids() const {
    std::vector<int> comp(static_cast<std::size_t>(size()), -1);
    int next = 0;
    for (int s = 0; s < size(); ++s) {
        if (comp[static_cast<std::size_t>(s)] != -1) continue;
        comp[static_cast<std::size_t>(s)] = next;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < size(); ++v) {
                if (comp[static_cast<std::size_t>(v)] == -1 && (leq(u, v) || leq(v, u))) {
                    comp[static_cast<std::size_t>(v)] = next;
                    stack.push_back(v);
                }
            }
        }
        ++next;
    }
    return comp;
}

std::vector<std::vector<int>> Poset::connected_components() const {
    auto comp = component_ids();
    int count = *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<std::vector<int>> out(static_cast<std::size_t>(count));
    for (int i = 0; i < size(); ++i)
        out[static_cast<std::size_t>(comp[static_cast<std::size_t>(i)])].push_back(i);
    return out;
}

bool Poset::is_order_automorphism(const std::vector<int>& f) const {
    if (f.size() != static_cast<std::size_t>(size())) return false;
    std::vector<bool> hit(f.size(), false);
    for (int v : f) {
        if (v < 0 || v >= size() || hit[static_cast<std::size_t>(v)]) return false;
        hit[static_cast<std::size_t>(v)] = true;
    }
    for (int a = 0; a < size(); ++a)
        for (int b = 0; b < size(); ++b)
            if (leq(a, b) != leq(f[static_cast<std::size_t>(a)], f[static_cast<std::size_t>(b)]))
                return false;
    return true;
}

std::vector<std::vector<int>> Poset::all_order_automorphisms() const {
    std::vector<int> perm(static_cast<std::size_t>(size()));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        if (is_order_automorphism(perm)) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

} // namespace pb
