#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "posetbraid/poset.hpp"

#include <algorithm>
#include <numeric>
#include <set>

using pb::Poset;

namespace {

Poset two_chain() { return Poset::from_cover_relations({"x", "y"}, {{"x", "y"}}); }

Poset vee() { return Poset::from_cover_relations({"x", "y", "z"}, {{"x", "y"}, {"z", "y"}}); }

Poset three_chain() {
    return Poset::from_cover_relations({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}});
}

Poset diamond() {
    return Poset::from_cover_relations({"a", "b", "c", "d"},
                                       {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
}

} // namespace

TEST_CASE("construction closes transitively and validates input") {
    Poset p = three_chain();
    CHECK(p.size() == 3);
    CHECK(p.leq(0, 2));
    CHECK(p.less(0, 2));
    CHECK(!p.leq(2, 0));
    CHECK(p.leq(1, 1));
    CHECK(p.index_of("z") == 2);
    CHECK(p.label(1) == "y");

    // Redundant implied pairs are accepted.
    Poset q = Poset::from_cover_relations({"x", "y", "z"},
                                          {{"x", "y"}, {"y", "z"}, {"x", "z"}});
    CHECK(q == p);

    CHECK_THROWS_AS(Poset::from_cover_relations({"x", "x"}, {}), std::invalid_argument);
    CHECK_THROWS_AS(Poset::from_cover_relations({"x"}, {{"x", "x"}}), std::invalid_argument);
    CHECK_THROWS_AS(Poset::from_cover_relations({"x", "y"}, {{"x", "w"}}), std::invalid_argument);
    CHECK_THROWS_AS(Poset::from_cover_relations({"x", "y"}, {{"x", "y"}, {"y", "x"}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        Poset::from_cover_relations({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}, {"z", "x"}}),
        std::invalid_argument);
    CHECK_THROWS_AS(Poset::from_cover_relations({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(p.index_of("w"), std::invalid_argument);
}

TEST_CASE("intervals") {
    Poset p = vee();
    int x = p.index_of("x"), y = p.index_of("y"), z = p.index_of("z");
    CHECK(p.interval(x, y) == std::vector<int>{x, y});
    CHECK(p.interval(x, z).empty());
    CHECK(p.interval(y, y) == std::vector<int>{y});
    CHECK(p.interval(y, x).empty());

    Poset d = diamond();
    CHECK(d.interval(0, 3) == std::vector<int>{0, 1, 2, 3});
    CHECK(d.interval(1, 2).empty());
}

TEST_CASE("covers match the interval definition") {
    for (const Poset& p : {two_chain(), vee(), three_chain(), diamond()}) {
        for (int a = 0; a < p.size(); ++a) {
            for (int b = 0; b < p.size(); ++b) {
                bool by_def = p.less(a, b) && p.interval(a, b).size() == 2;
                CHECK(p.is_cover(a, b) == by_def);
            }
        }
    }
    Poset t = three_chain();
    CHECK(t.cover_pairs() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
    CHECK(!t.is_cover(0, 2));
    Poset v = vee();
    CHECK(v.cover_pairs() == std::vector<std::pair<int, int>>{{0, 1}, {2, 1}});
}

TEST_CASE("height") {
    Poset p = two_chain();
    CHECK(p.height(0, 1) == 1);
    CHECK(p.height(0, 0) == 0);
    CHECK(p.height(1, 1) == 0);
    CHECK_THROWS_AS(p.height(1, 0), std::invalid_argument);

    CHECK(three_chain().height(0, 2) == 2);
    CHECK(diamond().height(0, 3) == 2);

    // Height sees the longest chain even with a short bypass edge present.
    Poset b = Poset::from_cover_relations(
        {"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"a", "d"}});
    CHECK(b.height(0, 3) == 3);
}

TEST_CASE("maximal chains are saturated and exhaustive") {
    Poset p = diamond();
    auto chains = p.maximal_chains(0, 3);
    REQUIRE(chains.size() == 2);
    std::set<std::vector<int>> got(chains.begin(), chains.end());
    CHECK(got.count({0, 1, 3}) == 1);
    CHECK(got.count({0, 2, 3}) == 1);

    CHECK(p.maximal_chains(2, 2) == std::vector<std::vector<int>>{{2}});
    CHECK(two_chain().maximal_chains(0, 1) == std::vector<std::vector<int>>{{0, 1}});
    CHECK_THROWS_AS(vee().maximal_chains(0, 2), std::invalid_argument);

    for (const Poset& q : {three_chain(), diamond()}) {
        for (int a = 0; a < q.size(); ++a)
            for (int b = 0; b < q.size(); ++b) {
                if (!q.leq(a, b)) continue;
                for (const auto& ch : q.maximal_chains(a, b)) {
                    CHECK(ch.front() == a);
                    CHECK(ch.back() == b);
                    for (std::size_t i = 0; i + 1 < ch.size(); ++i)
                        CHECK(q.is_cover(ch[i], ch[i + 1]));
                }
            }
    }
}

TEST_CASE("height equals longest maximal chain length") {
    for (const Poset& p : {two_chain(), vee(), three_chain(), diamond()}) {
        for (int a = 0; a < p.size(); ++a)
            for (int b = 0; b < p.size(); ++b) {
                if (!p.leq(a, b)) continue;
                std::size_t longest = 0;
                for (const auto& ch : p.maximal_chains(a, b))
                    longest = std::max(longest, ch.size() - 1);
                CHECK(p.height(a, b) == static_cast<int>(longest));
                CHECK((p.height(a, b) == 0) == (a == b));
                CHECK((p.height(a, b) == 1) == p.is_cover(a, b));
            }
    }
}

TEST_CASE("connected components") {
    CHECK(vee().component_ids() == std::vector<int>{0, 0, 0});
    Poset two = Poset::discrete({"u", "v"});
    CHECK(two.component_ids() == std::vector<int>{0, 1});
    CHECK(two.connected_components() == std::vector<std::vector<int>>{{0}, {1}});

    Poset mixed = Poset::from_cover_relations({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}});
    CHECK(mixed.component_ids() == std::vector<int>{0, 0, 1, 1});

    // Components close comparability transitively through shared elements.
    CHECK(vee().connected_components().size() == 1);
}

TEST_CASE("order automorphisms") {
    Poset v = vee();
    CHECK(v.is_order_automorphism({0, 1, 2}));
    CHECK(v.is_order_automorphism({2, 1, 0}));   // swap x and z
    CHECK(!v.is_order_automorphism({1, 0, 2}));
    CHECK(!v.is_order_automorphism({0, 0, 2}));
    CHECK(!v.is_order_automorphism({0, 1}));
    auto auts = v.all_order_automorphisms();
    CHECK(auts.size() == 2);

    Poset c = two_chain();
    CHECK(!c.is_order_automorphism({1, 0}));
    CHECK(c.all_order_automorphisms().size() == 1);

    Poset d = Poset::discrete({"a", "b", "c"});
    CHECK(d.all_order_automorphisms().size() == 6);

    // Closure under composition, checked on all self-maps of small posets.
    for (const Poset& p : {v, c, diamond()}) {
        auto as = p.all_order_automorphisms();
        for (const auto& f : as)
            for (const auto& g : as) {
                std::vector<int> fg(f.size());
                for (std::size_t i = 0; i < f.size(); ++i)
                    fg[i] = f[static_cast<std::size_t>(g[i])];
                CHECK(p.is_order_automorphism(fg));
            }
    }
}
