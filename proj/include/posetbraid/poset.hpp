#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pb {

// Finite partially ordered set over string labels. Immutable after
// construction; the order relation is stored as a dense boolean matrix on
// internal indices 0..n-1 (the label order given at construction).
class Poset {
public:
    // Builds the reflexive-transitive closure of the given pairs.
    // Throws std::invalid_argument on duplicate labels, unknown labels,
    // reflexive pairs, or cycles.
    static Poset from_cover_relations(
        const std::vector<std::string>& elements,
        const std::vector<std::pair<std::string, std::string>>& cover_pairs);

    static Poset discrete(const std::vector<std::string>& elements);

    int size() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_.at(static_cast<std::size_t>(i)); }
    int index_of(std::string_view label) const;   // throws on unknown label

    bool leq(int a, int b) const { return leq_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
    bool less(int a, int b) const { return a != b && leq(a, b); }
    bool is_cover(int a, int b) const;

    // Cover pairs (a, b) with a ≺ b, ordered lexicographically by index.
    std::vector<std::pair<int, int>> cover_pairs() const;

    // {c : a ≤ c ≤ b}, ascending by index; empty when a ≰ b.
    std::vector<int> interval(int a, int b) const;

    // Length of the longest chain in [a, b]; throws std::invalid_argument
    // when a ≰ b. height(a, a) = 0; height over a cover = 1.
    int height(int a, int b) const;

    // All saturated chains a = c0 ≺ c1 ≺ ... ≺ ck = b; throws when a ≰ b.
    std::vector<std::vector<int>> maximal_chains(int a, int b) const;

    // Component id per element under the closure of comparability.
    std::vector<int> component_ids() const;
    std::vector<std::vector<int>> connected_components() const;

    // f maps index i to index f[i]; true iff f is bijective and
    // a ≤ b ⇔ f(a) ≤ f(b).
    bool is_order_automorphism(const std::vector<int>& f) const;
    std::vector<std::vector<int>> all_order_automorphisms() const;

    bool operator==(const Poset& o) const {
        return labels_ == o.labels_ && leq_ == o.leq_;
    }

private:
    Poset(std::vector<std::string> labels, std::vector<std::vector<bool>> leq)
        : labels_(std::move(labels)), leq_(std::move(leq)) {}

    std::vector<std::string> labels_;
    std::vector<std::vector<bool>> leq_;
};

} // namespace pb
