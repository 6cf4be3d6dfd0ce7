#pragma once

#include <cstdint>
#include <vector>

#include "farey/errors.hpp"
#include "farey/fraction.hpp"

namespace farey {

// Hard ceiling for streamed levels: Fibonacci(86) < 2^63, so every pair
// member stays in unsigned 64-bit range and every product of two members
// fits 128-bit intermediates.
inline constexpr Level kMaxStreamLevel = 84;

inline constexpr Level kDefaultMaterializeCap = 20;

// Denominators of two adjacent level-k fractions, left to right.
struct NeighborPair {
    std::uint64_t d_left = 1;
    std::uint64_t d_right = 1;

    friend bool operator==(const NeighborPair&, const NeighborPair&) = default;

    std::uint64_t mediant_denominator() const { return d_left + d_right; }
};

// Position of a fraction inside a level: 1 <= n <= 2^k + 1.
struct LevelIndex {
    Level k = 0;
    std::uint64_t n = 1;
};

// Fibonacci(1) = Fibonacci(2) = 1; valid through i = 93 (largest that fits
// unsigned 64-bit).
inline std::uint64_t fibonacci(unsigned i) {
    if (i == 0) return 0;
    if (i > 93) throw std::overflow_error("fibonacci: index exceeds 64-bit range");
    std::uint64_t a = 0, b = 1;
    for (unsigned step = 1; step < i; ++step) {
        const std::uint64_t next = a + b;
        a = b;
        b = next;
    }
    return b;
}

namespace detail {

// Leaf indices are exact for depths up to 63; deeper traversals are
// unreachable in practice but must not shift out of range.
inline std::uint64_t index_stride(Level depth_below) {
    return depth_below < 64 ? std::uint64_t{1} << depth_below : 0;
}

template <class Visitor>
void walk_pairs(std::uint64_t d_left, std::uint64_t d_right, Level depth,
                std::uint64_t base, Visitor& visit) {
    if (depth == 0) {
        visit(base, NeighborPair{d_left, d_right});
        return;
    }
    const std::uint64_t med = d_left + d_right;
    const Level below = depth - 1;
    walk_pairs(d_left, med, below, base, visit);
    walk_pairs(med, d_right, below, base + index_stride(below), visit);
}

}  // namespace detail

// Depth-first left-to-right visit of the 2^depth pairs `depth` levels below
// `root`; visit(leaf_index, pair). The subtree below any pair is fully
// determined by that pair, so disjoint subtrees may be walked concurrently.
template <class Visitor>
void stream_subtree(NeighborPair root, Level depth, std::uint64_t base_index,
                    Visitor&& visit) {
    detail::walk_pairs(root.d_left, root.d_right, depth, base_index, visit);
}

// Visits the 2^k adjacent pairs of level k in left-to-right order, starting
// from the root pair (1,1) at depth 0. Never materializes a level.
template <class Visitor>
void stream_pairs(Level k, Visitor&& visit, Level max_level = kMaxStreamLevel) {
    if (k > max_level || k > kMaxStreamLevel)
        throw cap_error("stream_pairs: level " + std::to_string(k) +
                        " above cap " + std::to_string(max_level));
    detail::walk_pairs(1, 1, k, 0, visit);
}

// A depth-`split` decomposition handle: the subtree of level `k` rooted at
// `root`, whose leaves occupy indices [base_index, base_index + 2^(k-split)).
struct Subtree {
    NeighborPair root;
    std::uint64_t base_index = 0;
};

// The 2^split_depth subtree roots of a depth-k traversal, in left-to-right
// order. split_depth is clamped to k.
inline std::vector<Subtree> split_level(Level k, Level split_depth,
                                        Level max_level = kMaxStreamLevel) {
    const Level split = split_depth < k ? split_depth : k;
    if (split > 30)
        throw std::invalid_argument("split_level: split depth above 30 is unusable");
    std::vector<Subtree> roots;
    roots.reserve(std::size_t{1} << split);
    const std::uint64_t stride = detail::index_stride(k - split);
    stream_pairs(
        split,
        [&](std::uint64_t index, NeighborPair p) {
            roots.push_back(Subtree{p, index * stride});
        },
        max_level);
    return roots;
}

// All 2^k + 1 level-k fractions in increasing order; element at position n
// (1-based) is the order-n fraction of the level. Test/small-k path only.
inline std::vector<Fraction> materialize_level(Level k,
                                               Level cap = kDefaultMaterializeCap) {
    if (k > cap)
        throw cap_error("materialize_level: level " + std::to_string(k) +
                        " above materialization cap " + std::to_string(cap));
    std::vector<Fraction> level{Fraction(0, 1), Fraction(1, 1)};
    for (Level step = 0; step < k; ++step) {
        std::vector<Fraction> next;
        next.reserve(2 * level.size() - 1);
        for (std::size_t i = 0; i + 1 < level.size(); ++i) {
            next.push_back(level[i]);
            next.push_back(mediant(level[i], level[i + 1]));
        }
        next.push_back(level.back());
        level = std::move(next);
    }
    return level;
}

// The order-n fraction of level k.
inline Fraction fraction_at(LevelIndex index, Level cap = kDefaultMaterializeCap) {
    const auto level = materialize_level(index.k, cap);
    if (index.n == 0 || index.n > level.size())
        throw std::invalid_argument("fraction_at: order must lie in [1, 2^k + 1]");
    return level[index.n - 1];
}

// Order of the same fraction l levels deeper: n -> 2^l (n - 1) + 1.
inline std::uint64_t order_transform(std::uint64_t n, unsigned l) {
    if (n == 0) throw std::invalid_argument("order_transform: orders are 1-based");
    if (n == 1) return 1;
    if (l >= 64) throw std::overflow_error("order_transform: level offset too large");
    const unsigned __int128 wide = (static_cast<unsigned __int128>(n) - 1) << l;
    if (wide > ~std::uint64_t{0} - 1)
        throw std::overflow_error("order_transform: transformed order exceeds 64-bit range");
    return static_cast<std::uint64_t>(wide) + 1;
}

}  // namespace farey
