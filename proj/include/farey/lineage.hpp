#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "farey/backend.hpp"
#include "farey/rational.hpp"
#include "farey/tree.hpp"

namespace farey {

// An odd interval identified by its ancestry: born as the even interval of
// `parent_pair` (a level parent_level-2 pair) at level parent_level, aged
// `age` levels since. age 0 denotes the parent even interval itself.
struct LineageRecord {
    Level parent_level = 2;
    unsigned age = 0;
    NeighborPair parent_pair;
    Rational length;
};

struct BoundPair {
    Rational lower;
    Rational upper;
};

namespace detail {

inline unsigned __int128 checked_mul(unsigned __int128 a, unsigned __int128 b,
                                     const char* op) {
    // numeric_limits is not specialized for __int128 in strict mode
    if (a != 0 && b > ~(unsigned __int128)0 / a)
        throw std::overflow_error(std::string(op) + ": product exceeds 128-bit range");
    return a * b;
}

}  // namespace detail

// Length of the even interval two levels above the pair: 3/((d+2d')(2d+d')).
inline Rational even_interval_from_pair(NeighborPair pair) {
    const unsigned __int128 den =
        detail::checked_mul((unsigned __int128)pair.d_left + 2 * (unsigned __int128)pair.d_right,
                            2 * (unsigned __int128)pair.d_left + (unsigned __int128)pair.d_right,
                            "even_interval_from_pair");
    return make_ratio(3, den);
}

// Length (2l+1)/((l d + (l+1) d')((l+1) d + l d')) of the interval the pair's
// even interval has shrunk to after l-1 further levels; l = 1 reproduces
// even_interval_from_pair.
inline Rational descendant_length(NeighborPair pair, unsigned l) {
    if (l < 1) throw std::invalid_argument("descendant_length: age parameter l must be >= 1");
    const unsigned __int128 d = pair.d_left;
    const unsigned __int128 dp = pair.d_right;
    const unsigned __int128 den = detail::checked_mul(l * d + (l + 1) * dp, (l + 1) * d + l * dp,
                                                      "descendant_length");
    return make_ratio(2 * l + 1, den);
}

// Ratio of the age-j descendant to its parent even interval as a function
// of the denominator ratio z = d/d'. Real-argument form for bound scans.
inline double descendant_ratio(double z, unsigned j) {
    if (!(z > 0.0)) throw std::invalid_argument("descendant_ratio: z must be positive");
    if (j < 1) throw std::invalid_argument("descendant_ratio: age must be >= 1");
    const double jd = j;
    return (2.0 * jd + 3.0) / 3.0 * ((1.0 + 2.0 * z) * (2.0 + z)) /
           (((jd + 1.0) + (jd + 2.0) * z) * ((jd + 2.0) + (jd + 1.0) * z));
}

// Exact form used inside rational identities; z is kept as a rational so no
// tolerance enters.
inline Rational descendant_ratio(const Rational& z, unsigned j) {
    if (z <= 0) throw std::invalid_argument("descendant_ratio: z must be positive");
    if (j < 1) throw std::invalid_argument("descendant_ratio: age must be >= 1");
    const Rational jr(j);
    return (2 * jr + 3) / 3 * ((1 + 2 * z) * (2 + z)) /
           (((jr + 1) + (jr + 2) * z) * ((jr + 2) + (jr + 1) * z));
}

// Age-j bracket for the descendant/parent ratio, attained only in the
// limits z -> 0 (or infinity) and z = 1: (2(2j+3)/(3(j+1)(j+2)), 3/(2j+3)).
inline BoundPair ratio_bounds(unsigned j) {
    if (j < 1) throw std::invalid_argument("ratio_bounds: age must be >= 1");
    const Rational jr(j);
    return BoundPair{2 * (2 * jr + 3) / (3 * (jr + 1) * (jr + 2)), Rational(3) / (2 * jr + 3)};
}

template <class T>
struct Bracket {
    T lower;
    T upper;
};

// Brackets for the total odd length at level k given the even sums of
// levels 2..k-1 (history[i] = even sum at level 2+i):
//   lower = 2/(k+1) + (2/3) sum_j even[k-j] (2j+3)/((j+1)(j+2))
//   upper = 2/(k+1) + sum_j even[k-j] 3/(2j+3),   j = 1..k-2.
inline Bracket<Rational> odd_sum_bracket(Level k, std::span<const Rational> even_history) {
    if (k <= 2) throw std::invalid_argument("odd_sum_bracket: level must be > 2");
    if (even_history.size() != k - 2)
        throw std::invalid_argument("odd_sum_bracket: history must cover levels 2..k-1");
    Rational lower(2, k + 1);
    Rational upper = lower;
    for (unsigned j = 1; j <= k - 2; ++j) {
        const Rational& even = even_history[k - j - 2];  // level k-j
        lower += even * Rational(2 * (2 * j + 3), 3 * (j + 1) * (j + 2));
        upper += even * Rational(3, 2 * j + 3);
    }
    return {lower, upper};
}

inline Bracket<double> odd_sum_bracket(Level k, std::span<const double> even_history) {
    if (k <= 2) throw std::invalid_argument("odd_sum_bracket: level must be > 2");
    if (even_history.size() != k - 2)
        throw std::invalid_argument("odd_sum_bracket: history must cover levels 2..k-1");
    double lower = 2.0 / (static_cast<double>(k) + 1.0);
    double upper = lower;
    for (unsigned j = 1; j <= k - 2; ++j) {
        const double even = even_history[k - j - 2];
        const double jd = j;
        lower += even * (2.0 * (2.0 * jd + 3.0)) / (3.0 * (jd + 1.0) * (jd + 2.0));
        upper += even * 3.0 / (2.0 * jd + 3.0);
    }
    return {lower, upper};
}

// Every odd interval at level k except the end gaps, exactly once, tagged
// with its parent level m and age j = k - m. Parents at level m are indexed
// by the level-(m-2) pair stream; the age-j descendant is the l = j+1 case
// of the closed form. Records are ordered by parent level, then stream
// order.
inline std::vector<LineageRecord> enumerate_lineage(Level k, Level cap = kDefaultLineageCap) {
    if (k <= 2) throw std::invalid_argument("enumerate_lineage: level must be > 2");
    if (k > cap)
        throw cap_error("enumerate_lineage: level " + std::to_string(k) +
                        " above lineage cap " + std::to_string(cap));
    std::vector<LineageRecord> records;
    records.reserve((std::size_t{1} << (k - 2)) - 1);
    for (Level m = 2; m < k; ++m) {
        const unsigned j = k - m;
        stream_pairs(m - 2, [&](std::uint64_t, NeighborPair p) {
            records.push_back(LineageRecord{m, j, p, descendant_length(p, j + 1)});
        });
    }
    return records;
}

}  // namespace farey
