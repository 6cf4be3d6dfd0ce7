#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "farey/backend.hpp"
#include "farey/parallel_fold.hpp"

namespace farey {

// Per-level scalar statistics. even_sum + odd_sum = 1 by construction in
// the default route; the verification suite recomputes both sides from
// independent gap streams.
struct LevelStatistics {
    Level k = 0;
    Value even_sum;
    Value odd_sum;
    Value s_k;
    Value extra_interval;  // the two end gaps combined, 2/(k+1)
    std::uint64_t pair_count = 0;
};

// One point of a thermodynamic scan.
struct ThermoPoint {
    Level k = 0;
    double beta = 0.0;
    Value z_farey;
    Value z_knauf;
    Value sigma;
    double f_estimate = 0.0;  // -log(z_farey)/(k beta), finite-k only
};

inline constexpr double kBetaMin = -4.0;
inline constexpr double kBetaMax = 16.0;

namespace detail {

inline void check_level(Level k, Level min_k, const Backend& b, const char* op) {
    if (k < min_k)
        throw std::invalid_argument(std::string(op) + ": level must be >= " +
                                    std::to_string(min_k));
    if (k > b.max_level)
        throw cap_error(std::string(op) + ": level " + std::to_string(k) +
                        " above level cap " + std::to_string(b.max_level));
    if (b.is_exact() && k > b.exact_cap)
        throw cap_error(std::string(op) + ": level " + std::to_string(k) +
                        " above exact-backend cap " + std::to_string(b.exact_cap));
}

inline long check_beta(double beta, const Backend& b, const char* op) {
    if (beta < kBetaMin || beta > kBetaMax)
        throw std::invalid_argument(std::string(op) + ": beta outside supported range [" +
                                    std::to_string(kBetaMin) + ", " + std::to_string(kBetaMax) +
                                    "]");
    if (!b.is_exact()) return 0;
    const double rounded = std::nearbyint(beta);
    if (rounded != beta)
        throw std::invalid_argument(std::string(op) +
                                    ": exact backend requires an integer beta");
    return static_cast<long>(rounded);
}

// x^beta with the cheap exponents special-cased; glibc pow handles these
// identically, so the fast path does not change results.
inline double pow_double(double x, double beta) {
    if (beta == 0.0) return 1.0;
    if (beta == 1.0) return x;
    if (beta == 2.0) return x * x;
    return std::pow(x, beta);
}

}  // namespace detail

// Sum over the level-(k-2) pair stream of 3/((d + 2d')(2d + d')): the
// closed-form lengths of the 2^(k-2) even intervals at level k.
inline Value even_sum_via_pairs(Level k, const Backend& b) {
    detail::check_level(k, 2, b, "even_sum_via_pairs");
    if (b.is_exact())
        return Value::exact(parallel_fold_exact(
            k - 2,
            [](std::uint64_t, NeighborPair p) {
                const unsigned __int128 den = (unsigned __int128)(p.d_left + 2 * p.d_right) *
                                              (2 * p.d_left + p.d_right);
                return make_ratio(3, den);
            },
            b));
    return Value::approx(parallel_fold_float(
        k - 2,
        [](std::uint64_t, NeighborPair p) {
            return 3.0 / (static_cast<double>(p.d_left + 2 * p.d_right) *
                          static_cast<double>(2 * p.d_left + p.d_right));
        },
        b));
}

// Same quantity measured without the closed form: stream the 2^k elementary
// gaps of level k and keep those at positions n = 2, 3 (mod 4), the two gaps
// interior to each even interval. Gap n is 1/(d_n d_{n+1}).
inline Value even_sum_direct(Level k, const Backend& b) {
    detail::check_level(k, 2, b, "even_sum_direct");
    if (b.is_exact())
        return Value::exact(parallel_fold_exact(
            k,
            [](std::uint64_t idx, NeighborPair p) {
                const auto r = idx & 3;  // 1-based gap position n = idx + 1
                if (r != 1 && r != 2) return Rational(0);
                return make_ratio(1, (unsigned __int128)p.d_left * p.d_right);
            },
            b));
    return Value::approx(parallel_fold_float(
        k,
        [](std::uint64_t idx, NeighborPair p) {
            const auto r = idx & 3;
            if (r != 1 && r != 2) return 0.0;
            return 1.0 / (static_cast<double>(p.d_left) * static_cast<double>(p.d_right));
        },
        b));
}

// Complementary gap positions n = 0, 1 (mod 4): the odd intervals,
// including the two end gaps that make up the extra interval.
inline Value odd_sum_direct(Level k, const Backend& b) {
    detail::check_level(k, 2, b, "odd_sum_direct");
    if (b.is_exact())
        return Value::exact(parallel_fold_exact(
            k,
            [](std::uint64_t idx, NeighborPair p) {
                const auto r = idx & 3;
                if (r != 0 && r != 3) return Rational(0);
                return make_ratio(1, (unsigned __int128)p.d_left * p.d_right);
            },
            b));
    return Value::approx(parallel_fold_float(
        k,
        [](std::uint64_t idx, NeighborPair p) {
            const auto r = idx & 3;
            if (r != 0 && r != 3) return 0.0;
            return 1.0 / (static_cast<double>(p.d_left) * static_cast<double>(p.d_right));
        },
        b));
}

inline Value even_sum(Level k, const Backend& b) { return even_sum_via_pairs(k, b); }

inline Value odd_sum(Level k, const Backend& b) { return one_minus(even_sum(k, b)); }

// Sum of inverse squares of the denominators new at level k, i.e. of the
// mediant denominators of the level-(k-1) pair stream.
inline Value s_k(Level k, const Backend& b) {
    detail::check_level(k, 1, b, "s_k");
    if (b.is_exact())
        return Value::exact(parallel_fold_exact(
            k - 1,
            [](std::uint64_t, NeighborPair p) {
                const std::uint64_t d = p.mediant_denominator();
                return make_ratio(1, (unsigned __int128)d * d);
            },
            b));
    return Value::approx(parallel_fold_float(
        k - 1,
        [](std::uint64_t, NeighborPair p) {
            const double d = static_cast<double>(p.mediant_denominator());
            return 1.0 / (d * d);
        },
        b));
}

// Farey-tree partition function: sum of (even interval length)^beta.
inline Value z_farey(Level k, double beta, const Backend& b) {
    detail::check_level(k, 2, b, "z_farey");
    const long ibeta = detail::check_beta(beta, b, "z_farey");
    if (b.is_exact())
        return Value::exact(parallel_fold_exact(
            k - 2,
            [ibeta](std::uint64_t, NeighborPair p) {
                const unsigned __int128 den = (unsigned __int128)(p.d_left + 2 * p.d_right) *
                                              (2 * p.d_left + p.d_right);
                return pow_rational(make_ratio(3, den), ibeta);
            },
            b));
    return Value::approx(parallel_fold_float(
        k - 2,
        [beta](std::uint64_t, NeighborPair p) {
            const double len = 3.0 / (static_cast<double>(p.d_left + 2 * p.d_right) *
                                      static_cast<double>(2 * p.d_left + p.d_right));
            return detail::pow_double(len, beta);
        },
        b));
}

// Even Knauf partition function: sum of d^(-beta) over the denominators new
// at level k.
inline Value z_knauf(Level k, double beta, const Backend& b) {
    detail::check_level(k, 1, b, "z_knauf");
    const long ibeta = detail::check_beta(beta, b, "z_knauf");
    if (b.is_exact())
        return Value::exact(parallel_fold_exact(
            k - 1,
            [ibeta](std::uint64_t, NeighborPair p) {
                return pow_rational(make_ratio(1, p.mediant_denominator()), ibeta);
            },
            b));
    return Value::approx(parallel_fold_float(
        k - 1,
        [beta](std::uint64_t, NeighborPair p) {
            return detail::pow_double(1.0 / static_cast<double>(p.mediant_denominator()), beta);
        },
        b));
}

// Sum of (gap)^beta over all 2^k adjacent gaps at level k.
inline Value sigma(Level k, double beta, const Backend& b) {
    detail::check_level(k, 1, b, "sigma");
    const long ibeta = detail::check_beta(beta, b, "sigma");
    if (b.is_exact())
        return Value::exact(parallel_fold_exact(
            k,
            [ibeta](std::uint64_t, NeighborPair p) {
                return pow_rational(make_ratio(1, (unsigned __int128)p.d_left * p.d_right),
                                    ibeta);
            },
            b));
    return Value::approx(parallel_fold_float(
        k,
        [beta](std::uint64_t, NeighborPair p) {
            return detail::pow_double(
                1.0 / (static_cast<double>(p.d_left) * static_cast<double>(p.d_right)), beta);
        },
        b));
}

// Finite-k free-energy estimate -log(Z^F_k(beta)) / (k beta). No limit is
// taken; convergence in k is the caller's concern.
inline double free_energy_estimate(Level k, double beta, const Backend& b) {
    if (beta <= 0.0)
        throw std::invalid_argument("free_energy_estimate: beta must be positive");
    const double z = z_farey(k, beta, b).as_double();
    if (!(z > 0.0))
        throw std::domain_error("free_energy_estimate: z_farey underflowed to zero");
    return -std::log(z) / (static_cast<double>(k) * beta);
}

inline Value extra_interval(Level k, const Backend& b) {
    if (b.is_exact()) return Value::exact(Rational(2, k + 1));
    return Value::approx(2.0 / (static_cast<double>(k) + 1.0));
}

inline LevelStatistics compute_level(Level k, const Backend& b) {
    detail::check_level(k, 2, b, "compute_level");
    if (k > 63) throw cap_error("compute_level: pair count exceeds 64-bit range");
    LevelStatistics stats;
    stats.k = k;
    stats.even_sum = even_sum(k, b);
    stats.odd_sum = one_minus(stats.even_sum);
    stats.s_k = s_k(k, b);
    stats.extra_interval = extra_interval(k, b);
    stats.pair_count = std::uint64_t{1} << k;
    return stats;
}

inline ThermoPoint thermo_point(Level k, double beta, const Backend& b) {
    detail::check_level(k, 2, b, "thermo_point");
    ThermoPoint pt;
    pt.k = k;
    pt.beta = beta;
    pt.z_farey = z_farey(k, beta, b);
    pt.z_knauf = z_knauf(k, beta, b);
    pt.sigma = sigma(k, beta, b);
    pt.f_estimate = beta > 0.0 ? -std::log(pt.z_farey.as_double()) /
                                     (static_cast<double>(k) * beta)
                               : std::numeric_limits<double>::quiet_NaN();
    return pt;
}

}  // namespace farey
