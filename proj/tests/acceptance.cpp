// Acceptance suite: runs every contract criterion at its stated tolerance
// and prints one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "farey/farey.hpp"

using namespace farey;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& label, const Outcome& o, bool gating = true) {
    std::printf("criterion %2d [%s] %s%s%s\n", id,
                !gating ? "REPORTED" : (o.pass ? "PASS" : "FAIL"), label.c_str(),
                o.detail.empty() ? "" : " -- ", o.detail.c_str());
    std::fflush(stdout);
    if (gating && !o.pass) ++failures;
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// modeled rounding error of a positive sum with 2^log2_terms terms
double sum_err(double value, Level log2_terms) {
    return std::ldexp(value, static_cast<int>(log2_terms)) * std::ldexp(1.0, -52);
}

struct FloatTable {
    std::map<Level, double> even_pairs, even_direct, odd_direct, s;
    double level28_seconds = 0.0;
};

FloatTable build_float_table(Level k_max, const Backend& fl) {
    FloatTable t;
    t.s[1] = s_k(1, fl).as_double();
    for (Level k = 2; k <= k_max; ++k) {
        const auto t0 = std::chrono::steady_clock::now();
        t.even_pairs[k] = even_sum_via_pairs(k, fl).as_double();
        t.even_direct[k] = even_sum_direct(k, fl).as_double();
        t.odd_direct[k] = odd_sum_direct(k, fl).as_double();
        t.s[k] = s_k(k, fl).as_double();
        const double sec =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (k == k_max) t.level28_seconds = sec;
    }
    return t;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

int main() {
    constexpr Level kMaxFloat = 28;
    constexpr Level kMaxExact = 16;

    Backend fl;
    fl.threads = 8;
    fl.split_depth = 10;

    Backend ex;
    ex.mode = Mode::exact;
    ex.threads = 8;
    ex.split_depth = 10;

    std::printf("building floating table to level %u and exact table to level %u...\n", kMaxFloat,
                kMaxExact);
    const auto table_start = std::chrono::steady_clock::now();
    const FloatTable ft = build_float_table(kMaxFloat, fl);
    const double float_table_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - table_start).count();

    std::map<Level, Rational> ex_even_pairs, ex_even_direct, ex_odd_direct, ex_s;
    for (Level k = 2; k <= kMaxExact; ++k) {
        ex_even_pairs[k] = even_sum_via_pairs(k, ex).rational();
        ex_even_direct[k] = even_sum_direct(k, ex).rational();
        ex_odd_direct[k] = odd_sum_direct(k, ex).rational();
        ex_s[k] = s_k(k, ex).rational();
    }

    // 1. exact small-level values
    {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        o.pass = ex_even_pairs.at(2) == Rational(1, 3) && ex_even_pairs.at(3) == Rational(3, 10) &&
                 ex_even_pairs.at(4) == Rational(39, 140) &&
                 ex_odd_direct.at(2) == Rational(2, 3) && ex_odd_direct.at(3) == Rational(7, 10) &&
                 ex_odd_direct.at(4) == Rational(101, 140) && ex_s.at(2) == Rational(2, 9) &&
                 ex_s.at(3) == Rational(41, 200) && ex_s.at(4) == Rational(7561, 39200);
        // re-derive from scratch to include the stated sub-second budget
        Backend fresh = ex;
        for (Level k = 2; k <= 4; ++k) {
            o.pass = o.pass && odd_sum(k, fresh).rational() == ex_odd_direct.at(k);
        }
        const double sec =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.pass = o.pass && sec < 1.0;
        o.detail = "even/odd/S_k at k=2..4 exact, " + fmt(sec) + " s";
        report(1, "exact small-level values (rational backend)", o);
    }

    // 2. interval partition identity
    {
        Outcome o;
        for (Level k = 2; k <= kMaxExact && o.pass; ++k)
            o.pass = ex_even_direct.at(k) + ex_odd_direct.at(k) == 1;
        double worst = 0.0;
        for (Level k = 2; k <= kMaxFloat; ++k)
            worst = std::max(worst,
                             std::abs(ft.even_direct.at(k) + ft.odd_direct.at(k) - 1.0));
        o.pass = o.pass && worst <= 1e-12;
        o.detail = "exact to k=16; float residual max " + fmt(worst) + " (<= 1e-12) to k=28";
        report(2, "even + odd = 1 identity", o);
    }

    // 3. cross-route equality of the even sum
    {
        Outcome o;
        for (Level k = 2; k <= kMaxExact && o.pass; ++k)
            o.pass = ex_even_direct.at(k) == ex_even_pairs.at(k);
        double worst = 0.0;
        for (Level k = 2; k <= kMaxFloat; ++k)
            worst = std::max(worst, rel_diff(ft.even_direct.at(k), ft.even_pairs.at(k)));
        o.pass = o.pass && worst <= 1e-12;
        o.detail = "exact to k=16; float relative max " + fmt(worst) + " to k=28";
        report(3, "direct gap stream equals closed-form pair route", o);
    }

    // 4. sandwich inequality s_k < even_sum < 4 s_(k-1), strict
    {
        Outcome o;
        for (Level k = 3; k <= kMaxExact && o.pass; ++k)
            o.pass = ex_s.at(k) < ex_even_pairs.at(k) && ex_even_pairs.at(k) < 4 * ex_s.at(k - 1);
        double min_margin = 1e300;
        for (Level k = 3; k <= kMaxFloat && o.pass; ++k) {
            const double lo = ft.s.at(k), mid = ft.even_pairs.at(k), hi = 4.0 * ft.s.at(k - 1);
            const double err = sum_err(lo, k - 1) + sum_err(mid, k - 2) + sum_err(hi, k - 2);
            const double margin = std::min(mid - lo, hi - mid);
            min_margin = std::min(min_margin, margin);
            o.pass = margin > 10.0 * err;
        }
        o.detail = "strict for k=3..28, min float margin " + fmt(min_margin);
        report(4, "sandwich inequality s_k < even_sum(k) < 4 s_(k-1)", o);
    }

    // 5. aggregated ratio-bound brackets on the odd sum
    {
        Outcome o;
        // exact spot checks, including the attained upper bound at k=3
        {
            std::vector<Rational> history{ex_even_pairs.at(2)};
            const auto b3 = odd_sum_bracket(3, std::span<const Rational>(history));
            o.pass = b3.upper == ex_odd_direct.at(3) && b3.lower <= ex_odd_direct.at(3);
            history.push_back(ex_even_pairs.at(3));
            const auto b4 = odd_sum_bracket(4, std::span<const Rational>(history));
            o.pass = o.pass && b4.lower <= ex_odd_direct.at(4) &&
                     ex_odd_direct.at(4) <= b4.upper;
            o.pass = o.pass && b4.lower == Rational(94, 135) && b4.upper == Rational(253, 350);
        }
        std::vector<double> history;
        history.push_back(ft.even_pairs.at(2));
        double worst_violation = 0.0;
        for (Level k = 3; k <= kMaxFloat; ++k) {
            const auto bounds = odd_sum_bracket(k, std::span<const double>(history));
            const double odd = ft.odd_direct.at(k);
            double bounds_err = 0.0;
            for (Level m = 2; m < k; ++m)
                bounds_err += sum_err(ft.even_pairs.at(m), m - 2);
            const double tol = 10.0 * (sum_err(odd, k - 1) + bounds_err);
            const double violation =
                std::max(std::max(bounds.lower - odd, odd - bounds.upper), 0.0);
            worst_violation = std::max(worst_violation, violation);
            if (violation > tol || !(odd < 1.0)) o.pass = false;
            history.push_back(ft.even_pairs.at(k));
        }
        o.detail = "k=3..28, upper bound attained at k=3 (7/10); worst float violation " +
                   fmt(worst_violation);
        report(5, "aggregated ratio bounds bracket the odd sum", o);
    }

    // 6. lineage oracle equivalence
    {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        VerificationEngine engine{Backend{}};
        for (Level k = 3; k <= 14 && o.pass; ++k) {
            const auto r = engine.check_lineage(k);
            o.pass = r.status == CheckStatus::pass;
            if (!o.pass) o.detail = "first failure at k=" + std::to_string(k);
        }
        const double sec =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.pass = o.pass && sec < 60.0;
        if (o.pass)
            o.detail = "descendant multisets, ratio bounds, counts for k=3..14, " + fmt(sec) +
                       " s";
        report(6, "lineage enumeration reproduces measured odd gaps exactly", o);
    }

    // 7. monotone decay of the even sum
    {
        Outcome o;
        double min_step = 1e300;
        for (Level k = 3; k <= kMaxFloat && o.pass; ++k) {
            const double step = ft.even_pairs.at(k - 1) - ft.even_pairs.at(k);
            const double err =
                sum_err(ft.even_pairs.at(k), k - 2) + sum_err(ft.even_pairs.at(k - 1), k - 3);
            min_step = std::min(min_step, step);
            o.pass = step > 10.0 * err;
        }
        o.pass = o.pass && float_table_seconds < 600.0;
        o.detail = "strictly decreasing k=3..28, min step " + fmt(min_step) +
                   "; table built in " + fmt(float_table_seconds) + " s (k=28 level: " +
                   fmt(ft.level28_seconds) + " s, 8 workers)";
        report(7, "even sum decreases monotonically to k=28", o);
    }

    // 8. phase-transition signature of Z^F
    {
        Outcome o;
        double prev_high = 0.0, prev_low = 0.0;
        for (Level k = 8; k <= 20; ++k) {
            const double z_high = z_farey(k, 1.2, fl).as_double();
            const double z_low = z_farey(k, 0.8, fl).as_double();
            if (k > 8) {
                if (!(z_high < prev_high)) o.pass = false;  // beta > 1: decays
                if (!(z_low > prev_low)) o.pass = false;    // beta < 1: grows
            }
            prev_high = z_high;
            prev_low = z_low;
        }
        o.detail = "Z^F(1.2) strictly falls and Z^F(0.8) strictly rises over k=8..20";
        report(8, "phase-transition signature at beta = 0.8 / 1.2", o);
    }

    // 9. floating/exact agreement and parallel determinism
    {
        Outcome o;
        double worst = 0.0;
        for (Level k = 2; k <= kMaxExact; ++k) {
            const auto check = [&](double approx, const Rational& exact) {
                worst = std::max(worst, rel_diff(approx, to_double(exact)));
            };
            check(ft.even_pairs.at(k), ex_even_pairs.at(k));
            check(ft.even_direct.at(k), ex_even_direct.at(k));
            check(ft.odd_direct.at(k), ex_odd_direct.at(k));
            check(odd_sum(k, fl).as_double(), odd_sum(k, ex).rational());
            check(ft.s.at(k), ex_s.at(k));
            check(sigma(k, 2.0, fl).as_double(), sigma(k, 2.0, ex).rational());
            check(z_farey(k, 1.0, fl).as_double(), z_farey(k, 1.0, ex).rational());
            check(z_farey(k, 2.0, fl).as_double(), z_farey(k, 2.0, ex).rational());
            check(z_knauf(k, 2.0, fl).as_double(), z_knauf(k, 2.0, ex).rational());
            check(z_knauf(k, 3.0, fl).as_double(), z_knauf(k, 3.0, ex).rational());
            worst = std::max(worst, rel_diff(free_energy_estimate(k, 2.0, fl),
                                             -std::log(to_double(z_farey(k, 2.0, ex).rational())) /
                                                 (2.0 * k)));
        }
        o.pass = worst <= 1e-12;

        bool bitwise = true;
        for (Level k : {12u, 16u, 20u}) {
            for (unsigned threads : {1u, 2u, 8u}) {
                Backend worker = fl;
                worker.threads = threads;
                bitwise = bitwise &&
                          even_sum_via_pairs(k, worker).as_double() == ft.even_pairs.at(k) &&
                          s_k(k, worker).as_double() == ft.s.at(k) &&
                          sigma(k, 1.2, worker).as_double() == sigma(k, 1.2, fl).as_double();
            }
        }
        o.pass = o.pass && bitwise;
        o.detail = "worst relative difference " + fmt(worst) +
                   " (<= 1e-12) for k=2..16; parallel folds bit-identical across 1/2/8 workers";
        report(9, "floating vs exact agreement and deterministic parallelism", o);
    }

    // 10. decay-shape diagnostic (reported, never gating)
    {
        Outcome o;
        std::vector<double> evens, cs;
        for (Level k = 14; k <= kMaxFloat; ++k) {
            evens.push_back(ft.even_pairs.at(k));
            cs.push_back(ft.even_pairs.at(k) * std::log2(double(k)));
        }
        const auto spread = [](const std::vector<double>& v) {
            double lo = v[0], hi = v[0], mean = 0.0;
            for (double x : v) {
                lo = std::min(lo, x);
                hi = std::max(hi, x);
                mean += x;
            }
            return (hi - lo) / (mean / v.size());
        };
        const double c_spread = spread(cs);
        const double even_spread = spread(evens);
        o.pass = c_spread < even_spread;
        o.detail = "relative spread over k=14..28: c_k " + fmt(c_spread) + " vs even_sum " +
                   fmt(even_spread) + (o.pass ? " (flatter, consistent with ~1/log2 k)"
                                              : " (NOT flatter)");
        report(10, "decay-shape diagnostic c_k = even_sum * log2(k)", o, /*gating=*/false);
    }

    if (failures == 0) {
        std::printf("acceptance: all gating criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d gating criteria FAILED\n", failures);
    return 1;
}
