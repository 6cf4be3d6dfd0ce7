#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "farey/lineage.hpp"
#include "farey/statistics.hpp"

namespace farey {

enum class CheckStatus { pass, fail, skip };

// Theorem-class checks verify proven statements; observation-class checks
// reproduce numerical observations whose failure at high level would be a
// finding, not a bug.
enum class CheckClass { theorem, observation };

struct CheckResult {
    std::string name;
    CheckClass check_class = CheckClass::theorem;
    CheckStatus status = CheckStatus::pass;
    std::string reason;  // populated for skips
    double lower = std::numeric_limits<double>::quiet_NaN();
    double actual = std::numeric_limits<double>::quiet_NaN();
    double upper = std::numeric_limits<double>::quiet_NaN();
    double margin = std::numeric_limits<double>::quiet_NaN();
    double elapsed_ms = 0.0;

    bool failed() const { return status == CheckStatus::fail; }
};

struct BoundReport {
    Level k = 0;
    std::vector<CheckResult> checks;
    std::string backend;
    double elapsed_ms = 0.0;
};

inline bool suite_passed(std::span<const BoundReport> reports) {
    for (const auto& r : reports)
        for (const auto& c : r.checks)
            if (c.failed()) return false;
    return true;
}

// Runs the inequality and identity checks over levels, memoizing the level
// sums each check needs. Strict theorem inequalities are checked exactly in
// rational mode; in floating mode they pass when the margin clears ten
// times the modeled summation error n*eps*sum (eps = 2^-52, n terms).
class VerificationEngine {
public:
    explicit VerificationEngine(Backend backend) : b_(std::move(backend)) {}

    // Eq.-(5)-style partition of the unit interval: the directly measured
    // even and odd gap sums add to 1 (exactly, or within 1e-12 floating).
    CheckResult check_identity(Level k) {
        return timed("identity", CheckClass::theorem, [&](CheckResult& r) {
            const Value e = even_direct(k);
            const Value o = odd_direct(k);
            r.lower = 1.0;
            r.upper = 1.0;
            if (b_.is_exact()) {
                const Rational sum = e.rational() + o.rational();
                r.actual = to_double(sum);
                r.margin = sum == 1 ? 0.0 : -std::abs(to_double(sum - 1));
                r.status = sum == 1 ? CheckStatus::pass : CheckStatus::fail;
            } else {
                const double sum = e.as_double() + o.as_double();
                r.actual = sum;
                r.margin = 1e-12 - std::abs(sum - 1.0);
                r.status = r.margin >= 0.0 ? CheckStatus::pass : CheckStatus::fail;
            }
        });
    }

    // s_k < even_sum(k) < 4 s_(k-1), both strict.
    CheckResult check_sandwich(Level k) {
        return timed("sandwich", CheckClass::theorem, [&](CheckResult& r) {
            const Value s = s_of(k);
            const Value e = even_pairs(k);
            const Value s_prev = s_of(k - 1);
            r.lower = s.as_double();
            r.actual = e.as_double();
            r.upper = 4.0 * s_prev.as_double();
            if (b_.is_exact()) {
                const bool ok = s.rational() < e.rational() && e.rational() < 4 * s_prev.rational();
                r.margin = std::min(to_double(e.rational() - s.rational()),
                                    to_double(4 * s_prev.rational() - e.rational()));
                r.status = ok ? CheckStatus::pass : CheckStatus::fail;
            } else {
                const double err = float_err(s.as_double(), k - 1) + float_err(e.as_double(), k - 2) +
                                   4.0 * float_err(s_prev.as_double(), k - 2);
                r.margin = std::min(r.actual - r.lower, r.upper - r.actual);
                r.status = r.margin > 10.0 * err ? CheckStatus::pass : CheckStatus::fail;
            }
        });
    }

    // Aggregated ratio-bound bracket on the measured odd sum, built from the
    // even-sum history; non-strict because the upper bound is attained
    // exactly at k = 3. Also requires odd_sum < 1.
    CheckResult check_odd_sum_bracket(Level k) {
        if (k <= 2) throw std::invalid_argument("check_odd_sum_bracket: level must be > 2");
        return timed("odd_sum_bracket", CheckClass::theorem, [&](CheckResult& r) {
            const Value o = odd_direct(k);
            if (b_.is_exact()) {
                std::vector<Rational> history;
                for (Level m = 2; m < k; ++m) history.push_back(even_pairs(m).rational());
                const auto bounds = odd_sum_bracket(k, std::span<const Rational>(history));
                r.lower = to_double(bounds.lower);
                r.actual = to_double(o.rational());
                r.upper = to_double(bounds.upper);
                const bool ok = bounds.lower <= o.rational() && o.rational() <= bounds.upper &&
                                o.rational() < 1;
                r.margin = std::min(to_double(o.rational() - bounds.lower),
                                    to_double(bounds.upper - o.rational()));
                r.status = ok ? CheckStatus::pass : CheckStatus::fail;
            } else {
                std::vector<double> history;
                double bounds_err = 0.0;
                for (Level m = 2; m < k; ++m) {
                    const double e = even_pairs(m).as_double();
                    history.push_back(e);
                    bounds_err += float_err(e, m >= 2 ? m - 2 : 0);
                }
                const auto bounds = odd_sum_bracket(k, std::span<const double>(history));
                const double odd = o.as_double();
                const double err = float_err(odd, k - 1) + bounds_err;
                r.lower = bounds.lower;
                r.actual = odd;
                r.upper = bounds.upper;
                r.margin = std::min(odd - bounds.lower, bounds.upper - odd);
                const bool in_bracket = r.margin >= -10.0 * err;
                const bool below_one = (1.0 - odd) > 10.0 * float_err(odd, k - 1);
                r.status = in_bracket && below_one ? CheckStatus::pass : CheckStatus::fail;
            }
        });
    }

    // Exhaustive small-level lineage audit (always exact): every enumerated
    // descendant ratio respects its age bracket, the record count matches
    // 2^(k-2)-1, the enumerated lengths plus the two end gaps reproduce the
    // measured odd gaps as a multiset, and the partition reproduces the odd
    // sum exactly. `actual` reports the partition defect, `margin` the
    // smallest ratio slack.
    CheckResult check_lineage(Level k) {
        if (k <= 2) throw std::invalid_argument("check_lineage: level must be > 2");
        return timed("lineage", CheckClass::theorem, [&](CheckResult& r) {
            const auto records = enumerate_lineage(k, b_.lineage_cap);
            bool ok = records.size() == (std::uint64_t{1} << (k - 2)) - 1;

            Rational min_slack(1);
            Rational total(0);
            for (const auto& rec : records) {
                const Rational parent = even_interval_from_pair(rec.parent_pair);
                const Rational ratio = rec.length / parent;
                const BoundPair bounds = ratio_bounds(rec.age);
                if (ratio < bounds.lower || ratio > bounds.upper) ok = false;
                const Rational lo_slack = ratio - bounds.lower;
                const Rational hi_slack = bounds.upper - ratio;
                min_slack = std::min(min_slack, std::min(lo_slack, hi_slack));
                total += rec.length;
            }

            Backend exact = exact_for(k);
            const Rational odd = odd_sum_direct(k, exact).rational();
            const Rational defect = total + Rational(2, k + 1) - odd;
            if (defect != 0) ok = false;

            // multiset comparison against gaps measured off the level list
            std::vector<Rational> enumerated;
            enumerated.reserve(records.size() + 2);
            for (const auto& rec : records) enumerated.push_back(rec.length);
            enumerated.push_back(Rational(1, k + 1));
            enumerated.push_back(Rational(1, k + 1));
            std::sort(enumerated.begin(), enumerated.end());
            std::vector<Rational> measured = measured_odd_intervals(k);
            std::sort(measured.begin(), measured.end());
            if (enumerated != measured) ok = false;

            r.lower = 0.0;
            r.upper = 0.0;
            r.actual = to_double_signed(defect);
            r.margin = to_double_signed(min_slack);
            r.status = ok ? CheckStatus::pass : CheckStatus::fail;
        });
    }

    // Per-level decay step even_sum(k) < even_sum(k-1) (observation class:
    // the decay is a numerical observation, not a proven theorem).
    CheckResult check_monotone_step(Level k) {
        if (k <= 2) throw std::invalid_argument("check_monotone_step: level must be > 2");
        return timed("monotone_decay", CheckClass::observation, [&](CheckResult& r) {
            const Value cur = even_pairs(k);
            const Value prev = even_pairs(k - 1);
            r.lower = 0.0;
            r.actual = cur.as_double();
            r.upper = prev.as_double();
            if (b_.is_exact()) {
                r.margin = to_double_signed(prev.rational() - cur.rational());
                r.status = cur.rational() < prev.rational() ? CheckStatus::pass : CheckStatus::fail;
            } else {
                const double err =
                    float_err(cur.as_double(), k - 2) + float_err(prev.as_double(), k - 3);
                r.margin = r.upper - r.actual;
                r.status = r.margin > 10.0 * err ? CheckStatus::pass : CheckStatus::fail;
            }
        });
    }

    // Aggregate decay check over 3..k_max; reports the tightest step.
    CheckResult check_monotone_decay(Level k_max) {
        if (k_max < 3) throw std::invalid_argument("check_monotone_decay: k_max must be >= 3");
        CheckResult worst;
        worst.name = "monotone_decay";
        worst.check_class = CheckClass::observation;
        double min_margin = std::numeric_limits<double>::infinity();
        double elapsed = 0.0;
        for (Level k = 3; k <= k_max; ++k) {
            CheckResult step = check_monotone_step(k);
            elapsed += step.elapsed_ms;
            if (step.status == CheckStatus::skip) return step;
            if (step.failed()) worst.status = CheckStatus::fail;
            if (step.margin < min_margin) {
                min_margin = step.margin;
                worst.lower = step.lower;
                worst.actual = step.actual;
                worst.upper = step.upper;
                worst.margin = step.margin;
            }
        }
        worst.elapsed_ms = elapsed;
        return worst;
    }

    // Every applicable check for one level.
    BoundReport level_report(Level k) {
        BoundReport report;
        report.k = k;
        report.backend = b_.describe();
        report.checks.push_back(check_identity(k));
        report.checks.push_back(check_sandwich(k));
        if (k > 2) {
            report.checks.push_back(check_odd_sum_bracket(k));
            report.checks.push_back(check_lineage(k));
            report.checks.push_back(check_monotone_step(k));
        }
        for (const auto& c : report.checks) report.elapsed_ms += c.elapsed_ms;
        return report;
    }

    std::vector<BoundReport> run(Level k_min, Level k_max) {
        std::vector<BoundReport> reports;
        for (Level k = std::max(k_min, Level{2}); k <= k_max && k_min <= k_max; ++k)
            reports.push_back(level_report(k));
        return reports;
    }

    const Backend& backend() const { return b_; }

private:
    template <class Body>
    CheckResult timed(const char* name, CheckClass cls, const Body& body) {
        CheckResult r;
        r.name = name;
        r.check_class = cls;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            body(r);
        } catch (const cap_error& e) {
            r.status = CheckStatus::skip;
            r.reason = e.what();
            r.lower = r.actual = r.upper = r.margin = std::numeric_limits<double>::quiet_NaN();
        }
        r.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        return r;
    }

    // Modeled rounding error of a compensated/pairwise sum of 2^log2_terms
    // positive terms.
    static double float_err(double value, Level log2_terms) {
        return std::ldexp(std::abs(value), static_cast<int>(log2_terms)) * std::ldexp(1.0, -52);
    }

    static double to_double_signed(const Rational& r) {
        return r < 0 ? -to_double(Rational(-r)) : to_double(r);
    }

    Backend exact_for(Level k) const {
        Backend exact = b_;
        exact.mode = Mode::exact;
        exact.checkpoint = nullptr;
        exact.exact_cap = std::max(b_.exact_cap, k);
        return exact;
    }

    // Odd intervals measured straight off the materialized level: interior
    // ones r^(2n) - r^(2n-2) for odd n, plus the two end gaps.
    std::vector<Rational> measured_odd_intervals(Level k) const {
        const auto level = materialize_level(k, b_.materialize_cap);
        std::vector<Rational> gaps;
        const std::uint64_t half = std::uint64_t{1} << (k - 1);  // orders run to 2^k + 1
        for (std::uint64_t n = 3; n < half; n += 2) {
            const Fraction& hi = level[2 * n - 1];
            const Fraction& lo = level[2 * n - 3];
            gaps.push_back(Rational(hi.numerator(), hi.denominator()) -
                           Rational(lo.numerator(), lo.denominator()));
        }
        const auto gap = [&](std::size_t i, std::size_t j) {
            return Rational(level[j].numerator(), level[j].denominator()) -
                   Rational(level[i].numerator(), level[i].denominator());
        };
        gaps.push_back(gap(0, 1));
        gaps.push_back(gap(level.size() - 2, level.size() - 1));
        return gaps;
    }

    Value memoized(std::map<Level, Value>& memo, Level k, Value (*fn)(Level, const Backend&)) {
        if (const auto it = memo.find(k); it != memo.end()) return it->second;
        Value v = fn(k, b_);
        memo.emplace(k, v);
        return v;
    }

    Value even_pairs(Level k) { return memoized(memo_even_pairs_, k, &even_sum_via_pairs); }
    Value even_direct(Level k) { return memoized(memo_even_direct_, k, &even_sum_direct); }
    Value odd_direct(Level k) { return memoized(memo_odd_direct_, k, &odd_sum_direct); }
    Value s_of(Level k) { return memoized(memo_s_, k, &s_k); }

    Backend b_;
    std::map<Level, Value> memo_even_pairs_, memo_even_direct_, memo_odd_direct_, memo_s_;
};

inline CheckResult check_identity(Level k, const Backend& b) {
    return VerificationEngine(b).check_identity(k);
}
inline CheckResult check_sandwich(Level k, const Backend& b) {
    return VerificationEngine(b).check_sandwich(k);
}
inline CheckResult check_odd_sum_bracket(Level k, const Backend& b) {
    return VerificationEngine(b).check_odd_sum_bracket(k);
}
inline CheckResult check_lineage(Level k, const Backend& b) {
    return VerificationEngine(b).check_lineage(k);
}
inline CheckResult check_monotone_decay(Level k_max, const Backend& b) {
    return VerificationEngine(b).check_monotone_decay(k_max);
}

inline std::vector<BoundReport> run_suite(Level k_min, Level k_max, const Backend& b) {
    return VerificationEngine(b).run(k_min, k_max);
}

}  // namespace farey
