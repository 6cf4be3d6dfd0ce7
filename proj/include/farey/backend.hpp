#pragma once

#include <optional>
#include <string>
#include <utility>

#include "farey/checkpoint.hpp"
#include "farey/rational.hpp"
#include "farey/tree.hpp"

namespace farey {

enum class Mode { exact, floating };
enum class Summation { compensated, pairwise };

inline constexpr Level kDefaultExactCap = 16;
inline constexpr Level kDefaultLineageCap = 14;
inline constexpr Level kDefaultSplitDepth = 10;

// Numeric backend and parallelism selection for the statistics engine.
// Results are independent of `threads` for a fixed `split_depth`.
struct Backend {
    Mode mode = Mode::floating;
    Summation summation = Summation::compensated;
    unsigned threads = 1;  // 0 = hardware concurrency
    Level split_depth = kDefaultSplitDepth;
    Level exact_cap = kDefaultExactCap;
    Level materialize_cap = kDefaultMaterializeCap;
    Level lineage_cap = kDefaultLineageCap;
    Level max_level = kMaxStreamLevel;
    CheckpointLog* checkpoint = nullptr;

    bool is_exact() const { return mode == Mode::exact; }

    std::string describe() const {
        if (is_exact()) return "exact";
        std::string s = "float:";
        s += summation == Summation::compensated ? "compensated" : "pairwise";
        s += ":split" + std::to_string(split_depth);
        return s;
    }
};

// A statistic value: exact rational when produced by the exact backend,
// plain binary64 otherwise. The double view is always available.
class Value {
public:
    static Value exact(Rational r) {
        Value v;
        v.approx_ = to_double(r);
        v.exact_ = std::move(r);
        return v;
    }

    static Value approx(double d) {
        Value v;
        v.approx_ = d;
        return v;
    }

    bool is_exact() const { return exact_.has_value(); }

    const Rational& rational() const {
        if (!exact_) throw std::logic_error("Value: no exact form (floating backend)");
        return *exact_;
    }

    double as_double() const { return approx_; }

private:
    std::optional<Rational> exact_;
    double approx_ = 0.0;
};

inline Value one_minus(const Value& v) {
    if (v.is_exact()) return Value::exact(Rational(1) - v.rational());
    return Value::approx(1.0 - v.as_double());
}

}  // namespace farey
