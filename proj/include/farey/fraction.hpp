#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace farey {

// Tree level. Level 0 is {0/1, 1/1}.
using Level = unsigned;

// Reduced rational in [0, 1].
class Fraction {
public:
    constexpr Fraction() = default;

    Fraction(std::uint64_t numerator, std::uint64_t denominator)
        : num_(numerator), den_(denominator) {
        if (den_ == 0) throw std::domain_error("Fraction: denominator must be positive");
        if (num_ > den_) throw std::domain_error("Fraction: value must lie in [0, 1]");
        const std::uint64_t g = std::gcd(num_, den_);
        num_ /= g;
        den_ /= g;
    }

    std::uint64_t numerator() const { return num_; }
    std::uint64_t denominator() const { return den_; }

    double value() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::string str() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend bool operator==(const Fraction& a, const Fraction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Fraction& a, const Fraction& b) { return !(a == b); }
    friend bool operator<(const Fraction& a, const Fraction& b) {
        using u128 = unsigned __int128;
        return u128(a.num_) * b.den_ < u128(b.num_) * a.den_;
    }

private:
    std::uint64_t num_ = 0;
    std::uint64_t den_ = 1;
};

// Cross-multiplied determinant right - left; adjacent tree fractions give 1.
inline __int128 neighbor_determinant(const Fraction& left, const Fraction& right) {
    using u128 = unsigned __int128;
    const u128 a = u128(right.numerator()) * left.denominator();
    const u128 b = u128(left.numerator()) * right.denominator();
    return static_cast<__int128>(a) - static_cast<__int128>(b);
}

// Mediant of two adjacent fractions. The unimodular precondition guarantees
// the result is already in lowest terms and lies strictly between the inputs.
inline Fraction mediant(const Fraction& left, const Fraction& right) {
    if (neighbor_determinant(left, right) != 1)
        throw std::domain_error("mediant: inputs are not adjacent tree fractions");
    const std::uint64_t num = left.numerator() + right.numerator();
    const std::uint64_t den = left.denominator() + right.denominator();
    if (den < left.denominator() || num < left.numerator())
        throw std::overflow_error("mediant: denominator sum exceeds 64-bit range");
    return Fraction(num, den);
}

}  // namespace farey
