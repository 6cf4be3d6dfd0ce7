#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace farey {

// Neumaier's variant of compensated summation: a running sum plus an
// error-carrying term that absorbs the rounding of every addition. Works
// for terms larger than the running sum, unlike plain Kahan.
class NeumaierAccumulator {
public:
    NeumaierAccumulator() = default;
    NeumaierAccumulator(double sum, double compensation)
        : sum_(sum), compensation_(compensation) {}

    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            compensation_ += (sum_ - t) + x;
        else
            compensation_ += (x - t) + sum_;
        sum_ = t;
    }

    // Ordered merge: feeds the partial's sum then its compensation through
    // the same compensated path, so combining is itself compensated.
    void add(const NeumaierAccumulator& other) {
        add(other.sum_);
        add(other.compensation_);
    }

    double value() const { return sum_ + compensation_; }
    double sum() const { return sum_; }
    double compensation() const { return compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

// Streaming pairwise summation via a binary counter of block partials:
// slot i holds the sum of a completed block of 2^i consecutive terms.
class PairwiseAccumulator {
public:
    void add(double x) {
        std::uint64_t carry = count_;
        unsigned i = 0;
        while (carry & 1) {
            x += slots_[i];
            slots_[i] = 0.0;
            carry >>= 1;
            ++i;
        }
        slots_[i] = x;
        ++count_;
    }

    double value() const {
        double total = 0.0;
        for (unsigned i = 0; i < 64; ++i)
            if ((count_ >> i) & 1) total += slots_[i];
        return total;
    }

private:
    std::array<double, 64> slots_{};
    std::uint64_t count_ = 0;
};

}  // namespace farey
