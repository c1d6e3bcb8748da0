#pragma once

#include <cmath>
#include <complex>

namespace divvar {

/// Neumaier-compensated running sum.
class KahanSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    void merge(const KahanSum& other) {
        add(other.sum_);
        add(other.comp_);
    }
    double value() const { return sum_ + comp_; }
    /// The unrounded pair: the true sum is sum() + compensation() to
    /// roughly twice working precision.
    double sum() const { return sum_; }
    double compensation() const { return comp_; }

    friend bool operator==(const KahanSum&, const KahanSum&) = default;

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class KahanComplexSum {
public:
    void add(std::complex<double> z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    void merge(const KahanComplexSum& o) {
        re_.merge(o.re_);
        im_.merge(o.im_);
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    KahanSum re_, im_;
};

}  // namespace divvar
