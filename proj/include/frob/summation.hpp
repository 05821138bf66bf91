#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace frob {

// Neumaier compensated accumulator. Norm recomputations must agree with
// stored certificate values to 1e-12 relative even for tens of millions of
// terms, which plain left-to-right summation cannot guarantee.
class KahanSum {
public:
    void add(double v) {
        double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_sum(const std::vector<double>& xs) {
    KahanSum s;
    for (double x : xs) s.add(x);
    return s.value();
}

} // namespace frob
