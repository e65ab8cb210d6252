#ifndef EWALD1D_SUMMATION_HPP
#define EWALD1D_SUMMATION_HPP

#include <cmath>

namespace ewald1d {

// Neumaier's variant of Kahan summation.
template <typename Real = double>
class CompensatedSum {
public:
    void add(Real value) {
        using std::abs;
        const Real t = sum_ + value;
        if (abs(sum_) >= abs(value)) {
            carry_ += (sum_ - t) + value;
        } else {
            carry_ += (value - t) + sum_;
        }
        sum_ = t;
    }

    CompensatedSum& operator+=(Real value) {
        add(value);
        return *this;
    }

    Real value() const { return sum_ + carry_; }

private:
    Real sum_{0};
    Real carry_{0};
};

} // namespace ewald1d

#endif // EWALD1D_SUMMATION_HPP
