#pragma once

#include <span>

namespace lattice_heat {

/// Neumaier-compensated running sum.
///
/// Terms are accumulated in the order they are added, so results are
/// reproducible for a fixed summation order.
class CompensatedSum {
public:
    CompensatedSum() = default;
    explicit CompensatedSum(double initial) : sum_(initial) {}

    void add(double term) noexcept;
    CompensatedSum& operator+=(double term) noexcept {
        add(term);
        return *this;
    }

    [[nodiscard]] double value() const noexcept { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

[[nodiscard]] double compensated_sum(std::span<const double> terms) noexcept;

}  // namespace lattice_heat
