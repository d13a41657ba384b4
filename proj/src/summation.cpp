#include "lattice_heat/summation.hpp"

#include <cmath>

namespace lattice_heat {

void CompensatedSum::add(double term) noexcept {
    const double t = sum_ + term;
    if (std::abs(sum_) >= std::abs(term)) {
        compensation_ += (sum_ - t) + term;
    } else {
        compensation_ += (term - t) + sum_;
    }
    sum_ = t;
}

double compensated_sum(std::span<const double> terms) noexcept {
    CompensatedSum acc;
    for (double x : terms) acc.add(x);
    return acc.value();
}

}  // namespace lattice_heat
