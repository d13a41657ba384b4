#include "lattice_heat/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lattice_heat/errors.hpp"
#include "lattice_heat/summation.hpp"

namespace lattice_heat {

namespace {

constexpr double kSeriesMaxTau = 30.0;

void require_tau(double tau) {
    if (!std::isfinite(tau) || tau < 0.0) {
        throw std::invalid_argument("tau must be finite and nonnegative, got " + std::to_string(tau));
    }
}

}  // namespace

double ScaledBesselRow::at(int n) const noexcept {
    const int m = n < 0 ? -n : n;
    if (m > half_width) return 0.0;
    return values[static_cast<std::size_t>(m)];
}

int miller_start_index(double tau) {
    require_tau(tau);
    const double m = std::ceil(tau + 12.0 * std::sqrt(tau) + 30.0);
    return std::max(20, static_cast<int>(m));
}

ScaledBesselRow scaled_bessel_row(double tau, double eps, int min_half_width) {
    require_tau(tau);
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("eps must lie in (0, 1)");
    }
    if (min_half_width < 0) {
        throw std::invalid_argument("min_half_width must be nonnegative");
    }

    ScaledBesselRow row;
    row.tau = tau;

    if (tau == 0.0) {
        row.half_width = min_half_width;
        row.values.assign(static_cast<std::size_t>(min_half_width) + 1, 0.0);
        row.values[0] = 1.0;
        return row;
    }

    // ratio[n] = b_n / b_{n-1}, from the backward recurrence
    // I_{n-1} = (2n / tau) I_n + I_{n+1} seeded with I_{start+1} = 0.
    const int start = std::max(miller_start_index(tau), min_half_width + 40);
    std::vector<double> ratio(static_cast<std::size_t>(start) + 2, 0.0);
    for (int n = start; n >= 1; --n) {
        ratio[n] = tau / (2.0 * n + tau * ratio[n + 1]);
    }

    // Unnormalized values relative to b_0, then scale so b_0 + 2 sum b_n = 1.
    std::vector<double> rel(static_cast<std::size_t>(start) + 1);
    rel[0] = 1.0;
    CompensatedSum total(1.0);
    for (int n = 1; n <= start; ++n) {
        rel[n] = rel[n - 1] * ratio[n];
        total.add(2.0 * rel[n]);
    }
    const double b0 = 1.0 / total.value();
    for (double& v : rel) v *= b0;

    auto tail_estimate = [&](int n) {
        const double r = ratio[n];
        if (r >= 1.0) return 1.0;
        return rel[n] * r / (1.0 - r);
    };

    int width = start;
    for (int n = 1; n <= start; ++n) {
        if (ratio[n] < 1.0 && tail_estimate(n) < eps / 4.0) {
            width = n;
            break;
        }
    }
    width = std::max(width, min_half_width);

    row.half_width = width;
    row.values.assign(rel.begin(), rel.begin() + width + 1);
    row.tail_bound = 2.0 * tail_estimate(width);
    return row;
}

double scaled_bessel(double tau, int n) {
    const int m = n < 0 ? -n : n;
    return scaled_bessel_row(tau, 1e-16, m).at(m);
}

double scaled_bessel_series(double tau, int n) {
    require_tau(tau);
    if (tau > kSeriesMaxTau) {
        throw std::invalid_argument("series oracle is limited to tau <= 30");
    }
    if (n < 0) {
        throw std::invalid_argument("series oracle takes n >= 0");
    }
    const double half = 0.5 * tau;
    double term = std::exp(-tau);
    for (int j = 1; j <= n; ++j) term *= half / j;

    CompensatedSum sum;
    for (int m = 0;; ++m) {
        sum.add(term);
        if (term == 0.0) break;
        term *= half * half / ((m + 1.0) * (m + n + 1.0));
        if (term < 1e-18 * sum.value()) break;
    }
    return sum.value();
}

double scaled_bessel_kummer(double tau, int n, int terms) {
    require_tau(tau);
    if (n < 0) throw std::invalid_argument("Kummer oracle takes n >= 0");
    if (terms < 1) throw std::invalid_argument("Kummer oracle needs at least one term");

    // I_n(tau) = (tau/2)^n / n! * exp(-tau) * sum_k c_k with c_0 = 1 and
    // c_{k+1} / c_k = (n + k + 1/2) * 2 tau / ((2n + k + 1)(k + 1)).
    double prefactor = std::exp(-2.0 * tau);
    for (int j = 1; j <= n; ++j) prefactor *= 0.5 * tau / j;

    CompensatedSum sum;
    double c = 1.0;
    double last_ratio = 1.0;
    for (int k = 0; k < terms; ++k) {
        sum.add(c);
        last_ratio = (n + k + 0.5) * 2.0 * tau / ((2.0 * n + k + 1.0) * (k + 1.0));
        c *= last_ratio;
        if (last_ratio < 0.5 && c < 1e-18 * sum.value()) break;
    }
    if (!(last_ratio < 0.5)) {
        throw ConvergenceError("Kummer series term ratio still >= 1/2 after " + std::to_string(terms) +
                               " terms");
    }
    return prefactor * sum.value();
}

double scaled_derivative_rhs(double tau, int n) {
    const int m = n < 0 ? -n : n;
    const ScaledBesselRow row = scaled_bessel_row(tau, 1e-16, m + 1);
    return 0.5 * (row.at(m - 1) + row.at(m + 1)) - row.at(m);
}

double scaled_derivative_residual(double tau, int n, double h) {
    if (!(h > 0.0 && h < tau)) {
        throw std::invalid_argument("derivative step must satisfy 0 < h < tau");
    }
    const double central = (scaled_bessel(tau + h, n) - scaled_bessel(tau - h, n)) / (2.0 * h);
    return std::abs(central - scaled_derivative_rhs(tau, n));
}

}  // namespace lattice_heat
