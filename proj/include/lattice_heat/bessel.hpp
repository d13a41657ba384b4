#pragma once

#include <vector>

namespace lattice_heat {

/// Values b_n(tau) = exp(-tau) I_n(tau) for 0 <= n <= half_width.
///
/// b_{-n} = b_n, so only the nonnegative half is stored. `tail_bound`
/// bounds the two-sided mass 2 * sum_{n > half_width} b_n that the row
/// does not carry.
struct ScaledBesselRow {
    double tau = 0.0;
    int half_width = 0;
    std::vector<double> values;
    double tail_bound = 0.0;

    /// b_n for any integer n; zero outside the carried window.
    [[nodiscard]] double at(int n) const noexcept;
};

/// Index at which the backward recurrence is started for argument tau.
[[nodiscard]] int miller_start_index(double tau);

/// Row of scaled Bessel values with tail_bound <= eps.
///
/// Uses the backward three-term recurrence (as a continued fraction of
/// consecutive ratios) normalized by the generating-function identity
/// b_0 + 2 sum b_n = 1. The window is the smallest one whose geometric
/// tail estimate is below eps/4, widened to at least `min_half_width`.
[[nodiscard]] ScaledBesselRow scaled_bessel_row(double tau, double eps, int min_half_width = 0);

/// Single value b_n(tau), any integer n.
[[nodiscard]] double scaled_bessel(double tau, int n);

/// Power-series oracle exp(-tau) * sum_m (tau/2)^{2m+n} / (m! (m+n)!), tau <= 30.
[[nodiscard]] double scaled_bessel_series(double tau, int n);

/// Confluent-hypergeometric oracle for b_n(tau) summed over at most `terms` terms.
/// Throws ConvergenceError when the term ratio is still >= 1/2 at the last term.
[[nodiscard]] double scaled_bessel_kummer(double tau, int n, int terms);

/// 0.5 * (b_{n-1} + b_{n+1}) - b_n, the tau-derivative of b_n.
[[nodiscard]] double scaled_derivative_rhs(double tau, int n);

/// |central difference of b_n at tau with step h - scaled_derivative_rhs(tau, n)|.
[[nodiscard]] double scaled_derivative_residual(double tau, int n, double h);

}  // namespace lattice_heat
