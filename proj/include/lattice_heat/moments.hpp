#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "lattice_heat/kernel.hpp"

namespace lattice_heat {

using BigInt = boost::multiprecision::cpp_int;

/// Polynomial with arbitrary-precision integer coefficients, constant term first.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coeffs);

    /// -1 for the zero polynomial.
    [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] BigInt coeff(int power) const;
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

private:
    std::vector<BigInt> coeffs_;  // trailing zeros trimmed
};

/// Largest k accepted by moment_polynomials.
inline constexpr int kMaxMomentOrder = 64;
/// Largest degree accepted by poly_real_roots.
inline constexpr int kMaxRootDegree = 12;

/// p_0, ..., p_{k_max}: p_0 = 1, p_k' = sum_{j<k} C(2k, 2j) p_j, p_k(0) = 0.
///
/// The even moments of the kernel are sum_n n^{2k} G(t, n) = p_k(2t).
/// Throws ExactnessError if a coefficient division is not exact.
[[nodiscard]] std::vector<IntPolynomial> moment_polynomials(int k_max);

/// Horner evaluation in binary64.
[[nodiscard]] double poly_eval(const IntPolynomial& p, double x);

/// Sorted real roots (ascending) of a polynomial with only real roots in
/// [-(deg + 2), 0], each to within tol.
///
/// Roots are isolated with a Sturm sequence and refined by bisection, all in
/// exact rational arithmetic. Throws ConvergenceError if the number of roots
/// found differs from the degree.
[[nodiscard]] std::vector<double> poly_real_roots(const IntPolynomial& p, double tol);

struct MomentValue {
    double value = 0.0;
    /// Bound on sum_{|n| > window} |n|^order G(t, n).
    double tail_bound = 0.0;
};

/// sum_{|n| <= window} n^order G(t, n) with a weighted tail bound taken from
/// the decay ratio at the window edge. Throws std::overflow_error when
/// window^order is not representable.
[[nodiscard]] MomentValue kernel_moment(const KernelSlice& slice, int order);

/// kernel_moment over a window widened until tail_bound <= abs_target.
[[nodiscard]] MomentValue certified_kernel_moment(double t, int order, double abs_target);

}  // namespace lattice_heat
