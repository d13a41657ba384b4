#pragma once

#include <vector>

#include "lattice_heat/kernel.hpp"
#include "lattice_heat/lattice_sequence.hpp"

namespace lattice_heat {

/// Exact discrete convolution sum_j a(n - j) b(j) over the joint support.
[[nodiscard]] LatticeSequence convolve(const LatticeSequence& a, const LatticeSequence& b);

/// Forcing term g(t, n) = amplitude * (1 + t)^{-gamma} * spatial(n), or none.
struct ForcingSpec {
    enum class Kind { none, separable };

    Kind kind = Kind::none;
    LatticeSequence spatial;
    double gamma = 1.0;
    double amplitude = 0.0;

    static ForcingSpec none() { return {}; }
    static ForcingSpec separable(LatticeSequence spatial, double gamma, double amplitude);

    [[nodiscard]] double temporal(double t) const;
    [[nodiscard]] LatticeSequence at(double t) const;
    /// ||g(t, .)||_1 = |amplitude| * ||spatial||_1 * (1 + t)^{-gamma}
    [[nodiscard]] double l1_norm_at(double t) const;
    /// Integral of sum_n g(s, n) over s in [0, t].
    [[nodiscard]] double mass_until(double t) const;
    /// M_g = integral over [0, inf) of sum_n g(s, n); requires gamma > 1.
    [[nodiscard]] double total_mass() const;
};

/// u(t, .) on a window plus certified l^1 bounds on the two error sources.
struct SolutionSnapshot {
    double t = 0.0;
    LatticeSequence u;
    double quad_error = 0.0;
    double trunc_error = 0.0;
    /// False when quad_error is an estimate rather than a bound (tabulated forcing).
    bool certified = true;

    [[nodiscard]] double total_error() const noexcept { return quad_error + trunc_error; }
};

/// Homogeneous part W_t f = G(t, .) * f with trunc_error <= eps * ||f||_1.
[[nodiscard]] SolutionSnapshot evolve(const LatticeSequence& f, double t, double eps);

struct QuadratureOptions {
    int max_evaluations = 200000;
    int max_depth = 60;
};

/// Forced part: integral over [0, t] of G(t - s, .) * g(s, .) ds.
///
/// Adaptive composite Simpson on the vector-valued integrand with an l^1
/// local error estimate from interval halving; eps is split evenly between
/// quadrature and kernel truncation. Throws ConvergenceError when the
/// evaluation budget runs out.
[[nodiscard]] SolutionSnapshot duhamel(const ForcingSpec& g, double t, double eps,
                                       const QuadratureOptions& options = {});

/// Forcing sampled on a time grid; integrated with the trapezoidal rule.
struct TabulatedForcing {
    std::vector<double> times;             // strictly increasing, starting at 0
    std::vector<LatticeSequence> samples;  // g(times[i], .)
};

/// Duhamel integral for tabulated forcing up to t = times.back(). The
/// quadrature error is a step-doubling estimate and is not certified.
[[nodiscard]] SolutionSnapshot duhamel_tabulated(const TabulatedForcing& g, double eps);

/// Mild solution u = W_t f + forced part; error fields add.
[[nodiscard]] SolutionSnapshot solve(const LatticeSequence& f, const ForcingSpec& g, double t, double eps);

struct ConservedQuantities {
    double mass = 0.0;
    double first_moment = 0.0;
    double second_moment = 0.0;
};

[[nodiscard]] ConservedQuantities conserved_quantities(const SolutionSnapshot& s);

}  // namespace lattice_heat
