#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lattice_heat/kernel.hpp"
#include "lattice_heat/lattice_sequence.hpp"
#include "lattice_heat/solver.hpp"

namespace lattice_heat {

/// Least-squares line through (log t, log value).
struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
};

/// Fits value ~ exp(intercept) * t^slope. Needs >= 2 points with t, value > 0
/// and strictly increasing t.
[[nodiscard]] LogLogFit fit_loglog(std::span<const std::pair<double, double>> pairs);

/// One measured point of a decay series with its certified numerical error.
struct DecayPoint {
    double t = 0.0;
    double value = 0.0;
    double error = 0.0;
};

/// A (t, value) series with its fitted power law.
///
/// Only points whose certified error is below value/100 enter `pairs` and
/// the fit; the others are kept in `dropped`. With fewer than two fitted
/// points slope, intercept and max_residual are NaN.
struct DecayReport {
    std::string label;
    std::vector<std::pair<double, double>> pairs;
    std::vector<DecayPoint> dropped;
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
    double t_min = 0.0;
    double t_max = 0.0;
    bool experimental = false;

    [[nodiscard]] bool has_fit() const noexcept { return pairs.size() >= 2; }
};

[[nodiscard]] DecayReport make_decay_report(std::string label, std::span<const DecayPoint> points);

/// t = a, 2a, 4a, ... up to and including b.
[[nodiscard]] std::vector<double> dyadic_grid(double a, double b);

using KernelQuantity = PointwiseQuantity;

/// ||D G(t, .)||_p over the grid, D the identity, forward difference or Laplacian.
[[nodiscard]] DecayReport kernel_decay(LpExponent p, KernelQuantity quantity, std::span<const double> t_grid);

/// Slope of ||u_f(t)||_2 plus the two sandwich ratios
/// ||u_f||_2 t^{1/4} / |sum f| and ||u_f||_2 t^{1/4} / ||f||_1.
struct L2OptimalityReport {
    DecayReport decay;
    double mass = 0.0;
    double l1_norm = 0.0;
    std::vector<double> lower_ratios;
    std::vector<double> upper_ratios;
};

[[nodiscard]] L2OptimalityReport l2_optimality(const LatticeSequence& f, std::span<const double> t_grid);

/// t^{(1/2)(1 - 1/p)} ||u(t) - M G(t, .)||_p for u = solve(f, g) and
/// M = sum f + M_g. Requires M != 0 and, with forcing, gamma > 1.
[[nodiscard]] DecayReport large_time_profile(const LatticeSequence& f, const ForcingSpec& g, LpExponent p,
                                             std::span<const double> t_grid, double eps = 1e-12);

struct FourierSample {
    double theta = 0.0;
    double transform = 0.0;
    double symbol = 0.0;
};

/// sum_n G(t, n) e^{i n theta} against exp(-4 t sin^2(theta/2)) on
/// theta_j = -pi + 2 pi (j + 1) / grid_size, j = 0 .. grid_size - 1.
[[nodiscard]] std::vector<FourierSample> fourier_symbol_table(double t, int grid_size, double eps = 1e-12);

/// Max |transform - symbol| over fourier_symbol_table.
[[nodiscard]] double fourier_symbol_check(double t, int grid_size, double eps = 1e-12);

/// Slope of ||grad^order G(t, .)||_p (iterated forward differences).
/// Orders >= 3 are marked experimental.
[[nodiscard]] DecayReport higher_difference_decay(int order, LpExponent p, std::span<const double> t_grid);

}  // namespace lattice_heat
