#pragma once

#include <string_view>
#include <vector>

#include "lattice_heat/lattice_sequence.hpp"

namespace lattice_heat {

/// Windowed snapshot of the discrete heat kernel G(t, n) = exp(-2t) I_n(2t).
///
/// Values are symmetric, nonnegative and nonincreasing in |n|; the mass
/// outside |n| <= window is at most tail_mass.
struct KernelSlice {
    double t = 0.0;
    int window = 0;
    std::vector<double> values;  // index n + window
    double tail_mass = 0.0;

    [[nodiscard]] double at(int n) const noexcept;
    [[nodiscard]] LatticeSequence sequence() const;
};

/// G(t, .) with tail_mass <= eps, carried on at least |n| <= min_window.
[[nodiscard]] KernelSlice heat_kernel(double t, double eps, int min_window = 0);

/// A lattice sequence together with an l^1 bound on what its window omits.
struct BoundedSequence {
    LatticeSequence values;
    double tail_bound = 0.0;
};

[[nodiscard]] BoundedSequence as_bounded(const KernelSlice& slice);

/// Forward difference; the omitted l^1 mass at most doubles.
[[nodiscard]] BoundedSequence forward_difference(const BoundedSequence& s);
/// Discrete Laplacian; the omitted l^1 mass grows at most fourfold.
[[nodiscard]] BoundedSequence discrete_laplacian(const BoundedSequence& s);

enum class PointwiseQuantity { kernel, gradient, laplacian };

/// Which version of the large-|n| kernel bound a row checks: the lemma as
/// stated (C / |n|^3) or the form its proof establishes (C t / |n|^3).
/// Only kernel rows with n^2 >= t come in both forms.
enum class BoundForm { statement, proof };

[[nodiscard]] std::string_view to_string(PointwiseQuantity q) noexcept;
[[nodiscard]] std::string_view to_string(BoundForm f) noexcept;

struct PointwiseBoundRow {
    int n = 0;
    PointwiseQuantity quantity = PointwiseQuantity::kernel;
    BoundForm form = BoundForm::statement;
    double value = 0.0;  // |G|, |grad G| or |Lap G| at (t, n)
    double bound = 0.0;  // c_budget times the shape function
    double ratio = 0.0;  // value / bound; <= 1 means within budget
};

/// Pointwise kernel estimates at time t >= 1 over the eps = 1e-12 window.
///
/// Shapes with R = n^2 / t:
///   |G|        1/sqrt(t) for R <= 1,        t/|n|^3 (proof) and 1/|n|^3 (statement) for R >= 1
///   |grad G|   |n|/t^{3/2} for R <= 1,      t/|n|^4 for R >= 1  (n >= 1; n <= -1 mirrored to -n-1)
///   |Lap G|    1/t^{3/2} for R <= 1,        1/|n|^3 for R >= 1
/// with n = 0 using 1/sqrt(t) for G and 1/t^{3/2} for both differences.
[[nodiscard]] std::vector<PointwiseBoundRow> pointwise_bound_report(double t, double c_budget);

}  // namespace lattice_heat
