#include "lattice_heat/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "lattice_heat/bessel.hpp"

namespace lattice_heat {

double KernelSlice::at(int n) const noexcept {
    if (n < -window || n > window) return 0.0;
    return values[static_cast<std::size_t>(n + window)];
}

LatticeSequence KernelSlice::sequence() const { return LatticeSequence(-window, values); }

KernelSlice heat_kernel(double t, double eps, int min_window) {
    if (!std::isfinite(t) || t < 0.0) {
        throw std::invalid_argument("kernel time must be finite and nonnegative");
    }
    const ScaledBesselRow row = scaled_bessel_row(2.0 * t, eps, min_window);
    KernelSlice slice;
    slice.t = t;
    slice.window = row.half_width;
    slice.tail_mass = row.tail_bound;
    slice.values.resize(2 * static_cast<std::size_t>(row.half_width) + 1);
    for (int n = -row.half_width; n <= row.half_width; ++n) {
        slice.values[static_cast<std::size_t>(n + row.half_width)] = row.at(n);
    }
    return slice;
}

BoundedSequence as_bounded(const KernelSlice& slice) { return {slice.sequence(), slice.tail_mass}; }

BoundedSequence forward_difference(const BoundedSequence& s) {
    return {forward_difference(s.values), 2.0 * s.tail_bound};
}

BoundedSequence discrete_laplacian(const BoundedSequence& s) {
    return {discrete_laplacian(s.values), 4.0 * s.tail_bound};
}

std::string_view to_string(PointwiseQuantity q) noexcept {
    switch (q) {
        case PointwiseQuantity::kernel: return "G";
        case PointwiseQuantity::gradient: return "grad";
        case PointwiseQuantity::laplacian: return "laplacian";
    }
    return "?";
}

std::string_view to_string(BoundForm f) noexcept {
    return f == BoundForm::proof ? "proof" : "statement";
}

std::vector<PointwiseBoundRow> pointwise_bound_report(double t, double c_budget) {
    if (!(t >= 1.0) || !std::isfinite(t)) {
        throw std::invalid_argument("pointwise bound report needs finite t >= 1");
    }
    if (!(c_budget > 0.0)) {
        throw std::invalid_argument("pointwise bound report needs a positive constant");
    }
    const KernelSlice g = heat_kernel(t, 1e-12);
    const double sqrt_t = std::sqrt(t);
    const double t32 = t * sqrt_t;

    std::vector<PointwiseBoundRow> rows;
    auto push = [&](int n, PointwiseQuantity q, BoundForm form, double value, double shape) {
        const double bound = c_budget * shape;
        rows.push_back({n, q, form, value, bound, value / bound});
    };

    for (int n = -g.window; n <= g.window; ++n) {
        const double an = std::abs(static_cast<double>(n));
        const bool inner = an * an <= t;

        const double value = std::abs(g.at(n));
        if (inner) {
            push(n, PointwiseQuantity::kernel, BoundForm::statement, value, 1.0 / sqrt_t);
        } else {
            push(n, PointwiseQuantity::kernel, BoundForm::proof, value, t / (an * an * an));
            push(n, PointwiseQuantity::kernel, BoundForm::statement, value, 1.0 / (an * an * an));
        }

        // |grad G(t, n)| = |grad G(t, -n-1)| by symmetry, so n <= -1 uses the mirror index.
        const double grad = std::abs(g.at(n + 1) - g.at(n));
        const double m = n >= 0 ? an : -static_cast<double>(n) - 1.0;
        if (m == 0.0) {
            push(n, PointwiseQuantity::gradient, BoundForm::statement, grad, 1.0 / t32);
        } else if (m * m <= t) {
            push(n, PointwiseQuantity::gradient, BoundForm::statement, grad, m / t32);
        } else {
            push(n, PointwiseQuantity::gradient, BoundForm::statement, grad, t / (m * m * m * m));
        }

        const double lap = std::abs(g.at(n + 1) - 2.0 * g.at(n) + g.at(n - 1));
        if (inner) {
            push(n, PointwiseQuantity::laplacian, BoundForm::statement, lap, 1.0 / t32);
        } else {
            push(n, PointwiseQuantity::laplacian, BoundForm::statement, lap, 1.0 / (an * an * an));
        }
    }
    return rows;
}

}  // namespace lattice_heat
