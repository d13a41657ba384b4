#include "lattice_heat/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "lattice_heat/summation.hpp"

namespace lattice_heat {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_grid(std::span<const double> t_grid, std::size_t min_points, double t_lo, double t_hi) {
    if (t_grid.size() < min_points) {
        throw std::invalid_argument("time grid needs at least " + std::to_string(min_points) + " points");
    }
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] >= t_lo && t_grid[i] <= t_hi)) {
            throw std::invalid_argument("time grid points must lie in [" + std::to_string(t_lo) + ", " +
                                        std::to_string(t_hi) + "]");
        }
        if (i > 0 && !(t_grid[i] > t_grid[i - 1])) {
            throw std::invalid_argument("time grid must be strictly increasing");
        }
    }
}

std::string exponent_label(LpExponent p) { return "p=" + p.to_string(); }

double decay_weight(LpExponent p, double t) { return std::pow(t, 0.5 * (1.0 - p.reciprocal())); }

}  // namespace

LogLogFit fit_loglog(std::span<const std::pair<double, double>> pairs) {
    if (pairs.size() < 2) throw std::invalid_argument("a log-log fit needs at least two points");
    const double count = static_cast<double>(pairs.size());
    CompensatedSum sx, sy;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [t, v] = pairs[i];
        if (!(t > 0.0) || !(v > 0.0)) throw std::invalid_argument("log-log fit needs positive t and value");
        if (i > 0 && !(t > pairs[i - 1].first)) throw std::invalid_argument("log-log fit needs increasing t");
        sx.add(std::log(t));
        sy.add(std::log(v));
    }
    const double mx = sx.value() / count;
    const double my = sy.value() / count;
    CompensatedSum sxx, sxy;
    for (const auto& [t, v] : pairs) {
        const double dx = std::log(t) - mx;
        sxx.add(dx * dx);
        sxy.add(dx * (std::log(v) - my));
    }
    LogLogFit fit;
    fit.slope = sxy.value() / sxx.value();
    fit.intercept = my - fit.slope * mx;
    for (const auto& [t, v] : pairs) {
        const double r = std::abs(std::log(v) - (fit.slope * std::log(t) + fit.intercept));
        fit.max_residual = std::max(fit.max_residual, r);
    }
    return fit;
}

DecayReport make_decay_report(std::string label, std::span<const DecayPoint> points) {
    DecayReport report;
    report.label = std::move(label);
    if (!points.empty()) {
        report.t_min = points.front().t;
        report.t_max = points.back().t;
    }
    for (const auto& pt : points) {
        if (pt.value > 0.0 && pt.error < pt.value / 100.0) {
            report.pairs.emplace_back(pt.t, pt.value);
        } else {
            report.dropped.push_back(pt);
        }
    }
    if (report.has_fit()) {
        const LogLogFit fit = fit_loglog(report.pairs);
        report.slope = fit.slope;
        report.intercept = fit.intercept;
        report.max_residual = fit.max_residual;
    } else {
        report.slope = report.intercept = report.max_residual = kNaN;
    }
    return report;
}

std::vector<double> dyadic_grid(double a, double b) {
    if (!(a > 0.0) || !(b >= a) || !std::isfinite(b)) {
        throw std::invalid_argument("dyadic grid needs 0 < a <= b");
    }
    std::vector<double> grid;
    for (double t = a; t <= b * (1.0 + 1e-12); t *= 2.0) grid.push_back(t);
    return grid;
}

DecayReport kernel_decay(LpExponent p, KernelQuantity quantity, std::span<const double> t_grid) {
    require_grid(t_grid, 6, 1.0, 1e4);
    std::vector<DecayPoint> points;
    for (double t : t_grid) {
        BoundedSequence s = as_bounded(heat_kernel(t, 1e-12));
        if (quantity == KernelQuantity::gradient) s = forward_difference(s);
        if (quantity == KernelQuantity::laplacian) s = discrete_laplacian(s);
        const double value = lp_norm(s.values, p);
        if (value == 0.0) throw std::underflow_error("kernel norm underflowed to zero");
        points.push_back({t, value, s.tail_bound});
    }
    return make_decay_report("kernel " + std::string(to_string(quantity)) + " " + exponent_label(p), points);
}

L2OptimalityReport l2_optimality(const LatticeSequence& f, std::span<const double> t_grid) {
    require_grid(t_grid, 2, 0.0, std::numeric_limits<double>::max());
    L2OptimalityReport report;
    report.mass = f.sum();
    report.l1_norm = lp_norm(f, LpExponent::finite(1.0));
    if (std::abs(report.mass) <= 1e-14) {
        throw std::invalid_argument("l2 optimality needs data with nonzero mass");
    }
    std::vector<DecayPoint> points;
    for (double t : t_grid) {
        const SolutionSnapshot snap = evolve(f, t, 1e-12);
        const double value = lp_norm(snap.u, LpExponent::finite(2.0));
        points.push_back({t, value, snap.total_error()});
        const double scaled = value * std::pow(t, 0.25);
        report.lower_ratios.push_back(scaled / std::abs(report.mass));
        report.upper_ratios.push_back(scaled / report.l1_norm);
    }
    report.decay = make_decay_report("l2 norm of W_t f", points);
    return report;
}

DecayReport large_time_profile(const LatticeSequence& f, const ForcingSpec& g, LpExponent p,
                               std::span<const double> t_grid, double eps) {
    require_grid(t_grid, 2, 0.0, std::numeric_limits<double>::max());
    if (t_grid.front() <= 0.0) throw std::invalid_argument("profile times must be positive");
    const bool forced = g.kind == ForcingSpec::Kind::separable;
    if (forced && !(g.gamma > 1.0)) {
        throw std::invalid_argument("forced profile needs gamma > 1 so that the forcing mass is finite");
    }
    const double mass = f.sum() + (forced ? g.total_mass() : 0.0);
    if (mass == 0.0) throw std::invalid_argument("profile needs nonzero total mass");

    std::vector<DecayPoint> points;
    for (double t : t_grid) {
        const SolutionSnapshot snap = solve(f, g, t, eps);
        const KernelSlice kernel = heat_kernel(t, eps);
        const LatticeSequence diff = snap.u - mass * kernel.sequence();
        const double weight = decay_weight(p, t);
        const double error = snap.total_error() + std::abs(mass) * kernel.tail_mass;
        points.push_back({t, weight * lp_norm(diff, p), weight * error});
    }
    std::string label = forced ? "profile u - M G (forced) " : "profile u - M G ";
    return make_decay_report(label + exponent_label(p), points);
}

std::vector<FourierSample> fourier_symbol_table(double t, int grid_size, double eps) {
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("Fourier check needs finite t > 0");
    if (grid_size < 16) throw std::invalid_argument("Fourier check needs at least 16 grid points");
    const KernelSlice g = heat_kernel(t, eps);
    std::vector<FourierSample> table;
    table.reserve(static_cast<std::size_t>(grid_size));
    for (int j = 0; j < grid_size; ++j) {
        const double theta = -std::numbers::pi + 2.0 * std::numbers::pi * (j + 1) / grid_size;
        // Imaginary parts cancel by symmetry of G in n.
        CompensatedSum acc(g.at(0));
        for (int n = 1; n <= g.window; ++n) acc.add(2.0 * g.at(n) * std::cos(n * theta));
        const double s = std::sin(0.5 * theta);
        table.push_back({theta, acc.value(), std::exp(-4.0 * t * s * s)});
    }
    return table;
}

double fourier_symbol_check(double t, int grid_size, double eps) {
    double worst = 0.0;
    for (const auto& row : fourier_symbol_table(t, grid_size, eps)) {
        worst = std::max(worst, std::abs(row.transform - row.symbol));
    }
    return worst;
}

DecayReport higher_difference_decay(int order, LpExponent p, std::span<const double> t_grid) {
    if (order < 1 || order > 6) throw std::invalid_argument("difference order must lie in [1, 6]");
    require_grid(t_grid, 6, 1.0, 1e4);
    std::vector<DecayPoint> points;
    for (double t : t_grid) {
        BoundedSequence s = as_bounded(heat_kernel(t, 1e-12));
        for (int i = 0; i < order; ++i) s = forward_difference(s);
        points.push_back({t, lp_norm(s.values, p), s.tail_bound});
    }
    DecayReport report = make_decay_report(
        "forward difference order " + std::to_string(order) + " " + exponent_label(p), points);
    report.experimental = order >= 3;
    if (report.experimental) report.label += " (EXPERIMENTAL)";
    return report;
}

}  // namespace lattice_heat
